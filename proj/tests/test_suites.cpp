#include <doctest.h>

#include <algorithm>

#include "qmob/suites.hpp"

using namespace qmob;
using nlohmann::json;

namespace {

json strip_times(json j) {
    for (auto& s : j["suites"]) s.erase("wall_time_s");
    return j;
}

}  // namespace

TEST_CASE("config validation") {
    SuiteConfig cfg;
    CHECK_NOTHROW(validate(cfg));

    cfg.trials = 0;
    CHECK_THROWS_AS(validate(cfg), ConfigError);
    cfg = {};
    cfg.series_order = 39;
    CHECK_THROWS_AS(validate(cfg), ConfigError);
    cfg = {};
    cfg.suites = {"nonsense"};
    CHECK_THROWS_AS(validate(cfg), ConfigError);
    cfg = {};
    cfg.tolerance_overrides["quaternion.nope"] = 1.0;
    CHECK_THROWS_AS(validate(cfg), ConfigError);
    cfg = {};
    cfg.tolerance_overrides["quaternion.assoc"] = -1.0;
    CHECK_THROWS_AS(validate(cfg), ConfigError);
}

TEST_CASE("config_from_json") {
    const json j = {{"seed", 7}, {"trials", 3}, {"tolerances", {{"regular.cullen", 1e-4}}}, {"suites", {"group"}}};
    const SuiteConfig cfg = config_from_json(j);
    CHECK(cfg.seed == 7);
    CHECK(cfg.trials == 3);
    CHECK(cfg.series_order == 80);
    CHECK(cfg.tolerance_overrides.at("regular.cullen") == 1e-4);
    CHECK(cfg.suites == std::vector<std::string>{"group"});

    SuiteConfig base;
    base.seed = 99;
    CHECK(config_from_json(json::object(), base).seed == 99);
    CHECK_THROWS(config_from_json(json{{"trials", "many"}}));
}

TEST_CASE("suite names and tolerances") {
    CHECK(suite_names() == std::vector<std::string>{"quaternion", "series", "group", "classical", "regular", "diffgeo"});
    for (const auto& [name, value] : known_tolerances()) {
        CHECK(value > 0.0);
        const auto prefix = name.substr(0, name.find('.'));
        CHECK(std::find(suite_names().begin(), suite_names().end(), prefix) != suite_names().end());
    }
}

TEST_CASE("runs are deterministic and pass at defaults") {
    SuiteConfig cfg;
    cfg.trials = 10;
    const auto a = run_suites(cfg), b = run_suites(cfg);
    REQUIRE(a.size() == suite_names().size());
    CHECK(total_failures(a) == 0);
    for (const auto& r : a) {
        CHECK(r.executed > 0);
        CHECK(r.passed == r.executed);
        CHECK(r.seed == cfg.seed);
    }
    CHECK(strip_times(reports_to_json(cfg, a)) == strip_times(reports_to_json(cfg, b)));

    cfg.seed += 1;
    CHECK(strip_times(reports_to_json(cfg, run_suites(cfg))) != strip_times(reports_to_json(cfg, a)));
}

TEST_CASE("suite selection") {
    SuiteConfig cfg;
    cfg.trials = 5;
    cfg.suites = {"diffgeo", "group"};
    const auto reports = run_suites(cfg);
    REQUIRE(reports.size() == 2);
    CHECK(reports[0].suite == "group");
    CHECK(reports[1].suite == "diffgeo");
}

TEST_CASE("a zero tolerance is reported as failures") {
    SuiteConfig cfg;
    cfg.trials = 20;
    cfg.suites = {"quaternion"};
    cfg.tolerance_overrides["quaternion.assoc"] = 0.0;
    const auto reports = run_suites(cfg);
    REQUIRE(reports.size() == 1);
    const Report& r = reports[0];
    REQUIRE_FALSE(r.failures.empty());
    CHECK(r.passed + static_cast<int>(r.failures.size()) == r.executed);
    CHECK(std::is_sorted(r.failures.begin(), r.failures.end(),
                         [](const Failure& x, const Failure& y) { return x.case_id < y.case_id; }));
    for (const auto& f : r.failures) {
        CHECK(f.case_id.rfind("assoc/", 0) == 0);
        CHECK(f.threshold == 0.0);
        CHECK(f.measured > 0.0);
    }

    const json j = reports_to_json(cfg, reports);
    CHECK(j["failed"] == r.failures.size());
    CHECK(j["suites"][0]["failures"][0].contains("inputs"));
}
