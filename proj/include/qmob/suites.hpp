#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "qmob/errors.hpp"

namespace qmob {

/// Rejected configuration; the CLI maps it to exit code 2.
class ConfigError : public Error {
public:
    using Error::Error;
};

inline constexpr std::uint64_t kDefaultSeed = 20240601;

struct SuiteConfig {
    std::uint64_t seed = kDefaultSeed;
    int trials = 50;
    int series_order = 80;
    /// Tolerance name -> value; names must appear in known_tolerances().
    std::map<std::string, double> tolerance_overrides;
    /// Subset of suite_names(); empty selects all.
    std::vector<std::string> suites;
};

struct Failure {
    std::string case_id;
    nlohmann::json inputs;
    double measured = 0.0;
    double threshold = 0.0;
};

struct Report {
    std::string suite;
    std::uint64_t seed = 0;
    int trials = 0;
    int executed = 0;
    int passed = 0;
    std::vector<Failure> failures;  ///< sorted by case id
    double wall_time_s = 0.0;
};

const std::vector<std::string>& suite_names();
const std::map<std::string, double>& known_tolerances();

/// Throws ConfigError on unknown suites or tolerance names, trials < 1, series_order < 40.
void validate(const SuiteConfig& cfg);

/// Reads {"seed", "trials", "series_order", "tolerances": {...}, "suites": [...]}; absent keys keep defaults.
SuiteConfig config_from_json(const nlohmann::json& j, SuiteConfig base = {});

/// Runs the invariant battery of every selected suite. Deterministic in the
/// seed; suites run concurrently and are reported in suite_names() order.
std::vector<Report> run_suites(const SuiteConfig& cfg);

nlohmann::json to_json(const Report& r);
/// {"seed", "trials", "series_order", "executed", "passed", "failed", "suites": [...]}.
nlohmann::json reports_to_json(const SuiteConfig& cfg, const std::vector<Report>& reports);

int total_failures(const std::vector<Report>& reports) noexcept;

}  // namespace qmob
