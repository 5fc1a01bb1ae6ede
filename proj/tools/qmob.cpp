// qmob: command-line front end for the quaternionic Moebius library.
//
// Exit codes: 0 success / all checks passed, 1 at least one failed check,
// 2 malformed input or configuration.

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>

#include "qmob/classical_moebius.hpp"
#include "qmob/diffgeo.hpp"
#include "qmob/json_io.hpp"
#include "qmob/regular_moebius.hpp"
#include "qmob/suites.hpp"

namespace {

using nlohmann::json;

constexpr int kExitFailures = 1;
constexpr int kExitInput = 2;

/// Accepts a path to a JSON file or an inline JSON document.
json load_json_arg(const std::string& arg) {
    if (std::filesystem::is_regular_file(arg)) {
        std::ifstream in(arg);
        return json::parse(in);
    }
    return json::parse(arg);
}

qmob::Quaternion quat_arg(const std::string& s) { return qmob::quaternion_from_json(json::parse(s)); }

void emit(const json& j) { std::cout << j.dump(2) << '\n'; }

struct VerifyArgs {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<int> trials;
    std::optional<int> order;
    std::vector<std::string> suites;
    std::vector<std::string> tolerances;
    std::string out;
};

int cmd_verify(const VerifyArgs& args) {
    qmob::SuiteConfig cfg;
    if (const char* env = std::getenv("QMOB_SEED"); env && *env) {
        try {
            cfg.seed = std::stoull(env);
        } catch (const std::exception&) {
            throw qmob::ConfigError("QMOB_SEED is not an unsigned integer");
        }
    }
    if (!args.config.empty()) {
        try {
            cfg = qmob::config_from_json(load_json_arg(args.config), cfg);
        } catch (const json::exception& e) {
            throw qmob::ConfigError(std::string("cannot read config: ") + e.what());
        }
    }
    if (args.seed) cfg.seed = *args.seed;
    if (args.trials) cfg.trials = *args.trials;
    if (args.order) cfg.series_order = *args.order;
    if (!args.suites.empty()) cfg.suites = args.suites;
    for (const auto& kv : args.tolerances) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw qmob::ConfigError("tolerance override must be name=value: " + kv);
        try {
            cfg.tolerance_overrides[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
        } catch (const std::exception&) {
            throw qmob::ConfigError("tolerance value is not a number: " + kv);
        }
    }
    qmob::validate(cfg);

    const auto reports = qmob::run_suites(cfg);
    const json out = qmob::reports_to_json(cfg, reports);
    if (args.out.empty()) {
        emit(out);
    } else {
        std::ofstream f(args.out);
        if (!f) throw qmob::ConfigError("cannot write report to " + args.out);
        f << out.dump(2) << '\n';
    }
    for (const auto& r : reports)
        std::cerr << r.suite << ": " << r.passed << "/" << r.executed << " passed\n";
    return qmob::total_failures(reports) == 0 ? 0 : kExitFailures;
}

struct EvalArgs {
    bool classical = false;
    bool regular = false;
    std::string matrix;
    std::string a;
    std::string u = "[1,0,0,0]";
    std::string q;
    std::string mode = "closed";
    int order = qmob::kDefaultSeriesOrder;
};

int cmd_eval(const EvalArgs& args) {
    if (args.classical == args.regular) throw qmob::BadParameter("choose exactly one of --classical / --regular");
    const qmob::Quaternion q = quat_arg(args.q);
    json out{{"q", qmob::to_json(q)}};
    if (args.classical) {
        if (args.matrix.empty()) throw qmob::BadParameter("--classical needs --matrix");
        const qmob::ClassicalMoebius F{qmob::Sp11Element(qmob::matrix_from_json(load_json_arg(args.matrix)))};
        out["map"] = "classical";
        out["value"] = qmob::to_json(qmob::classical_eval(F, q));
    } else {
        out["map"] = "regular";
        out["mode"] = args.mode;
        if (!args.matrix.empty()) {
            const qmob::Sp11Element A(qmob::matrix_from_json(load_json_arg(args.matrix)));
            if (args.mode == "closed") {
                out["value"] = qmob::to_json(qmob::regular_eval_matrix(A.matrix(), q));
            } else {
                if (q.norm() > qmob::kSeriesEvalRadius) throw qmob::DomainError("series evaluation outside the 0.8-ball");
                out["value"] = qmob::to_json(qmob::eval(qmob::regular_series(A.matrix(), args.order), q));
            }
        } else {
            if (args.a.empty()) throw qmob::BadParameter("--regular needs --a/--u or --matrix");
            const auto F = qmob::from_params(quat_arg(args.a), qmob::UnitQuaternion(quat_arg(args.u)));
            out["a"] = qmob::to_json(F.zero());
            out["u"] = qmob::to_json(F.rotation().value());
            out["value"] = qmob::to_json(args.mode == "closed" ? qmob::eval_closed(F, q)
                                                                : qmob::eval_series(F, q, args.order));
        }
    }
    emit(out);
    return 0;
}

int cmd_canonical(const std::string& matrix) {
    const qmob::MatH2 A = qmob::matrix_from_json(load_json_arg(matrix));
    const qmob::CanonicalExtraction ex = qmob::extract_canonical(A);
    emit({{"a", qmob::to_json(ex.a)}, {"u", qmob::to_json(ex.u.value())}, {"consistency_defect", ex.consistency_defect}});
    if (!(ex.consistency_defect <= qmob::kTolGrp)) {
        std::cerr << "error: matrix entries do not fit a single fiber\n";
        return kExitInput;
    }
    return 0;
}

int cmd_jacobian(const std::string& a_arg, const std::string& u_arg, double h) {
    const qmob::Quaternion a0 = quat_arg(a_arg);
    const qmob::UnitQuaternion u0(quat_arg(u_arg));
    double rel = 0.0;
    for (const auto& t : qmob::canonical_tangents(u0))
        rel = std::max(rel, qmob::relative_deviation(qmob::dlift_fd(a0, u0, t, h), qmob::dlift_closed(a0, u0, t)));
    emit({{"fd_vs_closed_rel", rel},
          {"rank_image", qmob::image_rank(a0, u0)},
          {"rank_total", qmob::transversality_rank(a0, u0)}});
    return 0;
}

struct CounterexampleArgs {
    double a = 0.5;
    std::string u = "[0,1,0,0]";
    std::string I = "[0,0,1,0]";
    double x = 0.2;
    double y = 0.2;
    double h = 1e-4;
    int order = qmob::kCounterexampleOrder;
};

int cmd_counterexample(const CounterexampleArgs& args) {
    const qmob::UnitQuaternion u(quat_arg(args.u));
    const qmob::CullenProbe probe{qmob::ImaginaryUnit(quat_arg(args.I)), args.x, args.y, args.h};
    const auto ce = qmob::composition_counterexample(args.a, u, probe, args.order);
    emit({{"a", args.a},
          {"u", qmob::to_json(u.value())},
          {"probe", {{"I", qmob::to_json(probe.I.value())}, {"x", probe.x}, {"y", probe.y}, {"h", probe.h}}},
          {"residual", ce.residual},
          {"coeffs", qmob::to_json(ce.outer)}});
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quaternionic classical and slice regular Moebius transformations of the unit ball"};
    app.require_subcommand(1);
    app.set_help_flag("--help", "print this help message and exit");

    VerifyArgs verify;
    auto* v = app.add_subcommand("verify", "run the deterministic invariant suites and print a JSON report");
    v->add_option("--config", verify.config, "JSON config file (or inline JSON)");
    v->add_option("--seed", verify.seed, "root seed (default: $QMOB_SEED or built-in)");
    v->add_option("--trials", verify.trials, "trials per check");
    v->add_option("--order", verify.order, "series truncation order");
    v->add_option("--suite", verify.suites, "suite to run (repeatable)");
    v->add_option("--tol", verify.tolerances, "tolerance override name=value (repeatable)");
    v->add_option("--out", verify.out, "write the report to a file instead of stdout");

    EvalArgs ev;
    auto* e = app.add_subcommand("eval", "evaluate a classical or regular Moebius transformation");
    e->add_flag("--classical", ev.classical, "F_A(q) = (qc + d)^{-1}(qa + b)");
    e->add_flag("--regular", ev.regular, "slice regular transformation");
    e->add_option("--matrix", ev.matrix, "Sp(1,1) matrix JSON file or inline JSON");
    e->add_option("--a", ev.a, "zero of the regular map, [w,x,y,z]");
    e->add_option("--u", ev.u, "unit rotation, [w,x,y,z]");
    e->add_option("--q", ev.q, "evaluation point, [w,x,y,z]")->required();
    e->add_option("--mode", ev.mode, "closed or series")->check(CLI::IsMember({"closed", "series"}));
    e->add_option("--order", ev.order, "series truncation order");

    std::string canon_matrix;
    auto* c = app.add_subcommand("canonical", "canonical (a, u) of the bundle projection of a matrix");
    c->add_option("--matrix", canon_matrix, "Sp(1,1) matrix JSON file or inline JSON")->required();

    std::string jac_a, jac_u = "[1,0,0,0]";
    double jac_h = 1e-5;
    auto* j = app.add_subcommand("jacobian", "closed-form vs finite-difference lift differential and ranks");
    j->add_option("--a", jac_a, "base point a0, [w,x,y,z]")->required();
    j->add_option("--u", jac_u, "base rotation u0, [w,x,y,z]");
    j->add_option("--h", jac_h, "finite-difference step");

    CounterexampleArgs ce;
    auto* x = app.add_subcommand("counterexample", "Cullen residual of a non-regular composition");
    x->add_option("--a", ce.a, "real parameter in [-0.9, 0.9]");
    x->add_option("--u", ce.u, "unit rotation, [w,x,y,z]");
    x->add_option("--I", ce.I, "imaginary unit of the probe slice");
    x->add_option("--x", ce.x, "probe real coordinate");
    x->add_option("--y", ce.y, "probe imaginary coordinate");
    x->add_option("--h", ce.h, "central-difference step");
    x->add_option("--order", ce.order, "truncation order of the expansion");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& err) {
        return app.exit(err);
    } catch (const CLI::CallForAllHelp& err) {
        return app.exit(err);
    } catch (const CLI::ParseError& err) {
        app.exit(err);
        return kExitInput;
    }

    try {
        if (*v) return cmd_verify(verify);
        if (*e) return cmd_eval(ev);
        if (*c) return cmd_canonical(canon_matrix);
        if (*j) return cmd_jacobian(jac_a, jac_u, jac_h);
        if (*x) return cmd_counterexample(ce);
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << '\n';
        return kExitInput;
    }
    return kExitInput;
}
