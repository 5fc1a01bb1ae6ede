#include "qmob/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <future>
#include <numbers>
#include <set>

#include "qmob/classical_moebius.hpp"
#include "qmob/diffgeo.hpp"
#include "qmob/json_io.hpp"
#include "qmob/random.hpp"
#include "qmob/regular_moebius.hpp"
#include "qmob/slice_series.hpp"
#include "qmob/sp_groups.hpp"

namespace qmob {

using nlohmann::json;

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"quaternion", "series", "group", "classical", "regular", "diffgeo"};
    return names;
}

const std::map<std::string, double>& known_tolerances() {
    static const std::map<std::string, double> tol = {
        {"quaternion.assoc", 1e-13},
        {"quaternion.norm_mult", 1e-13},
        {"quaternion.conj_anti", 1e-13},
        {"quaternion.slice_recon", 1e-14},
        {"quaternion.exp_unit", 1e-13},
        {"quaternion.inverse", 1e-14},
        {"series.bilinear", 1e-13},
        {"series.sym_commute", 1e-13},
        {"series.reciprocal", 1e-10},
        {"series.real_point", 1e-12},
        {"series.h2_rate", 1.0},
        {"group.closure", 1e-11},
        {"group.diag_norm", 1e-11},
        {"group.inverse_involution", 1e-12},
        {"group.inverse_identity", 1e-12},
        {"group.membership", 1e-12},
        {"classical.range", 1e-12},
        {"classical.group_law", 1e-10},
        {"classical.coset", 1e-12},
        {"classical.stabilizer", 1e-11},
        {"classical.kernel_eq", 1e-9},
        {"regular.round_trip", 1e-10},
        {"regular.zero", 1e-9},
        {"regular.range", 1e-12},
        {"regular.cullen", 1e-5},
        {"regular.cullen_rate", 1.0},
        {"regular.fiber_eq", 1e-9},
        {"regular.freeness", 1e-9},
        {"regular.series_closed", 1e-6},
        {"regular.counterexample_regular", 1e-8},
        {"diffgeo.fd_closed", 1e-5},
        {"diffgeo.linearity", 1e-12},
        {"diffgeo.m11_real", 1e-12},
    };
    return tol;
}

void validate(const SuiteConfig& cfg) {
    if (cfg.trials < 1) throw ConfigError("trials must be >= 1");
    if (cfg.series_order < kMinSeriesEvalOrder) throw ConfigError("series_order must be >= 40");
    const auto& names = suite_names();
    for (const auto& s : cfg.suites)
        if (std::find(names.begin(), names.end(), s) == names.end()) throw ConfigError("unknown suite: " + s);
    for (const auto& [name, value] : cfg.tolerance_overrides) {
        if (!known_tolerances().contains(name)) throw ConfigError("unknown tolerance: " + name);
        if (!(value >= 0.0)) throw ConfigError("tolerance must be non-negative: " + name);
    }
}

SuiteConfig config_from_json(const json& j, SuiteConfig base) {
    try {
        if (!j.is_object()) throw ConfigError("config must be a JSON object");
        for (const auto& [key, _] : j.items()) {
            static const std::set<std::string> allowed = {"seed", "trials", "series_order", "tolerances", "suites"};
            if (!allowed.contains(key)) throw ConfigError("unknown config key: " + key);
        }
        if (j.contains("seed")) base.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("trials")) base.trials = j.at("trials").get<int>();
        if (j.contains("series_order")) base.series_order = j.at("series_order").get<int>();
        if (j.contains("tolerances"))
            for (const auto& [name, value] : j.at("tolerances").items()) base.tolerance_overrides[name] = value.get<double>();
        if (j.contains("suites")) base.suites = j.at("suites").get<std::vector<std::string>>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    }
    return base;
}

namespace {

// Residual ratios below this level are dominated by rounding in the
// central differences and carry no information about the h^2 rate.
constexpr double kRateNoiseFloor = 1e-10;
// Lower bound on the Cullen residual of the u = i composition at
// a = 0.5, probe (I = j, x = 0.2, y = 0.2), from term-wise differentiation.
constexpr double kCounterexampleResidualFloor = 0.1029;

class SuiteRun {
public:
    SuiteRun(std::string suite, const SuiteConfig& cfg)
        : cfg_(cfg), root_(CounterRng(cfg.seed).split(suite)) {
        report_.suite = std::move(suite);
        report_.seed = cfg.seed;
        report_.trials = cfg.trials;
    }

    [[nodiscard]] double tol(const std::string& name) const {
        if (auto it = cfg_.tolerance_overrides.find(name); it != cfg_.tolerance_overrides.end()) return it->second;
        return known_tolerances().at(name);
    }

    [[nodiscard]] CounterRng rng(std::string_view check, int trial) const {
        return root_.split(check).split(static_cast<std::uint64_t>(trial));
    }

    [[nodiscard]] int trials() const noexcept { return cfg_.trials; }
    [[nodiscard]] int order() const noexcept { return cfg_.series_order; }

    void check(const std::string& check, int trial, const json& inputs, double measured, const std::string& tol_name) {
        record(check, trial, inputs, measured, tol(tol_name), measured <= tol(tol_name));
    }

    void check_bool(const std::string& check, int trial, const json& inputs, bool ok) {
        record(check, trial, inputs, ok ? 0.0 : 1.0, 0.0, ok);
    }

    /// Runs `body(trial)` for every trial; a thrown library error counts as a failure.
    void for_trials(const std::string& check, const std::function<void(int)>& body) {
        for (int t = 0; t < cfg_.trials; ++t) {
            try {
                body(t);
            } catch (const std::exception& e) {
                record(check, t, json{{"exception", e.what()}}, std::numeric_limits<double>::infinity(), 0.0, false);
            }
        }
    }

    Report finish(double seconds) {
        std::sort(report_.failures.begin(), report_.failures.end(),
                  [](const Failure& a, const Failure& b) { return a.case_id < b.case_id; });
        report_.wall_time_s = seconds;
        return std::move(report_);
    }

private:
    void record(const std::string& check, int trial, const json& inputs, double measured, double threshold, bool ok) {
        ++report_.executed;
        if (ok && !std::isnan(measured)) {
            ++report_.passed;
            return;
        }
        char id[32];
        std::snprintf(id, sizeof id, "/%05d", trial);
        report_.failures.push_back({check + id, inputs, measured, threshold});
    }

    const SuiteConfig& cfg_;
    CounterRng root_;
    Report report_;
};

double max_coeff_dev(const SliceSeries& f, const SliceSeries& g) {
    double d = 0.0;
    for (int n = 0; n <= std::max(f.order(), g.order()); ++n) d = std::max(d, (f.coeff(n) - g.coeff(n)).norm());
    return d;
}

SliceSeries random_series(CounterRng& rng, int order) {
    std::vector<Quaternion> c(static_cast<std::size_t>(order) + 1);
    for (auto& q : c) q = random_quat(rng, SampleSpec::ball(0.99));
    return SliceSeries(std::move(c));
}

CullenProbe random_probe(CounterRng& rng, double h) {
    const ImaginaryUnit I = random_imaginary_unit(rng);
    const double r = 0.85 * std::sqrt(rng.uniform());
    const double th = rng.uniform(0.0, std::numbers::pi);
    return {I, r * std::cos(th), r * std::sin(th), h};
}

json probe_json(const CullenProbe& p) {
    return {{"I", to_json(p.I.value())}, {"x", p.x}, {"y", p.y}, {"h", p.h}};
}

double mat_dist(const MatH2& A, const MatH2& B) { return frobenius(A - B); }

// ---------------------------------------------------------------- quaternion

void quaternion_suite(SuiteRun& run) {
    run.for_trials("assoc", [&](int t) {
        auto rng = run.rng("assoc", t);
        const Quaternion p = random_quat(rng, SampleSpec::ball(0.99)), q = random_quat(rng, SampleSpec::unit()),
                         r = random_quat(rng, SampleSpec::ball(0.99));
        run.check("assoc", t, {to_json(p), to_json(q), to_json(r)}, distance((p * q) * r, p * (q * r)),
                  "quaternion.assoc");
    });
    run.for_trials("norm_mult", [&](int t) {
        auto rng = run.rng("norm_mult", t);
        const Quaternion p = random_quat(rng, SampleSpec::ball(0.99)), q = random_quat(rng, SampleSpec::unit());
        run.check("norm_mult", t, {to_json(p), to_json(q)}, std::abs((p * q).norm() - p.norm() * q.norm()),
                  "quaternion.norm_mult");
    });
    run.for_trials("conj_anti", [&](int t) {
        auto rng = run.rng("conj_anti", t);
        const Quaternion p = random_quat(rng, SampleSpec::ball(0.99)), q = random_quat(rng, SampleSpec::ball(0.99));
        run.check("conj_anti", t, {to_json(p), to_json(q)}, distance((p * q).conj(), q.conj() * p.conj()),
                  "quaternion.conj_anti");
    });
    run.for_trials("slice_recon", [&](int t) {
        auto rng = run.rng("slice_recon", t);
        const Quaternion q = random_quat(rng, SampleSpec::ball(0.99));
        const SliceCoords s = to_slice(q);
        run.check("slice_recon", t, to_json(q), s.y < 0.0 ? 1.0 : distance(s.reconstruct(), q),
                  "quaternion.slice_recon");
    });
    run.for_trials("exp_unit", [&](int t) {
        auto rng = run.rng("exp_unit", t);
        const Quaternion w = random_pure_imaginary(rng, 10.0);
        run.check("exp_unit", t, to_json(w), std::abs(qexp(w).norm() - 1.0), "quaternion.exp_unit");
    });
    run.for_trials("inverse", [&](int t) {
        auto rng = run.rng("inverse", t);
        Quaternion q = random_quat(rng, SampleSpec::unit()) * rng.uniform(0.1, 10.0);
        run.check("inverse", t, to_json(q), distance(q * qconj_inv_norm(q).inv, 1.0), "quaternion.inverse");
    });
}

// -------------------------------------------------------------------- series

void series_suite(SuiteRun& run) {
    run.for_trials("bilinear", [&](int t) {
        auto rng = run.rng("bilinear", t);
        const SliceSeries f = random_series(rng, 6), g = random_series(rng, 6), h = random_series(rng, 4);
        const double alpha = rng.uniform(-1, 1), beta = rng.uniform(-1, 1);
        const double left = max_coeff_dev(star_product(alpha * f + beta * g, h),
                                          alpha * star_product(f, h) + beta * star_product(g, h));
        const double right = max_coeff_dev(star_product(h, alpha * f + beta * g),
                                           alpha * star_product(h, f) + beta * star_product(h, g));
        run.check("bilinear", t, {{"alpha", alpha}, {"beta", beta}}, std::max(left, right), "series.bilinear");
    });
    run.for_trials("sym_commute", [&](int t) {
        auto rng = run.rng("sym_commute", t);
        const SliceSeries f = random_series(rng, 8);
        run.check("sym_commute", t, to_json(f), max_coeff_dev(symmetrization(f), star_product(regular_conjugate(f), f)),
                  "series.sym_commute");
    });
    run.for_trials("reciprocal", [&](int t) {
        auto rng = run.rng("reciprocal", t);
        const Quaternion a = random_quat(rng, SampleSpec::ball(0.9));
        const SliceSeries f = linear_series(-a.conj(), 1.0);
        const int N = run.order();
        const SliceSeries prod = star_product(regular_reciprocal(f, N).series, f);
        double dev = 0.0;
        for (int n = 0; n <= N - f.order(); ++n) dev = std::max(dev, (prod.coeff(n) - (n == 0 ? 1.0 : 0.0)).norm());
        run.check("reciprocal", t, {{"a", to_json(a)}, {"order", N}}, dev, "series.reciprocal");
    });
    run.for_trials("real_point", [&](int t) {
        auto rng = run.rng("real_point", t);
        const SliceSeries f = random_series(rng, 7), g = random_series(rng, 5);
        const double r = rng.uniform(-0.9, 0.9);
        run.check("real_point", t, {{"r", r}}, distance(eval(star_product(f, g), r), eval(f, r) * eval(g, r)),
                  "series.real_point");
    });
    run.for_trials("h2_rate", [&](int t) {
        auto rng = run.rng("h2_rate", t);
        const SliceSeries f = random_series(rng, 6);
        CullenProbe probe = random_probe(rng, 1e-4);
        const SliceMap fn = [&](const Quaternion& q) { return eval(f, q); };
        const double r1 = cullen_residual(fn, probe);
        probe.h /= 2.0;
        const double r2 = cullen_residual(fn, probe);
        const double dev = r1 < kRateNoiseFloor ? 0.0 : std::abs(r1 / r2 - 4.0);
        run.check("h2_rate", t, {{"probe", probe_json(probe)}, {"r_h", r1}, {"r_h2", r2}}, dev, "series.h2_rate");
    });
}

// --------------------------------------------------------------------- group

void group_suite(SuiteRun& run) {
    run.for_trials("closure", [&](int t) {
        auto rng = run.rng("closure", t);
        const Sp11Element A = random_sp11(rng), B = random_sp11(rng);
        run.check("closure", t, {to_json(A.matrix()), to_json(B.matrix())},
                  membership_defect(mat_mul(A.matrix(), B.matrix())), "group.closure");
    });
    run.for_trials("diag_norm", [&](int t) {
        auto rng = run.rng("diag_norm", t);
        const MatH2 A = (random_sp11(rng) * random_sp11(rng)).matrix();
        run.check("diag_norm", t, to_json(A), std::abs(A.m00.norm() - A.m11.norm()), "group.diag_norm");
    });
    run.for_trials("inverse_involution", [&](int t) {
        auto rng = run.rng("inverse_involution", t);
        const Sp11Element A = random_sp11(rng);
        run.check("inverse_involution", t, to_json(A.matrix()),
                  mat_dist(sp11_inverse(sp11_inverse(A)).matrix(), A.matrix()), "group.inverse_involution");
    });
    run.for_trials("inverse_identity", [&](int t) {
        auto rng = run.rng("inverse_identity", t);
        const Sp11Element A = random_sp11(rng);
        run.check("inverse_identity", t, to_json(A.matrix()),
                  mat_dist(mat_mul(A.matrix(), sp11_inverse(A).matrix()), MatH2::identity()),
                  "group.inverse_identity");
    });
    run.for_trials("membership", [&](int t) {
        auto rng = run.rng("membership", t);
        const Sp11Element A = random_sp11(rng);
        run.check("membership", t, to_json(A.matrix()), membership_defect(A.matrix()), "group.membership");
    });
    run.for_trials("classify_generic", [&](int t) {
        auto rng = run.rng("classify_generic", t);
        const Sp11Element A = random_sp11(rng);
        run.check_bool("classify_generic", t, to_json(A.matrix()),
                       classify_subgroup(A.matrix()) == SubgroupClass::none);
    });
}

// ----------------------------------------------------------------- classical

void classical_suite(SuiteRun& run) {
    run.for_trials("range", [&](int t) {
        auto rng = run.rng("range", t);
        const ClassicalMoebius F(random_sp11(rng));
        const Quaternion q = random_quat(rng, SampleSpec::ball(0.95));
        run.check("range", t, {{"A", to_json(F.matrix().matrix())}, {"q", to_json(q)}},
                  std::max(0.0, classical_eval(F, q).norm() - 1.0), "classical.range");
    });
    run.for_trials("group_law", [&](int t) {
        auto rng = run.rng("group_law", t);
        const ClassicalMoebius F(random_sp11(rng)), G(random_sp11(rng));
        const ClassicalMoebius FG = classical_compose(F, G);
        double dev = 0.0;
        for (int k = 0; k < 20; ++k) {
            const Quaternion q = random_quat(rng, SampleSpec::ball(0.9));
            dev = std::max(dev, distance(FG(q), G(F(q))));
        }
        run.check("group_law", t, {{"A", to_json(F.matrix().matrix())}, {"B", to_json(G.matrix().matrix())}}, dev,
                  "classical.group_law");
    });
    run.for_trials("coset", [&](int t) {
        auto rng = run.rng("coset", t);
        const Sp11Element A = random_sp11(rng);
        const Sp11Element D(MatH2::diag(random_unit(rng).value(), random_unit(rng).value()));
        run.check("coset", t, to_json(A.matrix()), distance(classical_quotient_point(D * A), classical_quotient_point(A)),
                  "classical.coset");
    });
    run.for_trials("stabilizer", [&](int t) {
        auto rng = run.rng("stabilizer", t);
        const bool diagonal = t % 2 == 0;
        const Sp11Element A = diagonal ? Sp11Element(MatH2::diag(random_unit(rng).value(), random_unit(rng).value()))
                                       : random_sp11(rng);
        const ClassicalMoebius F(A);
        const bool by_value = classical_eval(F, 0.0).norm() <= run.tol("classical.stabilizer");
        run.check_bool("stabilizer", t, to_json(A.matrix()), classical_fixes_origin(F) == by_value);
    });
    run.for_trials("kernel", [&](int t) {
        auto rng = run.rng("kernel", t);
        const Sp11Element A = random_sp11(rng);
        Sp11Element B;
        switch (t % 4) {
            case 0: B = Sp11Element(-1.0 * A.matrix()); break;
            case 1: B = A; break;
            case 2: B = Sp11Element(left_scalar(random_unit(rng).value(), A.matrix())); break;
            default: B = random_sp11(rng); break;
        }
        const bool eq = pointwise_equal(ClassicalMoebius(A), ClassicalMoebius(B), kDefaultEqualitySamples,
                                        run.tol("classical.kernel_eq"));
        const bool pm = classify_subgroup(mat_mul(A.matrix(), sp11_inverse(B).matrix())) == SubgroupClass::z2;
        run.check_bool("kernel", t, {{"A", to_json(A.matrix())}, {"B", to_json(B.matrix())}}, eq == pm);
    });
}

// ------------------------------------------------------------------- regular

RegularMoebius random_member(CounterRng& rng, double rmax = 0.9) {
    return from_params(random_quat(rng, SampleSpec::ball(rmax)), random_unit(rng));
}

json member_json(const RegularMoebius& F) { return {{"a", to_json(F.zero())}, {"u", to_json(F.rotation().value())}}; }

void regular_suite(SuiteRun& run) {
    run.for_trials("round_trip", [&](int t) {
        auto rng = run.rng("round_trip", t);
        const RegularMoebius F = random_member(rng);
        const RegularMoebius G = projection(lift_matrix(F.zero(), F.rotation()).matrix());
        const RegularMoebius S = projection(section(F).matrix());
        const double dev = std::max({distance(G.zero(), F.zero()), distance(G.rotation(), F.rotation()),
                                     distance(S.zero(), F.zero()), distance(S.rotation(), F.rotation())});
        run.check("round_trip", t, member_json(F), dev, "regular.round_trip");
    });
    run.for_trials("zero", [&](int t) {
        auto rng = run.rng("zero", t);
        const RegularMoebius F = random_member(rng);
        // smallest |F| on a lattice of the 0.9-ball away from a must stay above tol
        double min_far = std::numeric_limits<double>::infinity();
        const int n = 7;
        for (int i0 = 0; i0 < n; ++i0)
            for (int i1 = 0; i1 < n; ++i1)
                for (int i2 = 0; i2 < n; ++i2)
                    for (int i3 = 0; i3 < n; ++i3) {
                        const auto c = [&](int i) { return -0.9 + 1.8 * i / (n - 1); };
                        const Quaternion q{c(i0), c(i1), c(i2), c(i3)};
                        if (q.norm() > 0.9 || distance(q, F.zero()) <= 1e-4) continue;
                        min_far = std::min(min_far, F(q).norm());
                    }
        const double at_zero = F(F.zero()).norm();
        const bool ok = at_zero <= run.tol("regular.zero") && min_far > run.tol("regular.zero");
        run.check_bool("zero", t, member_json(F), ok);
    });
    run.for_trials("range", [&](int t) {
        auto rng = run.rng("range", t);
        const RegularMoebius F = random_member(rng);
        const Quaternion q = random_quat(rng, SampleSpec::ball(0.95));
        run.check("range", t, {{"F", member_json(F)}, {"q", to_json(q)}}, std::max(0.0, F(q).norm() - 1.0),
                  "regular.range");
    });
    run.for_trials("cullen", [&](int t) {
        auto rng = run.rng("cullen", t);
        const RegularMoebius F = random_member(rng);
        const CullenProbe probe = random_probe(rng, 1e-4);
        run.check("cullen", t, {{"F", member_json(F)}, {"probe", probe_json(probe)}}, cullen_residual(F, probe),
                  "regular.cullen");
    });
    run.for_trials("cullen_rate", [&](int t) {
        auto rng = run.rng("cullen_rate", t);
        const RegularMoebius F = random_member(rng);
        CullenProbe probe = random_probe(rng, 1e-4);
        const double r1 = cullen_residual(F, probe);
        probe.h /= 2.0;
        const double r2 = cullen_residual(F, probe);
        const double dev = r1 < kRateNoiseFloor ? 0.0 : std::abs(r1 / r2 - 4.0);
        run.check("cullen_rate", t, {{"F", member_json(F)}, {"r_h", r1}, {"r_h2", r2}}, dev, "regular.cullen_rate");
    });
    run.for_trials("series_closed", [&](int t) {
        auto rng = run.rng("series_closed", t);
        const RegularMoebius F = random_member(rng, 0.8);
        const Quaternion q = random_quat(rng, SampleSpec::ball(0.8));
        run.check("series_closed", t, {{"F", member_json(F)}, {"q", to_json(q)}},
                  distance(eval_series(F, q, run.order()), eval_closed(F, q)), "regular.series_closed");
    });
    run.for_trials("fiber_law", [&](int t) {
        auto rng = run.rng("fiber_law", t);
        const Sp11Element B = random_sp11(rng);
        Sp11Element A;
        switch (t % 4) {
            case 0: A = Sp11Element(left_scalar(random_unit(rng).value(), B.matrix())); break;
            case 1: A = Sp11Element(-1.0 * B.matrix()); break;
            case 2: A = Sp11Element(MatH2::diag(random_unit(rng).value(), 1.0)) * B; break;
            default: A = random_sp11(rng); break;
        }
        const double dev = max_sample_deviation([&](const Quaternion& q) { return regular_eval_matrix(A, q); },
                                                [&](const Quaternion& q) { return regular_eval_matrix(B, q); });
        const bool sampled = dev <= run.tol("regular.fiber_eq");
        run.check_bool("fiber_law", t, {{"A", to_json(A.matrix())}, {"B", to_json(B.matrix())}},
                       fiber_equivalent(A, B) == sampled);
    });
    run.for_trials("freeness", [&](int t) {
        auto rng = run.rng("freeness", t);
        const RegularMoebius F = random_member(rng);
        const double eps = std::array<double, 4>{0.0, 1e-13, 1e-6, 1.0}[static_cast<std::size_t>(t % 4)];
        const UnitQuaternion w = UnitQuaternion::normalized(qexp(eps * random_imaginary_unit(rng).value()));
        Quaternion q = random_quat(rng, SampleSpec::ball(0.9));
        if (distance(q, F.zero()) < 1e-3) q = -q;
        const bool premise = distance(left_compose_rot(w, F)(q), F(q)) <= 1e-11 && F(q).norm() > 0.0;
        const bool ok = !premise || distance(w, 1.0) <= run.tol("regular.freeness");
        run.check_bool("freeness", t, {{"F", member_json(F)}, {"w", to_json(w.value())}, {"q", to_json(q)}}, ok);
    });
    {
        const CullenProbe probe{ImaginaryUnit(Quaternion::j()), 0.2, 0.2, 1e-4};
        double worst = 0.0;
        for (double s : {1.0, -1.0})
            worst = std::max(worst, composition_counterexample(0.5, UnitQuaternion(s), probe).residual);
        run.check("counterexample_regular", 0, probe_json(probe), worst, "regular.counterexample_regular");

        double limit = std::numeric_limits<double>::infinity();
        for (double h : {1e-3, 5e-4, 2.5e-4}) {
            const CullenProbe p{ImaginaryUnit(Quaternion::j()), 0.2, 0.2, h};
            limit = std::min(limit, composition_counterexample(0.5, UnitQuaternion(Quaternion::i()), p).residual);
        }
        run.check_bool("counterexample_nonregular", 0, {{"a", 0.5}, {"u", to_json(Quaternion::i())}},
                       limit >= kCounterexampleResidualFloor);
    }
}

// ------------------------------------------------------------------- diffgeo

TangentPair random_tangent(CounterRng& rng, const UnitQuaternion& u0) {
    return {random_quat(rng, SampleSpec::ball(0.99)), u0.value() * random_pure_imaginary(rng, 1.0)};
}

void diffgeo_suite(SuiteRun& run) {
    run.for_trials("fd_closed", [&](int t) {
        auto rng = run.rng("fd_closed", t);
        const Quaternion a0 = random_quat(rng, SampleSpec::ball(0.9));
        const UnitQuaternion u0 = random_unit(rng);
        const TangentPair tp = random_tangent(rng, u0);
        run.check("fd_closed", t, {{"a0", to_json(a0)}, {"u0", to_json(u0.value())}},
                  relative_deviation(dlift_fd(a0, u0, tp, 1e-5), dlift_closed(a0, u0, tp)), "diffgeo.fd_closed");
    });
    run.for_trials("linearity", [&](int t) {
        auto rng = run.rng("linearity", t);
        const Quaternion a0 = random_quat(rng, SampleSpec::ball(0.9));
        const UnitQuaternion u0 = random_unit(rng);
        const TangentPair s = random_tangent(rng, u0), r = random_tangent(rng, u0);
        const double alpha = rng.uniform(-2, 2), beta = rng.uniform(-2, 2);
        const TangentPair comb{alpha * s.b + beta * r.b, alpha * s.v + beta * r.v};
        const MatH2 lhs = dlift_closed(a0, u0, comb);
        const MatH2 rhs = alpha * dlift_closed(a0, u0, s) + beta * dlift_closed(a0, u0, r);
        run.check("linearity", t, {{"a0", to_json(a0)}, {"u0", to_json(u0.value())}}, mat_dist(lhs, rhs),
                  "diffgeo.linearity");
    });
    run.for_trials("rank", [&](int t) {
        auto rng = run.rng("rank", t);
        const Quaternion a0 = random_quat(rng, SampleSpec::ball(0.9));
        const UnitQuaternion u0 = random_unit(rng);
        run.check_bool("rank", t, {{"a0", to_json(a0)}, {"u0", to_json(u0.value())}},
                       transversality_rank(a0, u0) == 10 && image_rank(a0, u0) == 7);
    });
    run.for_trials("m11_real", [&](int t) {
        auto rng = run.rng("m11_real", t);
        const Quaternion a0 = random_quat(rng, SampleSpec::ball(0.9));
        const UnitQuaternion u0 = random_unit(rng);
        const TangentPair tp = random_tangent(rng, u0);
        run.check("m11_real", t, {{"a0", to_json(a0)}, {"u0", to_json(u0.value())}},
                  dlift_closed(a0, u0, tp).m11.imag().norm(), "diffgeo.m11_real");
    });
}

Report run_one(const std::string& name, const SuiteConfig& cfg) {
    static const std::map<std::string, std::function<void(SuiteRun&)>> bodies = {
        {"quaternion", quaternion_suite}, {"series", series_suite},   {"group", group_suite},
        {"classical", classical_suite},   {"regular", regular_suite}, {"diffgeo", diffgeo_suite},
    };
    const auto start = std::chrono::steady_clock::now();
    SuiteRun run(name, cfg);
    bodies.at(name)(run);
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    return run.finish(elapsed.count());
}

}  // namespace

std::vector<Report> run_suites(const SuiteConfig& cfg) {
    validate(cfg);
    std::vector<std::string> selected;
    for (const auto& name : suite_names())
        if (cfg.suites.empty() || std::find(cfg.suites.begin(), cfg.suites.end(), name) != cfg.suites.end())
            selected.push_back(name);

    std::vector<std::future<Report>> jobs;
    for (const auto& name : selected) jobs.push_back(std::async(std::launch::async, run_one, name, std::cref(cfg)));
    std::vector<Report> reports;
    for (auto& j : jobs) reports.push_back(j.get());
    return reports;
}

json to_json(const Report& r) {
    json failures = json::array();
    for (const auto& f : r.failures) {
        // JSON has no infinity; exceptions are reported with a null measurement
        const json measured = std::isfinite(f.measured) ? json(f.measured) : json(nullptr);
        failures.push_back(
            {{"case_id", f.case_id}, {"inputs", f.inputs}, {"measured", measured}, {"threshold", f.threshold}});
    }
    return {{"suite", r.suite},       {"seed", r.seed},     {"trials", r.trials},
            {"executed", r.executed}, {"passed", r.passed}, {"failures", std::move(failures)},
            {"wall_time_s", r.wall_time_s}};
}

int total_failures(const std::vector<Report>& reports) noexcept {
    int n = 0;
    for (const auto& r : reports) n += static_cast<int>(r.failures.size());
    return n;
}

json reports_to_json(const SuiteConfig& cfg, const std::vector<Report>& reports) {
    json suites = json::array();
    int executed = 0, passed = 0;
    for (const auto& r : reports) {
        suites.push_back(to_json(r));
        executed += r.executed;
        passed += r.passed;
    }
    return {{"seed", cfg.seed},     {"trials", cfg.trials},  {"series_order", cfg.series_order},
            {"executed", executed}, {"passed", passed},      {"failed", total_failures(reports)},
            {"suites", std::move(suites)}};
}

}  // namespace qmob
