#include <doctest.h>

#include <cmath>

#include "qmob/errors.hpp"
#include "qmob/random.hpp"
#include "qmob/regular_moebius.hpp"
#include "qmob/slice_series.hpp"
#include "qmob/sp_groups.hpp"

using namespace qmob;

namespace {

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

// Power-sum evaluation sum q^n a_n with explicit powers; independent of Horner.
Quaternion eval_by_powers(const SliceSeries& f, const Quaternion& q) {
    Quaternion acc, pw(1.0);
    for (const Quaternion& a : f.coeffs()) {
        acc += pw * a;
        pw = q * pw;
    }
    return acc;
}

const Quaternion i = Quaternion::i(), j = Quaternion::j(), k = Quaternion::k();

}  // namespace

TEST_CASE("linear_series") {
    const SliceSeries id = linear_series(1.0, 0.0);
    CHECK(id.order() == 1);
    CHECK(id[0] == Quaternion{});
    CHECK(id[1] == Quaternion(1.0));

    const SliceSeries c = linear_series(0.0, j);
    CHECK(c[0] == j);
    CHECK(c[1] == Quaternion{});

    CHECK(eval(linear_series(i, j), k) == k * i + j);
}

TEST_CASE("star_product") {
    const Quaternion a0(0.3, 1, -2, 0.5), b0(-1, 0.2, 0, 4);
    CHECK(star_product(SliceSeries{a0}, SliceSeries{b0})[0] == a0 * b0);

    // hand convolution: c0 = (-i)(i) = 1, c1 = (-i) 1 + 1 (i) = 0, c2 = 1
    const SliceSeries p = star_product(SliceSeries{-i, 1.0}, SliceSeries{i, 1.0});
    REQUIRE(p.order() == 2);
    CHECK(p[0] == Quaternion(1.0));
    CHECK(p[1] == Quaternion{});
    CHECK(p[2] == Quaternion(1.0));

    CounterRng rng(21);
    for (int t = 0; t < 20; ++t) {
        const SliceSeries f = random_series(rng, 7);
        CHECK(max_coeff_dev(star_product(f, SliceSeries::unit()), f) == 0.0);
        CHECK(max_coeff_dev(star_product(SliceSeries::unit(), f), f) == 0.0);
    }
}

TEST_CASE("star_product is not the pointwise product off the real axis") {
    // (q i) * (q j) has coefficient i j = k at q^2, so it evaluates to q^2 k,
    // while the pointwise product is q i q j.
    const SliceSeries f = linear_series(i, 0.0), g = linear_series(j, 0.0);
    const Quaternion q(0.1, 0.2, 0.3, 0.4);
    const Quaternion star = eval(star_product(f, g), q);
    CHECK(distance(star, q * q * k) <= 1e-15);
    CHECK(distance(star, eval(f, q) * eval(g, q)) > 1e-3);
}

TEST_CASE("star_product agrees with pointwise product at real points") {
    CounterRng rng(22);
    for (int t = 0; t < 100; ++t) {
        const SliceSeries f = random_series(rng, 6), g = random_series(rng, 9);
        const double r = rng.uniform(-0.9, 0.9);
        CHECK(distance(eval(star_product(f, g), r), eval(f, r) * eval(g, r)) <= 1e-12);
    }
}

TEST_CASE("star_product is real bilinear") {
    CounterRng rng(23);
    for (int t = 0; t < 100; ++t) {
        const SliceSeries f = random_series(rng, 5), g = random_series(rng, 5), h = random_series(rng, 3);
        const double a = rng.uniform(-1, 1), b = rng.uniform(-1, 1);
        CHECK(max_coeff_dev(star_product(a * f + b * g, h), a * star_product(f, h) + b * star_product(g, h)) <= 1e-13);
        CHECK(max_coeff_dev(star_product(h, a * f + b * g), a * star_product(h, f) + b * star_product(h, g)) <= 1e-13);
    }
}

TEST_CASE("regular_conjugate") {
    const SliceSeries c = regular_conjugate(SliceSeries{i, j});
    CHECK(c[0] == -i);
    CHECK(c[1] == -j);
    const SliceSeries real{0.5, -2.0, 3.0};
    CHECK(max_coeff_dev(regular_conjugate(real), real) == 0.0);

    CounterRng rng(24);
    const SliceSeries f = random_series(rng, 10);
    CHECK(max_coeff_dev(regular_conjugate(regular_conjugate(f)), f) == 0.0);
}

TEST_CASE("symmetrization") {
    const SliceSeries s = symmetrization(SliceSeries{-i, 1.0});
    CHECK(max_coeff_dev(s, SliceSeries{1.0, 0.0, 1.0}) <= 1e-15);

    const Quaternion c0(0.3, -1, 2, 0.1);
    CHECK(max_coeff_dev(symmetrization(SliceSeries{c0}), SliceSeries{c0.norm2()}) <= 1e-15);

    // Sp(1,1) column [d, c]: symbolic expansion gives [|d|^2, 2 Re(d conj c), |c|^2]
    CounterRng rng(25);
    for (int t = 0; t < 50; ++t) {
        const MatH2 A = random_sp11(rng).matrix();
        const SliceSeries f = linear_series(A.m01, A.m11);
        const SliceSeries expected{A.m11.norm2(), 2.0 * (A.m11 * A.m01.conj()).w, A.m01.norm2()};
        CHECK(max_coeff_dev(symmetrization(f), expected) <= 1e-12 * A.m11.norm2());
    }

    for (int t = 0; t < 100; ++t) {
        const SliceSeries f = random_series(rng, 8);
        const SliceSeries fs = symmetrization(f);
        CHECK(max_coeff_dev(fs, star_product(regular_conjugate(f), f)) <= 1e-13);
        for (const Quaternion& c : fs.coeffs()) CHECK(c.imag().norm() <= 1e-13);
    }
}

TEST_CASE("regular_reciprocal") {
    SUBCASE("constant") {
        const Quaternion c0(1, 2, -1, 0.5);
        const auto r = regular_reciprocal(SliceSeries{c0}, 10);
        CHECK(r.series.order() == 10);
        CHECK(distance(r.series[0], c0.inverse()) <= 1e-16);
        for (int n = 1; n <= 10; ++n) CHECK(r.series[static_cast<std::size_t>(n)] == Quaternion{});
        CHECK_FALSE(r.min_root_modulus.has_value());
        CHECK_FALSE(r.domain_warning);
    }
    SUBCASE("1 - q conj(a) inverts through the convolution identity") {
        CounterRng rng(26);
        for (int t = 0; t < 200; ++t) {
            const Quaternion a = random_quat(rng, SampleSpec::ball(0.9));
            const SliceSeries f = linear_series(-a.conj(), 1.0);
            const int N = 80;
            const auto r = regular_reciprocal(f, N);
            CHECK_FALSE(r.domain_warning);
            const SliceSeries left = star_product(r.series, f), right = star_product(f, r.series);
            for (int n = 0; n <= N - f.order(); ++n) {
                const Quaternion unit = n == 0 ? Quaternion(1.0) : Quaternion{};
                CHECK((left.coeff(n) - unit).norm() <= 1e-10);
                CHECK((right.coeff(n) - unit).norm() <= 1e-10);
            }
        }
    }
    SUBCASE("pointwise value matches (f^s)^{-1} f^c") {
        CounterRng rng(27);
        for (int t = 0; t < 50; ++t) {
            const Quaternion a = random_quat(rng, SampleSpec::ball(0.8));
            const Quaternion q = random_quat(rng, SampleSpec::ball(0.8));
            const SliceSeries f = linear_series(-a.conj(), 1.0);
            const Quaternion expected = eval(symmetrization(f), q).inverse() * eval(regular_conjugate(f), q);
            CHECK(distance(eval(regular_reciprocal(f, 120).series, q), expected) <= 1e-12);
        }
    }
    SUBCASE("Sp(1,1) denominators have roots outside the closed disc") {
        CounterRng rng(28);
        for (int t = 0; t < 100; ++t) {
            const MatH2 A = random_sp11(rng).matrix();
            const auto r = regular_reciprocal(linear_series(A.m01, A.m11), 40);
            REQUIRE(r.min_root_modulus.has_value());
            CHECK(*r.min_root_modulus == doctest::Approx(A.m11.norm() / A.m01.norm()).epsilon(1e-9));
            CHECK(*r.min_root_modulus > 1.0);
            CHECK_FALSE(r.domain_warning);
        }
    }
    SUBCASE("root inside the disc raises a domain warning") {
        const auto r = regular_reciprocal(linear_series(-2.0 * j, 1.0), 10);  // 1 - 2 q j vanishes at |q| = 1/2
        REQUIRE(r.min_root_modulus.has_value());
        CHECK(*r.min_root_modulus == doctest::Approx(0.5));
        CHECK(r.domain_warning);
    }
    SUBCASE("not invertible at zero") {
        CHECK_THROWS_AS(regular_reciprocal(linear_series(1.0, 0.0), 10), NotInvertibleAtZero);
    }
}

TEST_CASE("min_root_modulus") {
    const double linear[] = {2.0, -4.0};
    CHECK(*min_root_modulus(linear) == doctest::Approx(0.5));
    const double pair[] = {4.0, 0.0, 1.0};  // q^2 + 4, roots +-2i
    CHECK(*min_root_modulus(pair) == doctest::Approx(2.0));
    const double reals[] = {6.0, -5.0, 1.0};  // (q - 2)(q - 3)
    CHECK(*min_root_modulus(reals) == doctest::Approx(2.0));
    const double cubic[] = {1.0, 0.0, 0.0, 1.0};
    CHECK_FALSE(min_root_modulus(cubic).has_value());
    const double constant[] = {3.0};
    CHECK_FALSE(min_root_modulus(constant).has_value());
}

TEST_CASE("eval") {
    const Quaternion a(0.2, -0.4, 0.1, 0.3), b(1, 0, 2, 0), q(0.1, 0.5, -0.2, 0.4);
    CHECK(distance(eval(SliceSeries{b, a}, q), q * a + b) <= 1e-16);
    CHECK(eval(SliceSeries{b, a, q}, Quaternion{}) == b);

    CounterRng rng(29);
    for (int t = 0; t < 50; ++t) {
        const SliceSeries f = random_series(rng, 12);
        const Quaternion p = random_quat(rng, SampleSpec::ball(0.9));
        CHECK(distance(eval(f, p), eval_by_powers(f, p)) <= 1e-14);
    }

    // geometric series [1, a, ..., a^N] against (1 - q a)^{-1} with its tail bound
    for (int t = 0; t < 50; ++t) {
        const double ar = rng.uniform(-0.9, 0.9);
        const Quaternion p = random_quat(rng, SampleSpec::ball(0.9));
        const int N = 60;
        std::vector<Quaternion> c;
        for (int n = 0; n <= N; ++n) c.emplace_back(std::pow(ar, n));
        const double x = p.norm() * std::abs(ar);
        const double bound = std::pow(x, N + 1) / (1.0 - x) + 1e-14;
        CHECK(distance(eval(SliceSeries(c), p), (Quaternion(1.0) - p * ar).inverse()) <= bound);
    }
}

TEST_CASE("cullen_residual") {
    const CullenProbe probe{ImaginaryUnit(j), 0.3, 0.2, 1e-4};
    CHECK(cullen_residual([](const Quaternion& q) { return q * q; }, probe) <= 1e-10);

    // conjugation: d/dx = 1, d/dy = -I, residual (1 + 1)/2 = 1
    for (double h : {1e-3, 1e-4, 1e-5}) {
        CullenProbe p = probe;
        p.h = h;
        CHECK(cullen_residual([](const Quaternion& q) { return q.conj(); }, p) == doctest::Approx(1.0).epsilon(1e-8));
    }

    CounterRng rng(30);
    for (int t = 0; t < 50; ++t) {
        const RegularMoebius F = from_params(random_quat(rng, SampleSpec::ball(0.9)), random_unit(rng));
        const CullenProbe p{random_imaginary_unit(rng), rng.uniform(-0.6, 0.6), rng.uniform(0.0, 0.6), 1e-4};
        CHECK(cullen_residual(F, p) <= 1e-5);
    }
}

TEST_CASE("cullen_residual of series-backed maps shrinks like h^2") {
    CounterRng rng(31);
    for (int t = 0; t < 50; ++t) {
        const SliceSeries f = random_series(rng, 6);
        const SliceMap fn = [&](const Quaternion& q) { return eval(f, q); };
        CullenProbe p{random_imaginary_unit(rng), rng.uniform(-0.5, 0.5), rng.uniform(0.0, 0.5), 1e-3};
        const double r1 = cullen_residual(fn, p);
        p.h /= 2.0;
        const double r2 = cullen_residual(fn, p);
        CHECK(r1 / r2 >= 3.0);
        CHECK(r1 / r2 <= 5.0);
    }
}

TEST_CASE("cullen_residual probe validation") {
    const SliceMap id = [](const Quaternion& q) { return q; };
    CHECK_THROWS_AS(cullen_residual(id, {ImaginaryUnit(i), 0.7, 0.6, 1e-4}), DomainError);   // radius 0.92
    CHECK_THROWS_AS(cullen_residual(id, {ImaginaryUnit(i), 0.0, 0.0, 2e-2}), BadParameter);  // step too large
    CHECK_THROWS_AS(cullen_residual(id, {ImaginaryUnit(i), 0.0, 0.0, 0.0}), BadParameter);
    CHECK_THROWS_AS(cullen_residual(id, {ImaginaryUnit(i), 1.0, 0.1, 1e-4}), BadParameter);  // outside the ball
    CHECK_NOTHROW(cullen_residual(id, {ImaginaryUnit(i), 0.9, 0.0, 1e-3}));
}
