#include <doctest.h>

#include "qmob/classical_moebius.hpp"
#include "qmob/errors.hpp"
#include "qmob/random.hpp"

using namespace qmob;

namespace {

const Quaternion i = Quaternion::i(), j = Quaternion::j(), k = Quaternion::k();

ClassicalMoebius random_classical(CounterRng& rng) { return ClassicalMoebius(random_sp11(rng)); }

}  // namespace

TEST_CASE("identity and boosts") {
    const ClassicalMoebius id;
    const Quaternion q(0.1, -0.2, 0.3, 0.05);
    CHECK(id(q) == q);
    CHECK(distance(ClassicalMoebius(boost(0.5))(0.0), 0.5) <= 1e-15);

    // boost(a): (q conj(a) + 1)^{-1} (q + a)
    CounterRng rng(51);
    for (int t = 0; t < 100; ++t) {
        const Quaternion a = random_quat(rng, SampleSpec::ball(0.9)), p = random_quat(rng, SampleSpec::ball(0.9));
        const Quaternion expected = (p * a.conj() + 1.0).inverse() * (p + a);
        CHECK(distance(ClassicalMoebius(boost(a))(p), expected) <= 1e-13);
    }
}

TEST_CASE("diagonal matrices act by v^{-1} q u") {
    CounterRng rng(52);
    for (int t = 0; t < 100; ++t) {
        const UnitQuaternion u = random_unit(rng), v = random_unit(rng);
        const Quaternion p = random_quat(rng, SampleSpec::ball(0.9));
        const ClassicalMoebius F(Sp11Element(MatH2::diag(u, v)));
        CHECK(distance(F(p), v.inverse().value() * p * u.value()) <= 1e-15);
        CHECK(classical_fixes_origin(F));
    }
}

TEST_CASE("maps preserve the ball") {
    CounterRng rng(53);
    for (int t = 0; t < 500; ++t) {
        const ClassicalMoebius F = random_classical(rng);
        const Quaternion p = random_quat(rng, SampleSpec::ball(0.9));
        CHECK(F(p).norm() < 1.0);
    }
    CHECK_THROWS_AS(classical_eval(ClassicalMoebius(), 1.0), DomainError);
    CHECK_THROWS_AS(classical_eval(ClassicalMoebius(), Quaternion(0.6, 0.8, 0, 0)), DomainError);
}

TEST_CASE("group law: F_{AB} = F_B o F_A") {
    CounterRng rng(54);
    for (int t = 0; t < 200; ++t) {
        const ClassicalMoebius F = random_classical(rng), G = random_classical(rng);
        const ClassicalMoebius FG = classical_compose(F, G);
        CHECK(frobenius(FG.matrix().matrix() - F.matrix().matrix() * G.matrix().matrix()) == 0.0);
        for (const Quaternion& q : quasi_random_ball_points(10)) CHECK(distance(FG(q), G(F(q))) <= 1e-10);
    }
}

TEST_CASE("inverse") {
    CounterRng rng(55);
    for (int t = 0; t < 200; ++t) {
        const ClassicalMoebius F = random_classical(rng);
        const ClassicalMoebius Fi = classical_inverse(F);
        for (const Quaternion& q : quasi_random_ball_points(8)) {
            CHECK(distance(Fi(F(q)), q) <= 1e-10);
            CHECK(distance(F(Fi(q)), q) <= 1e-10);
        }
    }
}

TEST_CASE("kernel of the action is +-I") {
    CounterRng rng(56);
    for (int t = 0; t < 100; ++t) {
        const Sp11Element A = random_sp11(rng);
        const ClassicalMoebius F(A), Fneg(Sp11Element(-1.0 * A.matrix()));
        CHECK(pointwise_equal(F, Fneg));

        const UnitQuaternion u = random_unit(rng);
        if (std::abs(u.value().w) < 0.999) {
            const ClassicalMoebius Fu(Sp11Element(left_scalar(u, A.matrix())));
            CHECK_FALSE(pointwise_equal(F, Fu));
        }
    }
    CHECK_FALSE(pointwise_equal(ClassicalMoebius(), ClassicalMoebius(Sp11Element(MatH2::diag(i, i)))));
    CHECK_THROWS_AS(pointwise_equal(ClassicalMoebius(), ClassicalMoebius(), 7), BadParameter);
}

TEST_CASE("stabilizer of the origin is the diagonal subgroup") {
    CounterRng rng(57);
    for (int t = 0; t < 100; ++t) {
        const ClassicalMoebius F = random_classical(rng);
        const bool fixes = F(0.0).norm() <= kTolBall;
        CHECK(classical_fixes_origin(F) == fixes);
    }
    CHECK(classical_fixes_origin(ClassicalMoebius(Sp11Element(MatH2::diag(j, k)))));
    CHECK_FALSE(classical_fixes_origin(ClassicalMoebius(boost(1e-3))));
}

TEST_CASE("quotient point is constant on left cosets") {
    CounterRng rng(58);
    for (int t = 0; t < 100; ++t) {
        const Sp11Element A = random_sp11(rng);
        const Quaternion p = classical_quotient_point(A);
        CHECK(distance(p, A.matrix().m11.inverse() * A.matrix().m10) <= 1e-15);
        CHECK(p.norm() < 1.0);
        const Sp11Element DA = Sp11Element(MatH2::diag(random_unit(rng), random_unit(rng))) * A;
        CHECK(distance(classical_quotient_point(DA), p) <= 1e-12);
    }
    CHECK(distance(classical_quotient_point(boost(Quaternion(0.1, 0.2, 0, 0))), Quaternion(0.1, 0.2, 0, 0)) <= 1e-15);
}

TEST_CASE("inverse orbit of the origin") {
    CounterRng rng(59);
    for (int t = 0; t < 100; ++t) {
        const ClassicalMoebius F = random_classical(rng);
        CHECK(F(classical_inverse_orbit(F)).norm() <= 1e-12);
    }
    const Quaternion a(0.3, 0, -0.1, 0.2);
    CHECK(distance(classical_inverse_orbit(ClassicalMoebius(boost(a))), -a) <= 1e-15);
}

TEST_CASE("quasi_random_ball_points") {
    const auto pts = quasi_random_ball_points(64);
    REQUIRE(pts.size() == 64);
    double rmax = 0.0;
    for (const Quaternion& p : pts) rmax = std::max(rmax, p.norm());
    CHECK(rmax <= 0.8);
    CHECK(rmax >= 0.5);
    CHECK(quasi_random_ball_points(64, 0.5).size() == 64);
    const auto again = quasi_random_ball_points(64);
    for (std::size_t n = 0; n < pts.size(); ++n) CHECK(pts[n] == again[n]);
}
