#include "qmob/regular_moebius.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "qmob/classical_moebius.hpp"
#include "qmob/errors.hpp"

namespace qmob {
namespace {

void require_in_ball(const Quaternion& q) {
    if (!(q.norm() < 1.0)) throw DomainError("evaluation point outside the unit ball");
}

}  // namespace

Quaternion RegularMoebius::operator()(const Quaternion& q) const { return eval_closed(*this, q); }

RegularMoebius from_params(const Quaternion& a, const UnitQuaternion& u) {
    if (!a.is_finite() || a.norm() > kRegularRadiusMax) throw BadParameter("zero a outside the 0.95-ball");
    return RegularMoebius(a, u);
}

RegularMoebius rot(const UnitQuaternion& u) { return from_params(Quaternion{}, u); }

Quaternion eval_closed(const RegularMoebius& F, const Quaternion& q) {
    require_in_ball(q);
    const Quaternion& a = F.zero();
    const Quaternion q2 = q * q;
    const Quaternion den = Quaternion(1.0) - 2.0 * a.w * q + a.norm2() * q2;
    const Quaternion num = q * (a * a + 1.0) - (q2 + 1.0) * a;
    return den.inverse() * num * F.rotation().value();
}

SliceSeries regular_series(const RegularMoebius& F, int order) {
    const Quaternion& a = F.zero();
    const Quaternion& u = F.rotation().value();
    const SliceSeries denominator = linear_series(-a.conj(), 1.0);
    const SliceSeries numerator = linear_series(u, -(a * u));
    return star_product(regular_reciprocal(denominator, order).series, numerator).truncated(order);
}

SliceSeries regular_series(const MatH2& A, int order) {
    const SliceSeries denominator = linear_series(A.m01, A.m11);
    const SliceSeries numerator = linear_series(A.m00, A.m10);
    return star_product(regular_reciprocal(denominator, order).series, numerator).truncated(order);
}

Quaternion eval_series(const RegularMoebius& F, const Quaternion& q, int order) {
    if (order < kMinSeriesEvalOrder) throw BadParameter("series evaluation needs order >= 40");
    if (q.norm() > kSeriesEvalRadius) throw DomainError("series evaluation outside the 0.8-ball");
    return eval(regular_series(F, order), q);
}

Quaternion regular_eval_matrix(const MatH2& A, const Quaternion& q) {
    require_in_ball(q);
    const Quaternion& a = A.m00;
    const Quaternion& c = A.m01;
    const Quaternion& b = A.m10;
    const Quaternion& d = A.m11;
    const Quaternion q2 = q * q;
    const Quaternion den = Quaternion(d.norm2()) + 2.0 * (d * c.conj()).w * q + c.norm2() * q2;
    const Quaternion num = d.conj() * b + q * (d.conj() * a + c.conj() * b) + q2 * (c.conj() * a);
    return den.inverse() * num;
}

Sp11Element lift_matrix(const Quaternion& a, const UnitQuaternion& u) {
    if (!a.is_finite() || a.norm() > kRegularRadiusMax) throw BadParameter("lift parameter outside the 0.95-ball");
    const double lambda = 1.0 / std::sqrt(1.0 - a.norm2());
    const Quaternion& uq = u.value();
    return Sp11Element(MatH2{lambda * uq.conj(), lambda * (a * uq).conj(), lambda * a, lambda});
}

CanonicalExtraction extract_canonical(const MatH2& A) {
    if (!A.is_finite() || !(membership_defect(A) <= kTolGrp)) throw NotInGroup("matrix is not in Sp(1,1)");
    // A = lift_matrix(a, u) w for a unit w, so m11 = lambda w and m10 = lambda a w.
    const double lambda = A.m11.norm();
    const Quaternion v = A.m11.inverse() * lambda;  // = w^{-1}
    Quaternion a = A.m10 * A.m11.conj() / A.m11.norm2();
    if (A.m10.norm() <= 1e-12 * lambda) a = Quaternion{};
    const UnitQuaternion u = UnitQuaternion::normalized((A.m00 * v).conj() / lambda);
    const double defect = (A.m01 * v - lambda * (a * u.value()).conj()).norm();
    return {a, u, defect};
}

RegularMoebius projection(const MatH2& A) {
    const CanonicalExtraction ex = extract_canonical(A);
    if (!(ex.consistency_defect <= kTolGrp)) throw InconsistentFiber("matrix entries do not fit a single fiber");
    return from_params(ex.a, ex.u);
}

bool fiber_equivalent(const MatH2& A, const MatH2& B) {
    const Sp11Element a(A);
    const Sp11Element b(B);
    const SubgroupClass c = classify_subgroup(mat_mul(a.matrix(), sp11_inverse(b).matrix()));
    return c == SubgroupClass::scalar_sp1 || c == SubgroupClass::z2;
}

RegularMoebius left_compose_rot(const UnitQuaternion& w, const RegularMoebius& F) {
    return from_params(F.zero(), F.rotation() * w);
}

bool in_stabilizer(const RegularMoebius& F, double tol) noexcept { return F.zero().norm() <= tol; }

Quaternion double_coset_invariant(const MatH2& A) { return inverse_orbit_at_0(projection(A)); }

Sp11Element section(const RegularMoebius& F) { return lift_matrix(F.zero(), F.rotation()); }

Quaternion preimage(const RegularMoebius& F, const Quaternion& target, PreimageOptions opts) {
    require_in_ball(target);
    using Vec4 = Eigen::Vector4d;
    const auto to_vec = [](const Quaternion& q) { return Vec4(q.w, q.x, q.y, q.z); };
    const auto to_quat = [](const Vec4& v) { return Quaternion{v[0], v[1], v[2], v[3]}; };
    const auto residual = [&](const Quaternion& q) { return eval_closed(F, q) - target; };

    Quaternion q = F.zero();
    double rnorm = residual(q).norm();
    for (int it = 0; it < opts.max_iter; ++it) {
        if (rnorm <= opts.tol) return q;
        Eigen::Matrix4d J;
        for (int k = 0; k < 4; ++k) {
            Vec4 e = Vec4::Zero();
            e[k] = opts.fd_step;
            J.col(k) = to_vec(eval_closed(F, to_quat(to_vec(q) + e)) - eval_closed(F, to_quat(to_vec(q) - e))) /
                       (2.0 * opts.fd_step);
        }
        const Vec4 step = J.partialPivLu().solve(-to_vec(residual(q)));
        // halve until the step stays inside the ball and the residual drops
        double t = 1.0;
        bool accepted = false;
        for (int halving = 0; halving < 60; ++halving, t *= 0.5) {
            const Quaternion trial = q + t * to_quat(step);
            if (!(trial.norm() < 1.0)) continue;
            const double r = residual(trial).norm();
            if (r < rnorm) {
                q = trial;
                rnorm = r;
                accepted = true;
                break;
            }
        }
        if (!accepted) break;
    }
    if (rnorm <= opts.tol) return q;
    throw NoConvergence("preimage Newton iteration did not converge");
}

CompositionCounterexample composition_counterexample(double a, const UnitQuaternion& u, const CullenProbe& probe,
                                                     int order) {
    if (!std::isfinite(a) || std::abs(a) > kCounterexampleRadiusMax)
        throw BadParameter("counterexample parameter must satisfy |a| <= 0.9");
    if (order < 1) throw BadParameter("counterexample order must be positive");
    std::vector<Quaternion> c(static_cast<std::size_t>(order) + 1);
    c[0] = -a;
    double apow = 1.0;
    for (int n = 1; n <= order; ++n) {
        c[n] = apow * (1.0 - a * a);
        apow *= a;
    }
    CompositionCounterexample out{SliceSeries(std::move(c)), u, 0.0};
    out.residual = cullen_residual(out, probe);
    return out;
}

}  // namespace qmob
