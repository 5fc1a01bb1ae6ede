#pragma once

#include "qmob/quaternion.hpp"
#include "qmob/slice_series.hpp"
#include "qmob/sp_groups.hpp"

namespace qmob {

inline constexpr double kRegularRadiusMax = 0.95;
inline constexpr double kSeriesEvalRadius = 0.8;
inline constexpr int kMinSeriesEvalOrder = 40;

/// Slice regular Moebius transformation in canonical form
///   F(q) = (1 - q conj(a))^{-*} * (q - a) u,   |a| < 1, |u| = 1.
/// The pair (a, u) is a global chart, so it is the stored representation.
class RegularMoebius {
public:
    /// Identity map.
    RegularMoebius() noexcept = default;

    [[nodiscard]] const Quaternion& zero() const noexcept { return a_; }
    [[nodiscard]] const UnitQuaternion& rotation() const noexcept { return u_; }

    /// Closed-form evaluation; see eval_closed.
    Quaternion operator()(const Quaternion& q) const;

private:
    RegularMoebius(const Quaternion& a, const UnitQuaternion& u) noexcept : a_(a), u_(u) {}
    friend RegularMoebius from_params(const Quaternion& a, const UnitQuaternion& u);

    Quaternion a_;
    UnitQuaternion u_;
};

/// BadParameter when |a| > 0.95.
RegularMoebius from_params(const Quaternion& a, const UnitQuaternion& u);

/// R_u : q -> q u.
RegularMoebius rot(const UnitQuaternion& u);

/// (1 - 2 Re(a) q + q^2 |a|^2)^{-1} (q (a^2 + 1) - (q^2 + 1) a) u.
/// DomainError when |q| >= 1.
Quaternion eval_closed(const RegularMoebius& F, const Quaternion& q);

/// Series of (1 - q conj(a))^{-*} * (q - a) u truncated at `order`.
SliceSeries regular_series(const RegularMoebius& F, int order = kDefaultSeriesOrder);

/// Series of (q c + d)^{-*} * (q a + b) for an arbitrary Sp(1,1) matrix, built
/// literally from linear_series, regular_reciprocal and star_product.
SliceSeries regular_series(const MatH2& A, int order = kDefaultSeriesOrder);

/// Truncated-series value. DomainError outside the 0.8-ball, BadParameter for order < 40.
Quaternion eval_series(const RegularMoebius& F, const Quaternion& q, int order = kDefaultSeriesOrder);

/// Closed form of (q c + d)^{-*} * (q a + b) for any matrix A of Sp(1,1):
///   (|d|^2 + 2 Re(d conj c) q + |c|^2 q^2)^{-1} (conj(d) b + q (conj(d) a + conj(c) b) + q^2 conj(c) a).
/// DomainError when |q| >= 1.
Quaternion regular_eval_matrix(const MatH2& A, const Quaternion& q);

/// The lift (1 - |a|^2)^{-1/2} [[conj u, conj(a u)], [a, 1]] into Sp(1,1).
Sp11Element lift_matrix(const Quaternion& a, const UnitQuaternion& u);

/// Canonical data read off a matrix A in the fiber lift_matrix(a, u) Sp(1).
struct CanonicalExtraction {
    Quaternion a;
    UnitQuaternion u;
    /// || m01 v - lambda conj(a u) || with v = m11^{-1} lambda.
    double consistency_defect = 0.0;
};

/// Closed-form extraction without validation of the result.
/// NotInGroup if A fails membership.
CanonicalExtraction extract_canonical(const MatH2& A);

/// Bundle projection A -> F_{A^{-1}} in canonical form.
/// NotInGroup, InconsistentFiber when the consistency defect exceeds kTolGrp.
RegularMoebius projection(const MatH2& A);

/// F_A = F_B, decided as A B^{-1} in Sp(1) I_2.
bool fiber_equivalent(const MatH2& A, const MatH2& B);

/// R_w o F.
RegularMoebius left_compose_rot(const UnitQuaternion& w, const RegularMoebius& F);

/// F fixes the origin, i.e. |a| <= tol.
bool in_stabilizer(const RegularMoebius& F, double tol = 1e-12) noexcept;

/// F^{-1}(0), the unique zero a of F.
inline Quaternion inverse_orbit_at_0(const RegularMoebius& F) noexcept { return F.zero(); }

/// Image of the double coset (Sp(1) x {1}) A Sp(1) I_2 in the ball.
Quaternion double_coset_invariant(const MatH2& A);

/// Global section of the bundle: lift_matrix(a, u).
Sp11Element section(const RegularMoebius& F);

struct PreimageOptions {
    double tol = 1e-13;
    int max_iter = 100;
    double fd_step = 1e-7;
};

/// Solves F(q) = target by damped Newton on R^4 starting at q = a, with a
/// central-difference Jacobian. DomainError for |target| >= 1, NoConvergence
/// after max_iter iterations.
Quaternion preimage(const RegularMoebius& F, const Quaternion& target, PreimageOptions opts = {});

inline constexpr int kCounterexampleOrder = 256;
inline constexpr double kCounterexampleRadiusMax = 0.9;

/// The composition f o g of f(q) = (1 - q a)^{-1} (q - a), a real, with g = R_u.
struct CompositionCounterexample {
    /// Real coefficients in the variable p = q u:  -a + sum_{n>=1} p^n a^{n-1} (1 - a^2).
    SliceSeries outer;
    UnitQuaternion u;
    /// Cullen residual of the composed map at the requested probe.
    double residual = 0.0;

    Quaternion operator()(const Quaternion& q) const { return eval(outer, q * u.value()); }
};

/// BadParameter when |a| > 0.9.
CompositionCounterexample composition_counterexample(double a, const UnitQuaternion& u, const CullenProbe& probe,
                                                     int order = kCounterexampleOrder);

}  // namespace qmob
