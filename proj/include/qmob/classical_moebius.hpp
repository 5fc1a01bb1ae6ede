#pragma once

#include <vector>

#include "qmob/quaternion.hpp"
#include "qmob/sp_groups.hpp"

namespace qmob {

inline constexpr double kTolBall = 1e-12;
inline constexpr double kTolEq = 1e-9;
inline constexpr int kDefaultEqualitySamples = 32;

/// Classical Moebius transformation F_A(q) = (q c + d)^{-1} (q a + b).
class ClassicalMoebius {
public:
    explicit ClassicalMoebius(Sp11Element A) noexcept : A_(std::move(A)) {}
    ClassicalMoebius() noexcept = default;

    [[nodiscard]] const Sp11Element& matrix() const noexcept { return A_; }
    /// Same as classical_eval.
    Quaternion operator()(const Quaternion& q) const;

private:
    Sp11Element A_;
};

/// DomainError when |q| >= 1.
Quaternion classical_eval(const ClassicalMoebius& F, const Quaternion& q);

/// Transformation of the product matrix AB, i.e. q -> G(F(q)) for F = F_A, G = F_B.
ClassicalMoebius classical_compose(const ClassicalMoebius& F, const ClassicalMoebius& G);

ClassicalMoebius classical_inverse(const ClassicalMoebius& F);

/// True iff A is diagonal (entries then necessarily unit quaternions).
bool classical_fixes_origin(const ClassicalMoebius& F, double tol = kTolGrp) noexcept;

/// Deterministic quasi-random points of the r-ball (additive recurrence in R^4).
std::vector<Quaternion> quasi_random_ball_points(int n, double radius = 0.8);

/// Maximum deviation of two maps over the quasi-random sample points.
template <class MapF, class MapG>
double max_sample_deviation(const MapF& f, const MapG& g, int n_samples = kDefaultEqualitySamples) {
    double dev = 0.0;
    for (const Quaternion& q : quasi_random_ball_points(n_samples)) {
        const double d = distance(f(q), g(q));
        if (d > dev) dev = d;
    }
    return dev;
}

/// Map equality decided on n_samples points of the 0.8-ball at tol_eq.
/// BadParameter when n_samples < 8.
bool pointwise_equal(const ClassicalMoebius& F, const ClassicalMoebius& G,
                     int n_samples = kDefaultEqualitySamples, double tol_eq = kTolEq);

/// F_A(0) = d^{-1} b, the image of the left coset (Sp(1) x Sp(1)) A.
Quaternion classical_quotient_point(const Sp11Element& A);

/// F^{-1}(0), i.e. F_{A^{-1}}(0).
Quaternion classical_inverse_orbit(const ClassicalMoebius& F);

}  // namespace qmob
