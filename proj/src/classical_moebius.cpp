#include "qmob/classical_moebius.hpp"

#include <cmath>

#include "qmob/errors.hpp"

namespace qmob {

Quaternion ClassicalMoebius::operator()(const Quaternion& q) const { return classical_eval(*this, q); }

Quaternion classical_eval(const ClassicalMoebius& F, const Quaternion& q) {
    if (!(q.norm() < 1.0)) throw DomainError("classical Moebius evaluated outside the unit ball");
    const MatH2& A = F.matrix().matrix();
    return (q * A.m01 + A.m11).inverse() * (q * A.m00 + A.m10);
}

ClassicalMoebius classical_compose(const ClassicalMoebius& F, const ClassicalMoebius& G) {
    return ClassicalMoebius(F.matrix() * G.matrix());
}

ClassicalMoebius classical_inverse(const ClassicalMoebius& F) { return ClassicalMoebius(sp11_inverse(F.matrix())); }

bool classical_fixes_origin(const ClassicalMoebius& F, double tol) noexcept {
    const MatH2& A = F.matrix().matrix();
    return A.m01.norm() <= tol && A.m10.norm() <= tol;
}

std::vector<Quaternion> quasi_random_ball_points(int n, double radius) {
    // Kronecker sequence with the generalized golden ratio for d = 4
    // (root of x^5 = x + 1), rejected into the unit 4-ball and scaled.
    const double phi = 1.1673039782614187;
    const double alpha[4] = {1.0 / phi, 1.0 / (phi * phi), 1.0 / (phi * phi * phi), 1.0 / (phi * phi * phi * phi)};
    std::vector<Quaternion> pts;
    pts.reserve(static_cast<std::size_t>(n));
    for (long k = 1; static_cast<int>(pts.size()) < n; ++k) {
        double c[4];
        for (int d = 0; d < 4; ++d) {
            const double t = 0.5 + alpha[d] * static_cast<double>(k);
            c[d] = 2.0 * (t - std::floor(t)) - 1.0;
        }
        const Quaternion p{c[0], c[1], c[2], c[3]};
        if (p.norm() < 1.0) pts.push_back(radius * p);
    }
    return pts;
}

bool pointwise_equal(const ClassicalMoebius& F, const ClassicalMoebius& G, int n_samples, double tol_eq) {
    if (n_samples < 8) throw BadParameter("map equality needs at least 8 samples");
    return max_sample_deviation(F, G, n_samples) <= tol_eq;
}

Quaternion classical_quotient_point(const Sp11Element& A) {
    return classical_eval(ClassicalMoebius(A), Quaternion{});
}

Quaternion classical_inverse_orbit(const ClassicalMoebius& F) {
    return classical_eval(classical_inverse(F), Quaternion{});
}

}  // namespace qmob
