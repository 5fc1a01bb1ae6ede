#include "qmob/diffgeo.hpp"

#include <algorithm>
#include <cmath>

#include "qmob/errors.hpp"
#include "qmob/regular_moebius.hpp"

namespace qmob {
namespace {

void check_base(const Quaternion& a0, const UnitQuaternion& u0, const TangentPair& t) {
    if (!a0.is_finite() || a0.norm() > kDiffgeoRadiusMax) throw BadParameter("base point outside the 0.9-ball");
    if (std::abs((t.v * u0.value().conj()).w) > kTolUnit) throw BadParameter("v is not tangent to Sp(1) at u0");
}

}  // namespace

MatH2 dlift_closed(const Quaternion& a0, const UnitQuaternion& u0, const TangentPair& t) {
    check_base(a0, u0, t);
    const Quaternion& u = u0.value();
    const double m = 1.0 - a0.norm2();
    const double s = qdot(a0, t.b);
    const MatH2 D{s * u.conj() + m * t.v.conj(), s * (a0 * u).conj() + m * (t.b * u + a0 * t.v).conj(),
                  s * a0 + m * t.b, Quaternion(s)};
    return std::pow(m, -1.5) * D;
}

MatH2 dlift_fd(const Quaternion& a0, const UnitQuaternion& u0, const TangentPair& t, double h) {
    check_base(a0, u0, t);
    if (!(h > 0.0)) throw BadParameter("finite-difference step must be positive");
    if (a0.norm() + h * t.b.norm() > kRegularRadiusMax) throw DomainError("difference curve leaves the lift domain");
    const Quaternion xi = u0.value().conj() * t.v;  // in sp(1)
    const auto lift_at = [&](double s) {
        const UnitQuaternion us = UnitQuaternion::normalized(u0.value() * qexp(s * xi.imag()));
        return lift_matrix(a0 + s * t.b, us).matrix();
    };
    return (1.0 / (2.0 * h)) * (lift_at(h) - lift_at(-h));
}

double relative_deviation(const MatH2& fd, const MatH2& closed) noexcept {
    const FlatMat16 f = flatten(fd);
    const FlatMat16 c = flatten(closed);
    double dev = 0.0, scale = 0.0;
    for (std::size_t k = 0; k < 16; ++k) {
        dev = std::max(dev, std::abs(f[k] - c[k]));
        scale = std::max(scale, std::abs(c[k]));
    }
    if (scale == 0.0) return dev;
    return dev / scale;
}

std::array<TangentPair, 7> canonical_tangents(const UnitQuaternion& u0) noexcept {
    const Quaternion& u = u0.value();
    return {TangentPair{1.0, 0.0},
            TangentPair{Quaternion::i(), 0.0},
            TangentPair{Quaternion::j(), 0.0},
            TangentPair{Quaternion::k(), 0.0},
            TangentPair{0.0, u * Quaternion::i()},
            TangentPair{0.0, u * Quaternion::j()},
            TangentPair{0.0, u * Quaternion::k()}};
}

std::array<FlatMat16, 3> dpi_kernel_basis(const Quaternion& a0, const UnitQuaternion& u0) {
    const auto basis = orbit_tangent_basis(lift_matrix(a0, u0).matrix());
    return {flatten(basis[0]), flatten(basis[1]), flatten(basis[2])};
}

std::vector<double> singular_values(std::span<const FlatMat16> rows) {
    if (rows.size() > 16) throw BadParameter("at most 16 rows");
    // One-sided Jacobi on the rows: rotate row pairs until mutually orthogonal;
    // the row norms are then the singular values.
    std::vector<FlatMat16> r(rows.begin(), rows.end());
    const std::size_t m = r.size();
    const auto dot = [](const FlatMat16& x, const FlatMat16& y) {
        double s = 0.0;
        for (std::size_t k = 0; k < 16; ++k) s += x[k] * y[k];
        return s;
    };
    for (int sweep = 0; sweep < 60; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p + 1 < m; ++p) {
            for (std::size_t q = p + 1; q < m; ++q) {
                const double alpha = dot(r[p], r[p]);
                const double beta = dot(r[q], r[q]);
                const double gamma = dot(r[p], r[q]);
                if (gamma == 0.0 || std::abs(gamma) <= 1e-15 * std::sqrt(alpha * beta)) continue;
                off = std::max(off, std::abs(gamma) / std::sqrt(alpha * beta));
                const double zeta = (beta - alpha) / (2.0 * gamma);
                const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                for (std::size_t k = 0; k < 16; ++k) {
                    const double xp = r[p][k];
                    const double xq = r[q][k];
                    r[p][k] = c * xp - s * xq;
                    r[q][k] = s * xp + c * xq;
                }
            }
        }
        if (off <= 1e-15) break;
    }
    std::vector<double> sv(m);
    std::transform(r.begin(), r.end(), sv.begin(), [&](const FlatMat16& x) { return std::sqrt(dot(x, x)); });
    std::sort(sv.begin(), sv.end(), std::greater<>());
    return sv;
}

int numerical_rank(std::span<const FlatMat16> rows, double tol_rank) {
    const std::vector<double> sv = singular_values(rows);
    if (sv.empty() || sv.front() == 0.0) return 0;
    return static_cast<int>(std::count_if(sv.begin(), sv.end(), [&](double s) { return s > tol_rank * sv.front(); }));
}

namespace {

std::vector<FlatMat16> image_rows(const Quaternion& a0, const UnitQuaternion& u0) {
    std::vector<FlatMat16> rows;
    for (const TangentPair& t : canonical_tangents(u0)) rows.push_back(flatten(dlift_closed(a0, u0, t)));
    return rows;
}

}  // namespace

int image_rank(const Quaternion& a0, const UnitQuaternion& u0) { return numerical_rank(image_rows(a0, u0)); }

int transversality_rank(const Quaternion& a0, const UnitQuaternion& u0) {
    std::vector<FlatMat16> rows = image_rows(a0, u0);
    for (const FlatMat16& k : dpi_kernel_basis(a0, u0)) rows.push_back(k);
    return numerical_rank(rows);
}

}  // namespace qmob
