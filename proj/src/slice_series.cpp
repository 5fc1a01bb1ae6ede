#include "qmob/slice_series.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "qmob/errors.hpp"

namespace qmob {

SliceSeries::SliceSeries(std::vector<Quaternion> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw BadParameter("series needs at least one coefficient");
    for (const auto& c : coeffs_)
        if (!c.is_finite()) throw BadParameter("series coefficient is not finite");
}

SliceSeries SliceSeries::zero(int order) {
    if (order < 0) throw BadParameter("negative series order");
    return SliceSeries(std::vector<Quaternion>(static_cast<std::size_t>(order) + 1));
}

SliceSeries SliceSeries::unit(int order) {
    SliceSeries s = zero(order);
    s.coeffs_[0] = Quaternion(1.0);
    return s;
}

SliceSeries SliceSeries::truncated(int order) const {
    SliceSeries s = zero(order);
    const int n = std::min(order, this->order());
    std::copy_n(coeffs_.begin(), n + 1, s.coeffs_.begin());
    return s;
}

SliceSeries operator+(const SliceSeries& f, const SliceSeries& g) {
    SliceSeries r = SliceSeries::zero(std::max(f.order(), g.order()));
    for (int n = 0; n <= r.order(); ++n) r.coeffs_[static_cast<std::size_t>(n)] = f.coeff(n) + g.coeff(n);
    return r;
}

SliceSeries operator*(double s, const SliceSeries& f) {
    SliceSeries r = f;
    for (auto& c : r.coeffs_) c *= s;
    return r;
}

SliceSeries linear_series(const Quaternion& a, const Quaternion& b) { return SliceSeries{b, a}; }

SliceSeries star_product(const SliceSeries& f, const SliceSeries& g) {
    const auto fa = f.coeffs();
    const auto gb = g.coeffs();
    std::vector<Quaternion> c(fa.size() + gb.size() - 1);
    for (std::size_t k = 0; k < fa.size(); ++k) {
        const Quaternion& ak = fa[k];
        for (std::size_t m = 0; m < gb.size(); ++m) c[k + m] += ak * gb[m];
    }
    return SliceSeries(std::move(c));
}

SliceSeries regular_conjugate(const SliceSeries& f) {
    std::vector<Quaternion> c(f.coeffs().begin(), f.coeffs().end());
    for (auto& q : c) q = q.conj();
    return SliceSeries(std::move(c));
}

SliceSeries symmetrization(const SliceSeries& f) { return star_product(f, regular_conjugate(f)); }

std::optional<double> min_root_modulus(std::span<const double> poly) {
    // trim negligible leading coefficients relative to the largest one
    double scale = 0.0;
    for (double c : poly) scale = std::max(scale, std::abs(c));
    std::size_t deg = poly.size();
    while (deg > 0 && std::abs(poly[deg - 1]) <= 1e-15 * scale) --deg;
    if (deg == 0) return std::nullopt;
    --deg;
    if (deg == 1) return std::abs(poly[0] / poly[1]);
    if (deg != 2) return std::nullopt;

    const double c0 = poly[0], c1 = poly[1], c2 = poly[2];
    const double disc = c1 * c1 - 4.0 * c2 * c0;
    if (disc < 0.0) return std::sqrt(c0 / c2);  // conjugate pair, |r|^2 = c0/c2
    // stable real roots
    const double qv = -0.5 * (c1 + std::copysign(std::sqrt(disc), c1));
    double m = std::numeric_limits<double>::infinity();
    if (qv != 0.0) {
        m = std::min(m, std::abs(qv / c2));
        m = std::min(m, std::abs(c0 / qv));
    } else {
        m = 0.0;
    }
    return m;
}

RegularReciprocal regular_reciprocal(const SliceSeries& f, int out_order) {
    if (out_order < 0) throw BadParameter("negative output order");
    const SliceSeries fs = symmetrization(f);
    // f^s has real coefficients up to rounding; keep the real parts
    std::vector<double> s(fs.coeffs().size());
    std::transform(fs.coeffs().begin(), fs.coeffs().end(), s.begin(), [](const Quaternion& q) { return q.w; });

    if (!(std::abs(s[0]) > kTolZero)) throw NotInvertibleAtZero("f^s vanishes at the origin");

    RegularReciprocal out;
    out.min_root_modulus = min_root_modulus(s);
    out.domain_warning = out.min_root_modulus && *out.min_root_modulus <= 1.0;

    // real power series r = 1 / f^s:  r_n = -(sum_{k=1}^{min(n,deg)} s_k r_{n-k}) / s_0
    const int deg = static_cast<int>(s.size()) - 1;
    std::vector<double> r(static_cast<std::size_t>(out_order) + 1);
    r[0] = 1.0 / s[0];
    for (int n = 1; n <= out_order; ++n) {
        double acc = 0.0;
        for (int k = 1; k <= std::min(n, deg); ++k) acc += s[k] * r[n - k];
        r[n] = -acc / s[0];
    }

    const SliceSeries fc = regular_conjugate(f);
    std::vector<Quaternion> c(static_cast<std::size_t>(out_order) + 1);
    for (int n = 0; n <= out_order; ++n) {
        Quaternion acc;
        for (int m = 0; m <= std::min(n, fc.order()); ++m) acc += r[n - m] * fc.coeff(m);
        c[n] = acc;
    }
    out.series = SliceSeries(std::move(c));
    return out;
}

Quaternion eval(const SliceSeries& f, const Quaternion& q) noexcept {
    const auto a = f.coeffs();
    Quaternion acc = a.back();
    for (std::size_t n = a.size() - 1; n-- > 0;) acc = q * acc + a[n];
    return acc;
}

double cullen_residual(const SliceMap& fn, const CullenProbe& probe) {
    const double h = probe.h;
    if (!(h > 0.0 && h < 1e-2)) throw BadParameter("probe step must lie in (0, 1e-2)");
    if (!(probe.x * probe.x + probe.y * probe.y < 1.0)) throw BadParameter("probe point outside the ball");
    const Quaternion I = probe.I.value();
    const double r = std::hypot(probe.x, probe.y);
    if (r > kProbeRadiusCap) throw DomainError("probe point exceeds the 0.9 radius cap");
    if (r + h >= 1.0) throw DomainError("probe stencil leaves the ball");

    const auto at = [&](double x, double y) { return fn(slice_point(probe.I, x, y)); };
    const Quaternion dx = (at(probe.x + h, probe.y) - at(probe.x - h, probe.y)) / (2.0 * h);
    const Quaternion dy = (at(probe.x, probe.y + h) - at(probe.x, probe.y - h)) / (2.0 * h);
    return ((dx + I * dy) / 2.0).norm();
}

}  // namespace qmob
