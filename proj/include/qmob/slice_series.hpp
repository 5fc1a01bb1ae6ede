#pragma once

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

#include "qmob/quaternion.hpp"

namespace qmob {

inline constexpr int kDefaultSeriesOrder = 80;

/// Truncated power series  sum_{n=0}^{N} q^n a_n  with right coefficients.
class SliceSeries {
public:
    /// The zero series of order 0.
    SliceSeries() : coeffs_(1) {}
    explicit SliceSeries(std::vector<Quaternion> coeffs);
    SliceSeries(std::initializer_list<Quaternion> coeffs) : SliceSeries(std::vector<Quaternion>(coeffs)) {}

    static SliceSeries zero(int order);
    /// [1, 0, ..., 0] of the given order.
    static SliceSeries unit(int order = 0);

    [[nodiscard]] int order() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    [[nodiscard]] std::span<const Quaternion> coeffs() const noexcept { return coeffs_; }
    [[nodiscard]] const Quaternion& operator[](std::size_t n) const { return coeffs_.at(n); }
    /// Coefficient n, or zero past the truncation order.
    [[nodiscard]] Quaternion coeff(int n) const noexcept {
        return (n >= 0 && n <= order()) ? coeffs_[static_cast<std::size_t>(n)] : Quaternion{};
    }
    /// Keeps coefficients 0..order, zero-padding if the series is shorter.
    [[nodiscard]] SliceSeries truncated(int order) const;

    friend SliceSeries operator+(const SliceSeries& f, const SliceSeries& g);
    friend SliceSeries operator*(double s, const SliceSeries& f);

private:
    std::vector<Quaternion> coeffs_;
};

/// q a + b, stored as [b, a].
SliceSeries linear_series(const Quaternion& a, const Quaternion& b);

/// Regular *-product: c_n = sum_k a_k b_{n-k}, f-coefficients on the left.
SliceSeries star_product(const SliceSeries& f, const SliceSeries& g);

/// Coefficient-wise conjugation.
SliceSeries regular_conjugate(const SliceSeries& f);

/// f * f^c.
SliceSeries symmetrization(const SliceSeries& f);

struct RegularReciprocal {
    SliceSeries series;
    /// Smallest modulus among the complex roots of f^s, when deg f^s is 1 or 2.
    std::optional<double> min_root_modulus;
    /// Set when some root of f^s lies in the closed unit disc.
    bool domain_warning = false;
};

/// f^{-*} = (1/f^s) f^c truncated at out_order. The real series 1/f^s comes
/// from recursive division about 0. Throws NotInvertibleAtZero when f^s(0)
/// vanishes. Root validation is only performed for deg f^s <= 2.
RegularReciprocal regular_reciprocal(const SliceSeries& f, int out_order = kDefaultSeriesOrder);

/// Smallest root modulus of a real polynomial of degree 1 or 2 (coefficients
/// in increasing degree); empty for degree 0 or above 2.
std::optional<double> min_root_modulus(std::span<const double> poly);

/// Horner evaluation of sum q^n a_n.
Quaternion eval(const SliceSeries& f, const Quaternion& q) noexcept;

using SliceMap = std::function<Quaternion(const Quaternion&)>;

/// Probe point x + I y on the slice C_I with central-difference step h.
struct CullenProbe {
    ImaginaryUnit I;
    double x = 0.0;
    double y = 0.0;
    double h = 1e-4;
};

inline constexpr double kProbeRadiusCap = 0.9;

/// || (d/dx + I d/dy) f(x + I y) / 2 || with central differences of step h.
/// BadParameter for a malformed probe, DomainError when the probe point
/// exceeds the 0.9 radius cap or its stencil leaves the ball.
double cullen_residual(const SliceMap& fn, const CullenProbe& probe);

}  // namespace qmob
