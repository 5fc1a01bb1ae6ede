#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <iosfwd>

namespace qmob {

inline constexpr double kTolUnit = 1e-10;
inline constexpr double kTolZero = 1e-300;

/// Quaternion q = w + x i + y j + z k in double precision.
struct Quaternion {
    double w = 0.0;
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr Quaternion() noexcept = default;
    constexpr Quaternion(double w_) noexcept : w(w_) {}  // NOLINT: reals embed implicitly
    constexpr Quaternion(double w_, double x_, double y_, double z_) noexcept
        : w(w_), x(x_), y(y_), z(z_) {}

    static constexpr Quaternion i() noexcept { return {0, 1, 0, 0}; }
    static constexpr Quaternion j() noexcept { return {0, 0, 1, 0}; }
    static constexpr Quaternion k() noexcept { return {0, 0, 0, 1}; }

    [[nodiscard]] constexpr double real() const noexcept { return w; }
    [[nodiscard]] constexpr Quaternion imag() const noexcept { return {0, x, y, z}; }
    [[nodiscard]] constexpr Quaternion conj() const noexcept { return {w, -x, -y, -z}; }
    [[nodiscard]] constexpr double norm2() const noexcept { return w * w + x * x + y * y + z * z; }
    [[nodiscard]] double norm() const noexcept { return std::hypot(std::hypot(w, x), std::hypot(y, z)); }
    [[nodiscard]] bool is_finite() const noexcept {
        return std::isfinite(w) && std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
    }
    /// Multiplicative inverse; throws ZeroDivision when |q| <= kTolZero.
    [[nodiscard]] Quaternion inverse() const;

    [[nodiscard]] constexpr std::array<double, 4> components() const noexcept { return {w, x, y, z}; }

    constexpr Quaternion& operator+=(const Quaternion& o) noexcept {
        w += o.w; x += o.x; y += o.y; z += o.z;
        return *this;
    }
    constexpr Quaternion& operator-=(const Quaternion& o) noexcept {
        w -= o.w; x -= o.x; y -= o.y; z -= o.z;
        return *this;
    }
    constexpr Quaternion& operator*=(double s) noexcept {
        w *= s; x *= s; y *= s; z *= s;
        return *this;
    }
    constexpr Quaternion& operator/=(double s) noexcept {
        w /= s; x /= s; y /= s; z /= s;
        return *this;
    }

    friend constexpr bool operator==(const Quaternion&, const Quaternion&) noexcept = default;
};

constexpr Quaternion operator-(const Quaternion& q) noexcept { return {-q.w, -q.x, -q.y, -q.z}; }
constexpr Quaternion operator+(Quaternion p, const Quaternion& q) noexcept { return p += q; }
constexpr Quaternion operator-(Quaternion p, const Quaternion& q) noexcept { return p -= q; }
constexpr Quaternion operator*(Quaternion p, double s) noexcept { return p *= s; }
constexpr Quaternion operator*(double s, Quaternion p) noexcept { return p *= s; }
constexpr Quaternion operator/(Quaternion p, double s) noexcept { return p /= s; }

/// Hamilton product.
constexpr Quaternion operator*(const Quaternion& p, const Quaternion& q) noexcept {
    return {p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
            p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
            p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
            p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w};
}

constexpr Quaternion qmul(const Quaternion& p, const Quaternion& q) noexcept { return p * q; }

/// Euclidean inner product on R^4.
constexpr double qdot(const Quaternion& p, const Quaternion& q) noexcept {
    return p.w * q.w + p.x * q.x + p.y * q.y + p.z * q.z;
}

inline double distance(const Quaternion& p, const Quaternion& q) noexcept { return (p - q).norm(); }

struct ConjInvNorm {
    Quaternion conj;
    Quaternion inv;
    double norm;
};

/// Conjugate, inverse and norm in one call; throws ZeroDivision when |q| <= kTolZero.
ConjInvNorm qconj_inv_norm(const Quaternion& q);

/// exp(w) = e^{Re w} (cos|Im w| + (Im w / |Im w|) sin|Im w|).
Quaternion qexp(const Quaternion& w) noexcept;

std::ostream& operator<<(std::ostream& os, const Quaternion& q);

/// Element of Sp(1). Construction checks ||q| - 1| <= kTolUnit.
class UnitQuaternion {
public:
    explicit UnitQuaternion(const Quaternion& q);
    UnitQuaternion() noexcept : q_(1.0) {}

    /// Projects a nonzero quaternion onto the unit sphere.
    static UnitQuaternion normalized(const Quaternion& q);

    [[nodiscard]] const Quaternion& value() const noexcept { return q_; }
    operator const Quaternion&() const noexcept { return q_; }  // NOLINT
    [[nodiscard]] UnitQuaternion inverse() const noexcept { return UnitQuaternion(q_.conj(), Unchecked{}); }

    friend UnitQuaternion operator*(const UnitQuaternion& a, const UnitQuaternion& b) {
        return UnitQuaternion::normalized(a.q_ * b.q_);
    }

private:
    struct Unchecked {};
    UnitQuaternion(const Quaternion& q, Unchecked) noexcept : q_(q) {}
    Quaternion q_;
};

/// Element of the sphere of imaginary units (I^2 = -1).
class ImaginaryUnit {
public:
    explicit ImaginaryUnit(const Quaternion& q);
    ImaginaryUnit() noexcept : q_(Quaternion::i()) {}

    static ImaginaryUnit normalized(const Quaternion& q);

    [[nodiscard]] const Quaternion& value() const noexcept { return q_; }
    operator const Quaternion&() const noexcept { return q_; }  // NOLINT

private:
    Quaternion q_;
};

/// q = x + I y with y >= 0.
struct SliceCoords {
    double x = 0.0;
    double y = 0.0;
    ImaginaryUnit I;

    [[nodiscard]] Quaternion reconstruct() const noexcept { return Quaternion(x) + y * I.value(); }
};

/// Slice decomposition. Real input gets I = i.
SliceCoords to_slice(const Quaternion& q);

inline Quaternion slice_point(const ImaginaryUnit& I, double x, double y) noexcept {
    return Quaternion(x) + y * I.value();
}

}  // namespace qmob
