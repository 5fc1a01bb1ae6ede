#include "qmob/quaternion.hpp"

#include <ostream>

#include "qmob/errors.hpp"

namespace qmob {

Quaternion Quaternion::inverse() const {
    const double n2 = norm2();
    if (!(std::sqrt(n2) > kTolZero)) throw ZeroDivision("quaternion inverse of zero");
    return conj() / n2;
}

ConjInvNorm qconj_inv_norm(const Quaternion& q) {
    return {q.conj(), q.inverse(), q.norm()};
}

Quaternion qexp(const Quaternion& w) noexcept {
    const Quaternion v = w.imag();
    const double theta = v.norm();
    const double scale = std::exp(w.w);
    if (theta == 0.0) return Quaternion(scale);
    // sin(theta)/theta stays accurate for tiny theta as long as theta != 0
    const double s = std::sin(theta) / theta;
    return scale * (Quaternion(std::cos(theta)) + s * v);
}

std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
    return os << '[' << q.w << ", " << q.x << ", " << q.y << ", " << q.z << ']';
}

UnitQuaternion::UnitQuaternion(const Quaternion& q) : q_(q) {
    if (!q.is_finite() || std::abs(q.norm() - 1.0) > kTolUnit)
        throw BadParameter("not a unit quaternion");
}

UnitQuaternion UnitQuaternion::normalized(const Quaternion& q) {
    const double n = q.norm();
    if (!(n > kTolZero) || !q.is_finite()) throw BadParameter("cannot normalize a zero quaternion");
    return UnitQuaternion(q / n, Unchecked{});
}

ImaginaryUnit::ImaginaryUnit(const Quaternion& q) : q_(q) {
    if (!q.is_finite() || std::abs(q.w) > kTolUnit || std::abs(q.norm() - 1.0) > kTolUnit)
        throw BadParameter("not an imaginary unit");
}

ImaginaryUnit ImaginaryUnit::normalized(const Quaternion& q) {
    const Quaternion v = q.imag();
    const double n = v.norm();
    if (!(n > kTolZero)) throw BadParameter("cannot normalize a zero imaginary part");
    return ImaginaryUnit(v / n);
}

SliceCoords to_slice(const Quaternion& q) {
    const Quaternion v = q.imag();
    const double y = v.norm();
    if (y == 0.0) return {q.w, 0.0, ImaginaryUnit{}};
    return {q.w, y, ImaginaryUnit(v / y)};
}

}  // namespace qmob
