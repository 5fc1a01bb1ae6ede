#include "qmob/sp_groups.hpp"

#include <cmath>

#include "qmob/errors.hpp"

namespace qmob {

MatH2 mat_mul(const MatH2& A, const MatH2& B) noexcept {
    return {A.m00 * B.m00 + A.m01 * B.m10, A.m00 * B.m01 + A.m01 * B.m11,
            A.m10 * B.m00 + A.m11 * B.m10, A.m10 * B.m01 + A.m11 * B.m11};
}

MatH2 adjoint(const MatH2& A) noexcept { return {A.m00.conj(), A.m10.conj(), A.m01.conj(), A.m11.conj()}; }

MatH2 operator+(const MatH2& A, const MatH2& B) noexcept {
    return {A.m00 + B.m00, A.m01 + B.m01, A.m10 + B.m10, A.m11 + B.m11};
}

MatH2 operator-(const MatH2& A, const MatH2& B) noexcept {
    return {A.m00 - B.m00, A.m01 - B.m01, A.m10 - B.m10, A.m11 - B.m11};
}

MatH2 operator*(double s, const MatH2& A) noexcept { return {s * A.m00, s * A.m01, s * A.m10, s * A.m11}; }

MatH2 left_scalar(const Quaternion& q, const MatH2& A) noexcept {
    return {q * A.m00, q * A.m01, q * A.m10, q * A.m11};
}

MatH2 right_scalar(const MatH2& A, const Quaternion& q) noexcept {
    return {A.m00 * q, A.m01 * q, A.m10 * q, A.m11 * q};
}

FlatMat16 flatten(const MatH2& A) noexcept {
    FlatMat16 v{};
    const Quaternion* entries[4] = {&A.m00, &A.m01, &A.m10, &A.m11};
    for (int e = 0; e < 4; ++e) {
        const auto c = entries[e]->components();
        for (int k = 0; k < 4; ++k) v[4 * e + k] = c[k];
    }
    return v;
}

MatH2 unflatten(const FlatMat16& v) noexcept {
    const auto q = [&](int e) { return Quaternion{v[4 * e], v[4 * e + 1], v[4 * e + 2], v[4 * e + 3]}; };
    return {q(0), q(1), q(2), q(3)};
}

double frobenius(const MatH2& A) noexcept {
    return std::sqrt(A.m00.norm2() + A.m01.norm2() + A.m10.norm2() + A.m11.norm2());
}

double membership_defect(const MatH2& A) noexcept {
    const MatH2 I11 = MatH2::diag(1.0, -1.0);
    return frobenius(mat_mul(adjoint(A), mat_mul(I11, A)) - I11);
}

Sp11Element::Sp11Element(const MatH2& A) : A_(A) {
    if (!A.is_finite() || !(membership_defect(A) <= kTolGrp)) throw NotInGroup("matrix is not in Sp(1,1)");
}

Sp11Element sp11_inverse(const Sp11Element& A) {
    const MatH2& m = A.matrix();
    // I11 A^* I11 flips the signs of the off-diagonal entries of A^*
    return Sp11Element(MatH2{m.m00.conj(), -m.m10.conj(), -m.m01.conj(), m.m11.conj()});
}

Sp11Element sp11_inverse(const MatH2& A) { return sp11_inverse(Sp11Element(A)); }

Sp11Element boost(const Quaternion& a) {
    if (!a.is_finite() || a.norm() > kBoostRadiusMax) throw BadParameter("boost parameter outside the 0.95-ball");
    const double lambda = 1.0 / std::sqrt(1.0 - a.norm2());
    return Sp11Element(MatH2{lambda, lambda * a.conj(), lambda * a, lambda});
}

Sp11Element random_sp11(CounterRng& rng) {
    const Quaternion u = random_unit(rng).value();
    const Quaternion v = random_unit(rng).value();
    const Quaternion a = random_quat(rng, SampleSpec::ball(0.9));
    return Sp11Element(mat_mul(MatH2::diag(u, v), boost(a).matrix()));
}

Sp11Element random_sp11(std::uint64_t seed, std::uint64_t stream) {
    CounterRng rng(seed, stream);
    return random_sp11(rng);
}

std::string_view to_string(SubgroupClass c) noexcept {
    switch (c) {
        case SubgroupClass::scalar_sp1: return "scalar_sp1";
        case SubgroupClass::diag_sp1xsp1: return "diag_sp1xsp1";
        case SubgroupClass::z2: return "z2";
        case SubgroupClass::sp1_left: return "sp1_left";
        case SubgroupClass::none: return "none";
    }
    return "none";
}

SubgroupClass classify_subgroup(const MatH2& A, double tol) noexcept {
    if (A.m01.norm() > tol || A.m10.norm() > tol) return SubgroupClass::none;
    if (std::abs(A.m00.norm() - 1.0) > tol || std::abs(A.m11.norm() - 1.0) > tol) return SubgroupClass::none;
    const Quaternion one(1.0);
    if ((A.m00 - one).norm() <= tol && (A.m11 - one).norm() <= tol) return SubgroupClass::z2;
    if ((A.m00 + one).norm() <= tol && (A.m11 + one).norm() <= tol) return SubgroupClass::z2;
    if ((A.m00 - A.m11).norm() <= tol) return SubgroupClass::scalar_sp1;
    if ((A.m11 - one).norm() <= tol) return SubgroupClass::sp1_left;
    return SubgroupClass::diag_sp1xsp1;
}

std::array<MatH2, 3> orbit_tangent_basis(const MatH2& A) noexcept {
    return {right_scalar(A, Quaternion::i()), right_scalar(A, Quaternion::j()), right_scalar(A, Quaternion::k())};
}

}  // namespace qmob
