#pragma once

#include <array>
#include <cstdint>
#include <string_view>

#include "qmob/quaternion.hpp"
#include "qmob/random.hpp"

namespace qmob {

inline constexpr double kTolGrp = 1e-9;
inline constexpr double kBoostRadiusMax = 0.95;

/// 2x2 quaternionic matrix, row-major. Against the displayed matrix
/// [[a, c], [b, d]] of a Moebius transformation: m00 = a, m01 = c, m10 = b, m11 = d.
struct MatH2 {
    Quaternion m00, m01, m10, m11;

    static constexpr MatH2 identity() noexcept { return {1.0, 0.0, 0.0, 1.0}; }
    static constexpr MatH2 zero() noexcept { return {0.0, 0.0, 0.0, 0.0}; }
    static constexpr MatH2 diag(const Quaternion& u, const Quaternion& v) noexcept { return {u, 0.0, 0.0, v}; }

    [[nodiscard]] bool is_finite() const noexcept {
        return m00.is_finite() && m01.is_finite() && m10.is_finite() && m11.is_finite();
    }
    friend constexpr bool operator==(const MatH2&, const MatH2&) noexcept = default;
};

MatH2 mat_mul(const MatH2& A, const MatH2& B) noexcept;
/// Conjugate transpose.
MatH2 adjoint(const MatH2& A) noexcept;
MatH2 operator+(const MatH2& A, const MatH2& B) noexcept;
MatH2 operator-(const MatH2& A, const MatH2& B) noexcept;
MatH2 operator*(double s, const MatH2& A) noexcept;
inline MatH2 operator*(const MatH2& A, const MatH2& B) noexcept { return mat_mul(A, B); }
/// Scalar matrix q I_2 on the left / right.
MatH2 left_scalar(const Quaternion& q, const MatH2& A) noexcept;
MatH2 right_scalar(const MatH2& A, const Quaternion& q) noexcept;

/// Row-major entries, each quaternion as (w, x, y, z).
using FlatMat16 = std::array<double, 16>;
FlatMat16 flatten(const MatH2& A) noexcept;
MatH2 unflatten(const FlatMat16& v) noexcept;
/// Frobenius norm over the 16 real components.
double frobenius(const MatH2& A) noexcept;

/// || A^* I_{1,1} A - I_{1,1} ||_F.
double membership_defect(const MatH2& A) noexcept;

/// Element of Sp(1,1): membership_defect <= kTolGrp, checked on construction.
class Sp11Element {
public:
    /// Throws NotInGroup.
    explicit Sp11Element(const MatH2& A);
    Sp11Element() noexcept : A_(MatH2::identity()) {}

    [[nodiscard]] const MatH2& matrix() const noexcept { return A_; }
    operator const MatH2&() const noexcept { return A_; }  // NOLINT

    friend Sp11Element operator*(const Sp11Element& A, const Sp11Element& B) {
        return Sp11Element(mat_mul(A.A_, B.A_));
    }

private:
    MatH2 A_;
};

/// I_{1,1} A^* I_{1,1}.
Sp11Element sp11_inverse(const Sp11Element& A);
/// Overload that validates a raw matrix first (NotInGroup).
Sp11Element sp11_inverse(const MatH2& A);

/// (1 - |a|^2)^{-1/2} [[1, conj(a)], [a, 1]]; BadParameter when |a| > 0.95.
Sp11Element boost(const Quaternion& a);

/// diag(u, v) * boost(a) with u, v uniform on Sp(1) and a uniform in the 0.9-ball.
Sp11Element random_sp11(CounterRng& rng);
Sp11Element random_sp11(std::uint64_t seed, std::uint64_t stream = 0);

enum class SubgroupClass { scalar_sp1, diag_sp1xsp1, z2, sp1_left, none };

std::string_view to_string(SubgroupClass c) noexcept;

/// Finest subgroup containing A: z2 (= +-I_2), scalar_sp1 (u I_2),
/// sp1_left (diag(u, 1)), diag_sp1xsp1 (diag(u, v)), or none.
SubgroupClass classify_subgroup(const MatH2& A, double tol = kTolGrp) noexcept;

/// A i, A j, A k: tangent directions of the orbit A Sp(1).
std::array<MatH2, 3> orbit_tangent_basis(const MatH2& A) noexcept;

}  // namespace qmob
