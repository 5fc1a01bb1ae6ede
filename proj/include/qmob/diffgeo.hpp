#pragma once

#include <array>
#include <span>
#include <vector>

#include "qmob/quaternion.hpp"
#include "qmob/sp_groups.hpp"

namespace qmob {

inline constexpr double kTolRank = 1e-8;
inline constexpr double kDiffgeoRadiusMax = 0.9;

/// Tangent vector (b, v) to B x Sp(1) at (a0, u0); v must satisfy Re(v conj(u0)) = 0.
struct TangentPair {
    Quaternion b;
    Quaternion v;
};

/// Closed-form differential of the lift at (a0, u0):
///   (1-|a0|^2)^{-3/2} [[ s conj(u0) + m conj(v),  s conj(a0 u0) + m conj(b u0 + a0 v) ],
///                      [ s a0 + m b,              s                                 ]]
/// with s = a0 . b (real inner product) and m = 1 - |a0|^2.
/// BadParameter when |a0| > 0.9 or v is not tangent at u0.
MatH2 dlift_closed(const Quaternion& a0, const UnitQuaternion& u0, const TangentPair& t);

/// Central difference of the lift along a0 + s b, u0 exp(s u0^{-1} v).
/// DomainError when the curve leaves the lift domain for |s| <= h.
MatH2 dlift_fd(const Quaternion& a0, const UnitQuaternion& u0, const TangentPair& t, double h);

/// Largest |fd - closed| entry divided by the largest |closed| entry.
double relative_deviation(const MatH2& fd, const MatH2& closed) noexcept;

/// The seven canonical tangents: b = 1, i, j, k then v = u0 i, u0 j, u0 k.
std::array<TangentPair, 7> canonical_tangents(const UnitQuaternion& u0) noexcept;

/// Flattened A i, A j, A k at A = lift_matrix(a0, u0).
std::array<FlatMat16, 3> dpi_kernel_basis(const Quaternion& a0, const UnitQuaternion& u0);

/// Number of singular values above tol_rank * sigma_max (one-sided Jacobi).
/// BadParameter for more than 16 rows.
int numerical_rank(std::span<const FlatMat16> rows, double tol_rank = kTolRank);

/// Singular values of the row matrix, descending.
std::vector<double> singular_values(std::span<const FlatMat16> rows);

/// Rank of the seven differential images of the canonical tangents.
int image_rank(const Quaternion& a0, const UnitQuaternion& u0);

/// Rank of the 10 x 16 stack of the seven differential images and the
/// three kernel directions; 10 certifies transversality.
int transversality_rank(const Quaternion& a0, const UnitQuaternion& u0);

}  // namespace qmob
