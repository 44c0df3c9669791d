#pragma once

namespace flownet::tol {

/// Absolute slack for exact identities (row sums, triangle inequality).
inline constexpr double kAbs = 1e-10;
/// Relative slack for comparisons between two numerical routes.
inline constexpr double kRel = 1e-8;
/// A link carries current when |y_l| exceeds this fraction of max |y|.
inline constexpr double kZeroCurrentRel = 1e-9;
/// Negative Fiedler weights above -kRealizable * max|w| are rounding noise.
inline constexpr double kRealizable = 1e-9;
/// A link is a bridge when 1 - w * omega_ij falls below this.
inline constexpr double kBridge = 1e-9;
/// RGP keeps pruning only while eps drops by more than this fraction.
inline constexpr double kImprovementRel = 1e-10;
/// RGP scores within this fraction of the best score count as tied.
inline constexpr double kScoreTieRel = 1e-10;

}  // namespace flownet::tol
