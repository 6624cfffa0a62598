#pragma once

#include <algorithm>
#include <cmath>

namespace gnmetric {

namespace tol {
// Absolute/relative slack for floating comparisons in invariant checks.
inline constexpr double kAbs = 1e-9;
inline constexpr double kRel = 1e-12;
// Strict inequalities pass only when the value exceeds this threshold.
inline constexpr double kStrict = 1e-12;
}  // namespace tol

inline double fp_slack(double a, double b,
                       double abs_tol = tol::kAbs, double rel_tol = tol::kRel) {
  return abs_tol + rel_tol * std::max(std::abs(a), std::abs(b));
}

/// a == b up to absolute+relative tolerance.
inline bool approx_eq(double a, double b,
                      double abs_tol = tol::kAbs, double rel_tol = tol::kRel) {
  return std::abs(a - b) <= fp_slack(a, b, abs_tol, rel_tol);
}

/// lhs <= rhs up to absolute+relative tolerance.
inline bool approx_le(double lhs, double rhs,
                      double abs_tol = tol::kAbs, double rel_tol = tol::kRel) {
  return lhs <= rhs + fp_slack(lhs, rhs, abs_tol, rel_tol);
}

/// Strictly positive beyond rounding noise.
inline bool strictly_positive(double v) { return v > tol::kStrict; }

}  // namespace gnmetric
