#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gnmetric/metric.hpp"
#include "gnmetric/point.hpp"

namespace gnmetric {

/// A finite prefix of a sequence in the carrier. All diagnostics are
/// relative to a prefix, a tail start, and a tolerance; nothing asymptotic
/// is ever claimed.
struct SequencePrefix {
  std::vector<Point> points;  // length >= 2
};

struct ConvergenceReport {
  /// sup over the tail of G(x_m, ..., x_m, limit).
  double sup_iterate_repeated = 0.0;
  /// sup over the tail of G(x_m, limit, ..., limit).
  double sup_limit_repeated = 0.0;
  std::size_t tail_start = 0;
  double tol = 0.0;
  bool converged = false;  // both sups fell below tol on this prefix
  /// Pointwise on the tail: G(x_m,limit,...,limit) <= (n-1) * G(x_m,...,x_m,limit).
  bool cross_bound_ok = true;
  /// Pointwise on the tail: d_G(x_m, limit) <= n * G(x_m,...,x_m,limit).
  bool dg_bound_ok = true;
};

/// Evaluate both convergence criteria over the tail [tail_start, L) against
/// a caller-supplied candidate limit.
ConvergenceReport convergence_report(const GnMetric& g, const SequencePrefix& s,
                                     const Point& limit, std::size_t tail_start, double tol);

struct CauchyReport {
  /// sup over n1,n2 >= start of G(x_n1, x_n2, ..., x_n2).
  double two_index_sup = 0.0;
  /// sup of G over full m-index combinations from the tail.
  double full_sup = 0.0;
  /// full_sup <= (m-1) * two_index_sup.
  bool amplification_ok = true;
  /// false when the combination count exceeded the cap and full_sup was
  /// estimated from random subsamples instead.
  bool full_exhaustive = true;
  std::size_t combinations_checked = 0;
  std::size_t start_index = 0;
};

inline constexpr std::size_t kCauchyExhaustiveCap = 100000;
inline constexpr std::size_t kCauchySubsampleDraws = 10000;

/// Two-index tail sup is always exact; the full m-index sup is exhaustive
/// when the number of combinations is within `exhaustive_cap`, otherwise
/// subsampled (flagged in the report).
CauchyReport cauchy_report(const GnMetric& g, const SequencePrefix& s, std::size_t start,
                           std::size_t exhaustive_cap = kCauchyExhaustiveCap);

struct ContinuityProbeResult {
  bool holds = true;
  double worst_margin = 0.0;  // max over the tail of lhs - rhs
  std::size_t checked = 0;
};

/// Joint-continuity probe: with n sequences x_{m,i} -> limit_i, checks at
/// every tail index m that
///   |G(x_{m,1},...,x_{m,n}) - G(limits)|
///     <= (n-1) * sum_i G(limit_i, x_{m,i}, ..., x_{m,i}).
ContinuityProbeResult continuity_probe(const GnMetric& g, std::span<const SequencePrefix> seqs,
                                       std::span<const Point> limits, std::size_t tail_start);

}  // namespace gnmetric
