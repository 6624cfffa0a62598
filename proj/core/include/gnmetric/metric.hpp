#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "gnmetric/point.hpp"
#include "gnmetric/space.hpp"

namespace gnmetric {

/// The n-ary distance constructions. The first two are fully symmetric in
/// their arguments; the cyclic pair is symmetric only under rotations; an
/// explicit table carries arbitrary user-supplied values over a finite
/// space (useful for counterexamples).
enum class MetricKind {
  max_pairwise,
  sum_pairwise,
  cyclic_max,
  cyclic_perimeter_avg,
  explicit_table,
};

MetricKind metric_kind_from_string(const std::string& s);
std::string to_string(MetricKind k);

namespace detail {

/// Single evaluation kernel shared by every construction. `dist(r, s)` is
/// the base distance between tuple positions r and s. Every caller that
/// must agree bit-for-bit with GnMetric::evaluate routes through this, so
/// accumulation order is fixed in exactly one place.
template <class DistFn>
double eval_pairwise(MetricKind kind, std::size_t n, DistFn&& dist) {
  switch (kind) {
    case MetricKind::max_pairwise: {
      double m = 0.0;
      for (std::size_t r = 0; r + 1 < n; ++r)
        for (std::size_t s = r + 1; s < n; ++s) m = std::max(m, dist(r, s));
      return m;
    }
    case MetricKind::sum_pairwise: {
      // Double sum over ordered pairs r != s; by symmetry of the base
      // distance this is exactly twice the unordered-pair sum.
      double acc = 0.0;
      for (std::size_t r = 0; r + 1 < n; ++r)
        for (std::size_t s = r + 1; s < n; ++s) acc += dist(r, s);
      return 2.0 * acc;
    }
    case MetricKind::cyclic_max: {
      double m = 0.0;
      for (std::size_t r = 0; r < n; ++r) m = std::max(m, dist(r, (r + 1) % n));
      return m;
    }
    case MetricKind::cyclic_perimeter_avg: {
      double acc = 0.0;
      for (std::size_t r = 0; r < n; ++r) acc += dist(r, (r + 1) % n);
      return acc / static_cast<double>(n);
    }
    case MetricKind::explicit_table:
      break;  // handled by table lookup, not a pairwise kernel
  }
  throw validation_error("explicit_table metrics are evaluated by lookup");
}

}  // namespace detail

/// An n-ary distance evaluator over a carrier space, n >= 3.
///
/// Evaluators are immutable after construction and safe to share across
/// threads.
class GnMetric {
public:
  static GnMetric max_pairwise(Space space, std::size_t arity);
  static GnMetric sum_pairwise(Space space, std::size_t arity);
  static GnMetric cyclic_max(Space space, std::size_t arity);
  static GnMetric cyclic_perimeter_avg(Space space, std::size_t arity);

  /// Values tensor over a finite space, flat row-major with the last tuple
  /// position fastest: offset = ((i1*m + i2)*m + ...)*m + in. Must have
  /// extent m^arity, with every entry finite and nonnegative.
  static GnMetric explicit_table(Space space, std::size_t arity, std::vector<double> values);

  static GnMetric make(MetricKind kind, Space space, std::size_t arity,
                       std::vector<double> table_values = {});

  MetricKind kind() const { return kind_; }
  std::size_t arity() const { return arity_; }
  const Space& space() const { return space_; }
  const std::vector<double>& table_values() const { return values_; }

  /// Evaluate on a tuple of `arity` member points. Throws validation_error
  /// on arity mismatch or a point outside the space.
  double evaluate(std::span<const Point> tuple) const;
  double evaluate(std::initializer_list<Point> tuple) const {
    return evaluate(std::span<const Point>(tuple.begin(), tuple.size()));
  }

  /// Finite spaces only: evaluate on point indices without boxing. Same
  /// arithmetic path as evaluate(), so results agree bit-for-bit.
  double evaluate_indices(std::span<const std::size_t> idx) const;

private:
  GnMetric(MetricKind kind, Space space, std::size_t arity, std::vector<double> values);

  MetricKind kind_;
  Space space_;
  std::size_t arity_;
  std::vector<double> values_;  // explicit_table only
};

/// The induced binary metric d_G(x, y) = G(x,y,...,y) + G(x,...,x,y).
double derived_metric(const GnMetric& g, const Point& x, const Point& y);

}  // namespace gnmetric
