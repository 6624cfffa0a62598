#include "gnmetric/metric.hpp"

#include <cmath>

#include "gnmetric/errors.hpp"

namespace gnmetric {

MetricKind metric_kind_from_string(const std::string& s) {
  if (s == "max_pairwise") return MetricKind::max_pairwise;
  if (s == "sum_pairwise") return MetricKind::sum_pairwise;
  if (s == "cyclic_max") return MetricKind::cyclic_max;
  if (s == "cyclic_perimeter_avg") return MetricKind::cyclic_perimeter_avg;
  if (s == "explicit_table") return MetricKind::explicit_table;
  throw validation_error("unknown metric kind: " + s);
}

std::string to_string(MetricKind k) {
  switch (k) {
    case MetricKind::max_pairwise: return "max_pairwise";
    case MetricKind::sum_pairwise: return "sum_pairwise";
    case MetricKind::cyclic_max: return "cyclic_max";
    case MetricKind::cyclic_perimeter_avg: return "cyclic_perimeter_avg";
    case MetricKind::explicit_table: return "explicit_table";
  }
  return "?";
}

GnMetric::GnMetric(MetricKind kind, Space space, std::size_t arity, std::vector<double> values)
    : kind_(kind), space_(std::move(space)), arity_(arity), values_(std::move(values)) {
  if (arity_ < 3) throw validation_error("arity must be >= 3, got " + std::to_string(arity_));
  if (kind_ == MetricKind::explicit_table) {
    if (space_.kind() != Space::Kind::finite_table)
      throw validation_error("explicit_table metrics require a finite space");
    std::size_t expected = 1;
    const std::size_t m = space_.size();
    for (std::size_t i = 0; i < arity_; ++i) {
      if (expected > (SIZE_MAX / 2) / m)
        throw validation_error("explicit table extent m^n is too large");
      expected *= m;
    }
    if (values_.size() != expected)
      throw validation_error("explicit table has " + std::to_string(values_.size()) +
                             " entries, expected m^n = " + std::to_string(expected));
    for (double v : values_) {
      if (std::isnan(v)) throw validation_error("explicit table contains NaN");
      if (!std::isfinite(v) || v < 0.0)
        throw validation_error("explicit table entries must be finite and nonnegative");
    }
  } else if (!values_.empty()) {
    throw validation_error("table values are only valid for explicit_table metrics");
  }
}

GnMetric GnMetric::max_pairwise(Space space, std::size_t arity) {
  return GnMetric(MetricKind::max_pairwise, std::move(space), arity, {});
}
GnMetric GnMetric::sum_pairwise(Space space, std::size_t arity) {
  return GnMetric(MetricKind::sum_pairwise, std::move(space), arity, {});
}
GnMetric GnMetric::cyclic_max(Space space, std::size_t arity) {
  return GnMetric(MetricKind::cyclic_max, std::move(space), arity, {});
}
GnMetric GnMetric::cyclic_perimeter_avg(Space space, std::size_t arity) {
  return GnMetric(MetricKind::cyclic_perimeter_avg, std::move(space), arity, {});
}
GnMetric GnMetric::explicit_table(Space space, std::size_t arity, std::vector<double> values) {
  return GnMetric(MetricKind::explicit_table, std::move(space), arity, std::move(values));
}
GnMetric GnMetric::make(MetricKind kind, Space space, std::size_t arity,
                        std::vector<double> table_values) {
  return GnMetric(kind, std::move(space), arity, std::move(table_values));
}

double GnMetric::evaluate(std::span<const Point> tuple) const {
  if (tuple.size() != arity_)
    throw validation_error("tuple has " + std::to_string(tuple.size()) +
                           " points, metric arity is " + std::to_string(arity_));
  for (const Point& p : tuple) space_.require_member(p, "tuple point");

  if (kind_ == MetricKind::explicit_table) {
    const std::size_t m = space_.size();
    std::size_t off = 0;
    for (const Point& p : tuple) off = off * m + p.as_index();
    return values_[off];
  }
  return detail::eval_pairwise(kind_, arity_, [&](std::size_t r, std::size_t s) {
    return space_.base_distance(tuple[r], tuple[s]);
  });
}

double GnMetric::evaluate_indices(std::span<const std::size_t> idx) const {
  if (space_.kind() != Space::Kind::finite_table)
    throw validation_error("evaluate_indices requires a finite space");
  if (idx.size() != arity_) throw validation_error("index tuple length does not match arity");
  const std::size_t m = space_.size();
  for (std::size_t i : idx)
    if (i >= m) throw validation_error("point index out of range");

  if (kind_ == MetricKind::explicit_table) {
    std::size_t off = 0;
    for (std::size_t i : idx) off = off * m + i;
    return values_[off];
  }
  return detail::eval_pairwise(kind_, arity_, [&](std::size_t r, std::size_t s) {
    return space_.table_at(idx[r], idx[s]);
  });
}

double derived_metric(const GnMetric& g, const Point& x, const Point& y) {
  const std::size_t n = g.arity();
  Tuple t(n, y);
  t[0] = x;                       // (x, y, ..., y)
  const double first = g.evaluate(t);
  for (std::size_t i = 1; i + 1 < n; ++i) t[i] = x;  // (x, x, ..., x, y)
  const double second = g.evaluate(t);
  return first + second;
}

}  // namespace gnmetric
