#include "gnmetric/sequence.hpp"

#include <algorithm>
#include <limits>

#include "gnmetric/errors.hpp"
#include "gnmetric/numerics.hpp"
#include "gnmetric/rng.hpp"

namespace gnmetric {

namespace {

void require_prefix(const GnMetric& g, const SequencePrefix& s) {
  if (s.points.size() < 2) throw validation_error("sequence prefix needs at least 2 points");
  for (const Point& p : s.points) g.space().require_member(p, "sequence point");
}

}  // namespace

ConvergenceReport convergence_report(const GnMetric& g, const SequencePrefix& s,
                                     const Point& limit, std::size_t tail_start, double tol_) {
  require_prefix(g, s);
  g.space().require_member(limit, "limit");
  if (tail_start >= s.points.size())
    throw validation_error("tail_start " + std::to_string(tail_start) +
                           " leaves an empty tail (prefix length " +
                           std::to_string(s.points.size()) + ")");
  if (!(tol_ > 0.0)) throw validation_error("tolerance must be positive");

  const std::size_t n = g.arity();
  ConvergenceReport rep;
  rep.tail_start = tail_start;
  rep.tol = tol_;

  Tuple t(n, limit);
  for (std::size_t m = tail_start; m < s.points.size(); ++m) {
    const Point& xm = s.points[m];

    t.assign(n, xm);
    t[n - 1] = limit;
    const double iter_rep = g.evaluate(t);  // G(x_m, ..., x_m, limit)

    t.assign(n, limit);
    t[0] = xm;
    const double lim_rep = g.evaluate(t);  // G(x_m, limit, ..., limit)

    rep.sup_iterate_repeated = std::max(rep.sup_iterate_repeated, iter_rep);
    rep.sup_limit_repeated = std::max(rep.sup_limit_repeated, lim_rep);

    if (!approx_le(lim_rep, static_cast<double>(n - 1) * iter_rep)) rep.cross_bound_ok = false;
    if (!approx_le(derived_metric(g, xm, limit), static_cast<double>(n) * iter_rep))
      rep.dg_bound_ok = false;
  }

  rep.converged = rep.sup_iterate_repeated < tol_ && rep.sup_limit_repeated < tol_;
  return rep;
}

CauchyReport cauchy_report(const GnMetric& g, const SequencePrefix& s, std::size_t start,
                           std::size_t exhaustive_cap) {
  require_prefix(g, s);
  if (start >= s.points.size())
    throw validation_error("start index " + std::to_string(start) + " leaves an empty tail");

  const std::size_t n = g.arity();
  const std::size_t len = s.points.size() - start;

  CauchyReport rep;
  rep.start_index = start;

  Tuple t(n, s.points[start]);
  for (std::size_t i = 0; i < len; ++i)
    for (std::size_t j = 0; j < len; ++j) {
      t.assign(n, s.points[start + j]);
      t[0] = s.points[start + i];
      rep.two_index_sup = std::max(rep.two_index_sup, g.evaluate(t));
    }

  // Number of full index combinations len^n, with overflow treated as "over cap".
  std::size_t combos = 1;
  bool over_cap = false;
  for (std::size_t i = 0; i < n; ++i) {
    if (combos > exhaustive_cap / len) {
      over_cap = true;
      break;
    }
    combos *= len;
  }

  if (!over_cap) {
    rep.full_exhaustive = true;
    std::vector<std::size_t> idx(n, 0);
    for (;;) {
      for (std::size_t k = 0; k < n; ++k) t[k] = s.points[start + idx[k]];
      rep.full_sup = std::max(rep.full_sup, g.evaluate(t));
      ++rep.combinations_checked;
      std::size_t pos = n;
      while (pos > 0) {
        if (++idx[pos - 1] < len) break;
        idx[pos - 1] = 0;
        --pos;
      }
      if (pos == 0) break;
    }
  } else {
    rep.full_exhaustive = false;
    CounterRng rng(derive_seed(0x67656e6d65747263ULL, "cauchy.subsample"));
    for (std::size_t d = 0; d < kCauchySubsampleDraws; ++d) {
      for (std::size_t k = 0; k < n; ++k) t[k] = s.points[start + rng.next_index(len)];
      rep.full_sup = std::max(rep.full_sup, g.evaluate(t));
      ++rep.combinations_checked;
    }
  }

  rep.amplification_ok =
      approx_le(rep.full_sup, static_cast<double>(n - 1) * rep.two_index_sup);
  return rep;
}

ContinuityProbeResult continuity_probe(const GnMetric& g, std::span<const SequencePrefix> seqs,
                                       std::span<const Point> limits, std::size_t tail_start) {
  const std::size_t n = g.arity();
  if (seqs.size() != n)
    throw validation_error("continuity probe needs exactly one sequence per metric argument");
  if (limits.size() != n)
    throw validation_error("continuity probe needs exactly one limit per metric argument");
  const std::size_t len = seqs[0].points.size();
  for (const auto& s : seqs) {
    require_prefix(g, s);
    if (s.points.size() != len)
      throw validation_error("continuity probe sequences must have equal length");
  }
  for (const Point& p : limits) g.space().require_member(p, "limit point");
  if (tail_start >= len) throw validation_error("tail_start leaves an empty tail");

  const double limit_value = g.evaluate(limits);
  const double factor = static_cast<double>(n - 1);

  ContinuityProbeResult res;
  res.worst_margin = -std::numeric_limits<double>::infinity();

  Tuple t(n, limits[0]);
  Tuple probe(n, limits[0]);
  for (std::size_t m = tail_start; m < len; ++m) {
    for (std::size_t i = 0; i < n; ++i) t[i] = seqs[i].points[m];
    const double lhs = std::abs(g.evaluate(t) - limit_value);

    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      probe.assign(n, seqs[i].points[m]);
      probe[0] = limits[i];
      sum += g.evaluate(probe);  // G(limit_i, x_{m,i}, ..., x_{m,i})
    }
    const double rhs = factor * sum;
    const double margin = lhs - rhs;
    res.worst_margin = std::max(res.worst_margin, margin);
    if (!approx_le(lhs, rhs)) res.holds = false;
    ++res.checked;
  }
  return res;
}

}  // namespace gnmetric
