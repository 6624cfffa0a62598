#include "gnmetric/fixed_point.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gnmetric/errors.hpp"
#include "gnmetric/numerics.hpp"
#include "gnmetric/rng.hpp"

namespace gnmetric {

std::string to_string(Termination t) {
  switch (t) {
    case Termination::certified: return "certified";
    case Termination::max_iter: return "max-iter";
    case Termination::stalled: return "stalled";
  }
  return "?";
}

std::string to_string(EstimateMode m) {
  switch (m) {
    case EstimateMode::pair_ratio: return "theorem1-ratio";
    case EstimateMode::quasi_max: return "theorem2-quasi";
  }
  return "?";
}

EstimateMode estimate_mode_from_string(const std::string& s) {
  if (s == "theorem1-ratio") return EstimateMode::pair_ratio;
  if (s == "theorem2-quasi") return EstimateMode::quasi_max;
  throw validation_error("unknown estimate mode: " + s);
}

// ---------------------------------------------------------------------------
// SelfMap

SelfMap SelfMap::finite(std::vector<std::size_t> image) {
  for (std::size_t v : image)
    if (v >= image.size())
      throw validation_error("finite map image value " + std::to_string(v) + " out of range");
  SelfMap m;
  m.kind_ = Kind::finite_index_array;
  m.name_ = "finite";
  m.image_ = std::move(image);
  return m;
}

SelfMap SelfMap::affine(double scale, double offset) {
  return affine(std::vector<double>{scale}, std::vector<double>{offset});
}

SelfMap SelfMap::affine(std::vector<double> scale, std::vector<double> offset) {
  if (scale.empty() || offset.empty()) throw validation_error("affine map needs scale and offset");
  for (double v : scale)
    if (!std::isfinite(v)) throw validation_error("affine scale must be finite");
  for (double v : offset)
    if (!std::isfinite(v)) throw validation_error("affine offset must be finite");
  SelfMap m;
  m.kind_ = Kind::affine_real;
  m.name_ = "affine";
  m.scale_ = std::move(scale);
  m.offset_ = std::move(offset);
  return m;
}

SelfMap SelfMap::named(std::string name, std::function<Point(const Point&)> fn) {
  if (!fn) throw validation_error("named map needs a callable");
  SelfMap m;
  m.kind_ = Kind::registry_named;
  m.name_ = std::move(name);
  m.fn_ = std::move(fn);
  return m;
}

SelfMap SelfMap::identity() {
  return named("identity", [](const Point& p) { return p; });
}

Point SelfMap::apply(const Space& space, const Point& p) const {
  space.require_member(p, "map argument");
  switch (kind_) {
    case Kind::finite_index_array: {
      if (space.kind() != Space::Kind::finite_table || space.size() != image_.size())
        throw validation_error("finite map does not match the space (image size " +
                               std::to_string(image_.size()) + ")");
      return Point::index(image_[p.as_index()]);
    }
    case Kind::affine_real: {
      if (space.kind() != Space::Kind::real_vector)
        throw validation_error("affine maps apply to real-vector spaces only");
      const auto& x = p.as_real();
      const std::size_t d = x.size();
      if (scale_.size() != 1 && scale_.size() != d)
        throw validation_error("affine scale dimension does not match the space");
      if (offset_.size() != 1 && offset_.size() != d)
        throw validation_error("affine offset dimension does not match the space");
      std::vector<double> out(d);
      for (std::size_t i = 0; i < d; ++i) {
        const double a = scale_.size() == 1 ? scale_[0] : scale_[i];
        const double b = offset_.size() == 1 ? offset_[0] : offset_[i];
        out[i] = a * x[i] + b;
      }
      return Point::real(std::move(out));
    }
    case Kind::registry_named: {
      Point out = fn_(p);
      space.require_member(out, "map image");
      return out;
    }
  }
  throw validation_error("unreachable map kind");
}

SelfMap SelfMap::with_preimage(SelfMap pre, double residual_tol) const {
  if (!(residual_tol > 0.0)) throw validation_error("preimage residual tolerance must be positive");
  SelfMap m = *this;
  m.preimage_ = std::make_shared<const SelfMap>(std::move(pre));
  m.preimage_residual_tol_ = residual_tol;
  return m;
}

const SelfMap& SelfMap::preimage() const {
  if (!preimage_) throw validation_error("map has no preimage oracle");
  return *preimage_;
}

// ---------------------------------------------------------------------------
// Contraction estimation

ContractionEstimate estimate_contraction_factor(const GnMetric& g, const SelfMap& f,
                                                const std::optional<SelfMap>& gmap,
                                                EstimateMode mode, const SamplePlan& plan) {
  const Space& space = g.space();
  const std::size_t n = g.arity();

  std::vector<Point> pool;
  if (plan.point_pool) {
    pool = *plan.point_pool;
    if (pool.empty()) throw validation_error("point_pool must not be empty");
    for (const Point& p : pool) space.require_member(p, "pool point");
  } else if (space.kind() == Space::Kind::finite_table) {
    for (std::size_t i = 0; i < space.size(); ++i) pool.push_back(Point::index(i));
  } else {
    throw validation_error("contraction estimation over a real-vector space needs a point_pool");
  }

  const SelfMap gm = gmap ? *gmap : SelfMap::identity();

  ContractionEstimate est;
  est.mode = mode;

  Tuple xs(n, pool[0]), fx(n, pool[0]), probe(n, pool[0]);

  auto consider = [&]() {
    for (std::size_t i = 0; i < n; ++i) fx[i] = f.apply(space, xs[i]);
    const double num = g.evaluate(fx);

    double den;
    if (mode == EstimateMode::pair_ratio) {
      for (std::size_t i = 0; i < n; ++i) probe[i] = gm.apply(space, xs[i]);
      den = g.evaluate(probe);
    } else {
      den = g.evaluate(xs);  // G(x_1, ..., x_r)
      for (std::size_t i = 0; i < n; ++i) {
        probe.assign(n, fx[i]);
        probe[0] = xs[i];
        den = std::max(den, g.evaluate(probe));  // G(x_i, f x_i, ..., f x_i)
      }
      for (std::size_t i = 0; i < n; ++i) {
        probe.assign(n, fx[(i + 1) % n]);
        probe[0] = xs[i];
        den = std::max(den, g.evaluate(probe));  // G(x_i, f x_{i+1}, ..., f x_{i+1})
      }
    }

    if (!strictly_positive(den)) {
      est.skipped_zero++;
      return;
    }
    const double ratio = num / den;
    est.samples++;
    if (est.samples == 1 || ratio > est.sup_ratio) {
      est.sup_ratio = ratio;
      est.attained_at = xs;
    }
  };

  if (plan.mode == SamplePlan::Mode::exhaustive) {
    const std::size_t u = pool.size();
    std::vector<std::size_t> idx(n, 0);
    for (;;) {
      for (std::size_t k = 0; k < n; ++k) xs[k] = pool[idx[k]];
      consider();
      std::size_t pos = n;
      while (pos > 0) {
        if (++idx[pos - 1] < u) break;
        idx[pos - 1] = 0;
        --pos;
      }
      if (pos == 0) break;
    }
  } else {
    if (plan.tuple_count == 0) throw validation_error("tuple_count must be >= 1");
    CounterRng rng(derive_seed(plan.seed, "estimate.tuples"));
    for (std::size_t t = 0; t < plan.tuple_count; ++t) {
      for (std::size_t k = 0; k < n; ++k) xs[k] = pool[rng.next_index(pool.size())];
      consider();
    }
  }

  if (est.samples == 0)
    throw hypothesis_error("contraction estimate undefined: every sampled denominator was zero");
  return est;
}

// ---------------------------------------------------------------------------
// Solvers

namespace {

constexpr std::size_t kCommutationSamples = 100;
constexpr std::uint64_t kSolverSeedBase = 0x676e6d6574726963ULL;

/// Sample points for up-front hypothesis checks: every index of a small
/// finite space, or seeded draws from a box around the start point.
std::vector<Point> hypothesis_sample_points(const Space& space, const Point& x0,
                                            std::size_t count, std::uint64_t seed) {
  std::vector<Point> pts;
  pts.push_back(x0);
  if (space.kind() == Space::Kind::finite_table) {
    if (space.size() <= count) {
      for (std::size_t i = 0; i < space.size(); ++i) pts.push_back(Point::index(i));
    } else {
      CounterRng rng(seed);
      for (std::size_t i = 0; i + 1 < count; ++i)
        pts.push_back(Point::index(rng.next_index(space.size())));
    }
    return pts;
  }
  const auto& c = x0.as_real();
  double half = 1.0;
  for (double v : c) half = std::max(half, 2.0 * std::abs(v));
  CounterRng rng(seed);
  std::vector<double> coords(c.size());
  for (std::size_t i = 0; i + 1 < count; ++i) {
    for (std::size_t k = 0; k < coords.size(); ++k) coords[k] = c[k] + rng.next_real(-half, half);
    pts.push_back(Point::real(coords));
  }
  return pts;
}

double step_distance(const GnMetric& g, const Point& a, const Point& b, Tuple& scratch) {
  scratch.assign(g.arity(), b);
  scratch[0] = a;
  return g.evaluate(scratch);  // G(y_t, y_{t+1}, ..., y_{t+1})
}

/// Certificate-driven iteration shared by both solvers. `advance` maps y_t
/// to y_{t+1} and may throw on a hypothesis breach. q must lie in [0, 1).
///
/// Certificates follow B_0 = step_0 / (1-q), B_{t+1} = q * B_t, so the
/// geometric decrease is exact in floating point. The orbit is extended to
/// the first index T with B_T <= eps; a step value of exactly zero ends the
/// run immediately (the orbit is stationary, the remaining error is zero).
template <class Advance>
IterationTrace run_certified_iteration(const GnMetric& g, const Point& y0, double q, double eps,
                                       std::size_t max_iter, Advance&& advance) {
  if (!(eps > 0.0)) throw validation_error("eps must be positive");
  if (max_iter == 0) throw validation_error("max_iter must be >= 1");

  IterationTrace trace;
  trace.q = q;
  trace.iterates.push_back(y0);

  Tuple scratch;
  const Point y1 = advance(y0);
  const double step0 = step_distance(g, y0, y1, scratch);
  trace.iterates.push_back(y1);
  trace.step_values.push_back(step0);

  const double b0 = step0 / (1.0 - q);

  if (step0 == 0.0) {
    trace.certificates = {0.0, 0.0};
    trace.termination = Termination::certified;
    trace.certified_at = 0;
    trace.fixed_point = y0;
    return trace;
  }

  // How many steps the a-priori bound needs; the multiplication sequence
  // here is the one reported, not a pow() approximation of it.
  std::vector<double> certs{b0};
  while (certs.back() > eps && certs.size() <= max_iter) certs.push_back(certs.back() * q);
  const bool certifiable = certs.back() <= eps;
  const std::size_t target = certs.size() - 1;

  // Walk the orbit out to y_target, watching the contraction hypothesis.
  for (std::size_t t = 1; t < target; ++t) {
    const Point ynext = advance(trace.iterates[t]);
    const double s = step_distance(g, trace.iterates[t], ynext, scratch);
    trace.iterates.push_back(ynext);
    trace.step_values.push_back(s);

    if (s == 0.0) {
      trace.certificates.assign(certs.begin(), certs.begin() + static_cast<std::ptrdiff_t>(t + 1));
      trace.certificates.push_back(0.0);  // stationary from here on
      trace.termination = Termination::certified;
      trace.certified_at = t + 1;
      trace.fixed_point = trace.iterates.back();
      return trace;
    }

    const double prev = trace.step_values[t - 1];
    if (s > q * prev * (1.0 + tol::kRel)) {
      trace.certificates.assign(certs.begin(), certs.begin() + static_cast<std::ptrdiff_t>(t + 2));
      trace.termination = Termination::stalled;
      trace.note = "hypothesis-violation: step " + std::to_string(t) + " value " +
                   std::to_string(s) + " exceeds q * previous step";
      trace.fixed_point = trace.iterates.back();
      return trace;
    }
  }

  trace.certificates = certs;
  while (trace.certificates.size() < trace.iterates.size())
    trace.certificates.push_back(trace.certificates.back() * q);

  if (certifiable) {
    trace.termination = Termination::certified;
    trace.certified_at = target;
    trace.fixed_point = trace.iterates[target];
  } else {
    trace.termination = Termination::max_iter;
    trace.note = "certificate did not reach eps within max_iter steps";
    trace.fixed_point = trace.iterates.back();
  }
  return trace;
}

}  // namespace

IterationTrace solve_common_fixed_point(const GnMetric& g, const SelfMap& f, const SelfMap& gmap,
                                        const Point& x0, double q, double eps,
                                        std::size_t max_iter) {
  if (!(q > 0.0 && q < 1.0)) throw validation_error("q must lie in (0, 1)");
  const Space& space = g.space();
  space.require_member(x0, "x0");
  if (!gmap.has_preimage())
    throw validation_error("the reference map needs a preimage oracle for the interleaved scheme");

  // The pair must commute; silent violation would invalidate every certificate.
  const auto pts = hypothesis_sample_points(space, x0, kCommutationSamples,
                                            derive_seed(kSolverSeedBase, "solver.commutation"));
  for (const Point& p : pts) {
    const Point fg = f.apply(space, gmap.apply(space, p));
    const Point gf = gmap.apply(space, f.apply(space, p));
    const double d = space.base_distance(fg, gf);
    if (d > tol::kAbs)
      throw hypothesis_error("commutation-violated: |f(g(x)) - g(f(x))| = " + std::to_string(d) +
                             " at x = " + to_string(p));
  }

  const double res_tol = gmap.preimage_residual_tol();
  auto pull_back = [&](const Point& target, const std::string& where) {
    const Point x = gmap.preimage().apply(space, target);
    const double resid = space.base_distance(gmap.apply(space, x), target);
    if (resid > res_tol)
      throw hypothesis_error("preimage-residual-exceeded at " + where + ": residual " +
                             std::to_string(resid) + " > " + std::to_string(res_tol));
    return x;
  };
  pull_back(x0, "x0");

  std::size_t iterate_no = 0;
  auto advance = [&](const Point& y) {
    const Point x = pull_back(y, "iterate " + std::to_string(iterate_no));
    ++iterate_no;
    return f.apply(space, x);
  };

  const Point y0 = f.apply(space, x0);
  return run_certified_iteration(g, y0, q, eps, max_iter, advance);
}

IterationTrace solve_quasi_contraction(const GnMetric& g, const SelfMap& f, const Point& y0,
                                       double k, double eps, std::size_t max_iter) {
  if (!(k >= 0.0 && k < 0.5)) throw validation_error("k must lie in [0, 1/2)");
  const Space& space = g.space();
  space.require_member(y0, "y0");
  const double q = k / (1.0 - k);
  auto advance = [&](const Point& y) { return f.apply(space, y); };
  return run_certified_iteration(g, y0, q, eps, max_iter, advance);
}

bool verify_fixed_point(const GnMetric& g, const SelfMap& f, const std::optional<SelfMap>& gmap,
                        const Point& u, double tol_) {
  const Point fu = f.apply(g.space(), u);
  if (derived_metric(g, fu, u) > tol_) return false;
  if (gmap) {
    const Point gu = gmap->apply(g.space(), u);
    if (derived_metric(g, gu, u) > tol_) return false;
  }
  return true;
}

UniquenessResult uniqueness_probe(const GnMetric& g, const SolverConfig& config,
                                  std::span<const Point> seeds, double tol_) {
  if (seeds.size() < 2)
    throw validation_error("uniqueness probe needs at least 2 seed points, got " +
                           std::to_string(seeds.size()));
  if (config.theorem != 1 && config.theorem != 2)
    throw validation_error("solver config theorem must be 1 or 2");
  if (config.theorem == 1 && !config.gmap)
    throw validation_error("theorem 1 solver config needs the reference map g");

  UniquenessResult res;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    try {
      const IterationTrace trace =
          config.theorem == 1
              ? solve_common_fixed_point(g, config.f, *config.gmap, seeds[i], config.q_or_k,
                                         config.eps, config.max_iter)
              : solve_quasi_contraction(g, config.f, seeds[i], config.q_or_k, config.eps,
                                        config.max_iter);
      if (trace.termination != Termination::certified)
        throw hypothesis_error("solver did not certify (" + to_string(trace.termination) + ")");
      res.fixed_points.push_back(trace.fixed_point);
    } catch (const hypothesis_error& e) {
      throw hypothesis_error("seed #" + std::to_string(i) + " (" + to_string(seeds[i]) +
                             "): " + e.what());
    } catch (const validation_error& e) {
      throw validation_error("seed #" + std::to_string(i) + " (" + to_string(seeds[i]) +
                             "): " + e.what());
    }
  }

  res.agree = true;
  for (std::size_t i = 0; i < res.fixed_points.size(); ++i)
    for (std::size_t j = i + 1; j < res.fixed_points.size(); ++j) {
      const double d = derived_metric(g, res.fixed_points[i], res.fixed_points[j]);
      res.max_pairwise_dg = std::max(res.max_pairwise_dg, d);
      if (d > tol_) res.agree = false;
    }
  return res;
}

ContinuityAtFixedPointResult continuity_at_fixed_point(const GnMetric& g, const SelfMap& f,
                                                       const SequencePrefix& seq, const Point& u,
                                                       double k, std::size_t tail_start) {
  if (!(k >= 0.0)) throw validation_error("k must be nonnegative");
  const std::size_t r = g.arity();
  ContinuityAtFixedPointResult res;
  if (!(static_cast<double>(r - 1) * k < 1.0)) return res;  // bound has no positive denominator
  res.applicable = true;
  res.bound_factor = k / (1.0 - static_cast<double>(r - 1) * k);

  if (seq.points.size() < 2) throw validation_error("sequence prefix needs at least 2 points");
  if (tail_start >= seq.points.size()) throw validation_error("tail_start leaves an empty tail");
  g.space().require_member(u, "fixed point");

  res.holds = true;
  res.worst_margin = -std::numeric_limits<double>::infinity();
  Tuple t(r, u);
  for (std::size_t m = tail_start; m < seq.points.size(); ++m) {
    const Point& ym = seq.points[m];
    const Point fym = f.apply(g.space(), ym);
    t.assign(r, u);
    t[0] = fym;
    const double lhs = g.evaluate(t);  // G(f(y_m), u, ..., u)
    t[0] = ym;
    const double rhs = res.bound_factor * g.evaluate(t);
    const double margin = lhs - rhs;
    res.worst_margin = std::max(res.worst_margin, margin);
    if (!approx_le(lhs, rhs)) res.holds = false;
  }
  return res;
}

}  // namespace gnmetric
