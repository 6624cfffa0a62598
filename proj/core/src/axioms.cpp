#include "gnmetric/axioms.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <numeric>

#include "gnmetric/errors.hpp"
#include "gnmetric/numerics.hpp"
#include "gnmetric/rng.hpp"

namespace gnmetric {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::not_applicable: return "not-applicable";
  }
  return "?";
}

bool AxiomReport::all_pass() const {
  for (const auto& v : verdicts)
    if (v.verdict == Verdict::fail) return false;
  return true;
}

const AxiomVerdict* AxiomReport::find(const std::string& axiom_id) const {
  for (const auto& v : verdicts)
    if (v.axiom_id == axiom_id) return &v;
  return nullptr;
}

namespace {

constexpr std::size_t kNpos = std::numeric_limits<std::size_t>::max();
constexpr std::size_t kExhaustivePermutationArity = 5;
constexpr std::size_t kSampledPermutations = 50;

// The resolved check domain: finite-space indices or an explicit pool.
std::vector<Point> resolve_universe(const GnMetric& g, const SamplePlan& plan) {
  if (plan.point_pool) {
    if (plan.point_pool->empty()) throw validation_error("point_pool must not be empty");
    for (const Point& p : *plan.point_pool) g.space().require_member(p, "pool point");
    return *plan.point_pool;
  }
  if (g.space().kind() == Space::Kind::finite_table) {
    std::vector<Point> pts;
    pts.reserve(g.space().size());
    for (std::size_t i = 0; i < g.space().size(); ++i) pts.push_back(Point::index(i));
    return pts;
  }
  throw validation_error("sampling over a real-vector space requires an explicit point_pool");
}

/// Evaluates the metric on pool-index tuples via precomputed pairwise base
/// distances. The arithmetic routes through the same kernel as
/// GnMetric::evaluate with identical inputs, so values agree bit-for-bit
/// and recorded witnesses reproduce exactly.
class PooledEval {
public:
  PooledEval(const GnMetric& g, std::vector<Point> pool) : g_(g), pool_(std::move(pool)) {
    const std::size_t u = pool_.size();
    if (g_.kind() == MetricKind::explicit_table) {
      space_index_.reserve(u);
      for (const Point& p : pool_) space_index_.push_back(p.as_index());
    } else {
      dist_.resize(u * u);
      for (std::size_t i = 0; i < u; ++i)
        for (std::size_t j = 0; j < u; ++j)
          dist_[i * u + j] = g_.space().base_distance(pool_[i], pool_[j]);
    }
  }

  std::size_t pool_size() const { return pool_.size(); }
  const Point& point(std::size_t i) const { return pool_[i]; }

  double eval(std::span<const std::size_t> t) const {
    if (g_.kind() == MetricKind::explicit_table) {
      const std::size_t m = g_.space().size();
      std::size_t off = 0;
      for (std::size_t i : t) off = off * m + space_index_[i];
      return g_.table_values()[off];
    }
    const std::size_t u = pool_.size();
    return detail::eval_pairwise(g_.kind(), g_.arity(), [&](std::size_t r, std::size_t s) {
      return dist_[t[r] * u + t[s]];
    });
  }

  // Mirror of derived_metric(): G(x,y,...,y) + G(x,...,x,y), same order.
  double dg(std::size_t i, std::size_t j, std::vector<std::size_t>& scratch) const {
    const std::size_t n = g_.arity();
    scratch.assign(n, j);
    scratch[0] = i;
    const double first = eval(scratch);
    for (std::size_t k = 1; k + 1 < n; ++k) scratch[k] = i;
    const double second = eval(scratch);
    return first + second;
  }

  Tuple materialize(std::span<const std::size_t> t) const {
    Tuple out;
    out.reserve(t.size());
    for (std::size_t i : t) out.push_back(pool_[i]);
    return out;
  }

private:
  const GnMetric& g_;
  std::vector<Point> pool_;
  std::vector<double> dist_;               // pairwise, constructions
  std::vector<std::size_t> space_index_;   // pool position -> space index, tables
};

bool witness_less(const Witness& a, const Witness& b) {
  if (lex_less(a.tuple, b.tuple)) return true;
  if (lex_less(b.tuple, a.tuple)) return false;
  if (a.aux_tuple && b.aux_tuple) {
    if (lex_less(*a.aux_tuple, *b.aux_tuple)) return true;
    if (lex_less(*b.aux_tuple, *a.aux_tuple)) return false;
  }
  if (a.interpolant && b.interpolant) {
    if (lex_less(*a.interpolant, *b.interpolant)) return true;
    if (lex_less(*b.interpolant, *a.interpolant)) return false;
  }
  if (a.radius && b.radius) return *a.radius < *b.radius;
  return false;
}

struct AxiomState {
  std::size_t applicable = 0;
  std::optional<Witness> witness;

  // Keeps the lexicographically smallest violating witness, which makes the
  // merge of partial scans associative and order-independent.
  void violation(Witness w) {
    if (!witness || witness_less(w, *witness)) witness = std::move(w);
  }

  AxiomVerdict finalize(std::string id) const {
    AxiomVerdict v;
    v.axiom_id = std::move(id);
    v.applicable = applicable;
    if (witness) {
      v.verdict = Verdict::fail;
      v.witness = witness;
    } else {
      v.verdict = applicable > 0 ? Verdict::pass : Verdict::not_applicable;
    }
    return v;
  }
};

/// Drive `fn` over index tuples of length n: every tuple in lexicographic
/// order when exhaustive, `tuple_count` seeded draws otherwise. Returns the
/// number of tuples visited.
template <class Fn>
std::size_t for_each_index_tuple(std::size_t universe, std::size_t n, const SamplePlan& plan,
                                 std::uint64_t stream_seed, Fn&& fn) {
  std::vector<std::size_t> idx(n, 0);
  if (plan.mode == SamplePlan::Mode::exhaustive) {
    std::size_t count = 0;
    for (;;) {
      fn(std::span<const std::size_t>(idx));
      ++count;
      std::size_t pos = n;
      while (pos > 0) {
        if (++idx[pos - 1] < universe) break;
        idx[pos - 1] = 0;
        --pos;
      }
      if (pos == 0) break;
    }
    return count;
  }
  if (plan.tuple_count == 0) throw validation_error("tuple_count must be >= 1");
  CounterRng rng(stream_seed);
  for (std::size_t t = 0; t < plan.tuple_count; ++t) {
    for (std::size_t k = 0; k < n; ++k) idx[k] = rng.next_index(universe);
    fn(std::span<const std::size_t>(idx));
  }
  return plan.tuple_count;
}

bool violates_le(double lhs, double rhs) { return lhs > rhs + fp_slack(lhs, rhs); }
bool violates_eq(double a, double b) { return std::abs(a - b) > fp_slack(a, b); }

AxiomReport check_gk_suite(const GnMetric& g, const SamplePlan& plan, TailCondition tailcond,
                           bool cyclic_only) {
  const std::string suite = cyclic_only ? "k" : "g";
  const std::vector<Point> pool = resolve_universe(g, plan);
  const PooledEval ev(g, pool);
  const std::size_t n = g.arity();
  const std::size_t u = pool.size();

  std::array<AxiomState, 5> st;
  CounterRng interp_rng(derive_seed(plan.seed, suite + ".rectangle.interpolant"));
  CounterRng perm_rng(derive_seed(plan.seed, suite + ".symmetry.permutations"));
  const std::uint64_t tuple_seed = derive_seed(plan.seed, suite + ".tuples");

  std::vector<std::size_t> probe(n), arranged(n), perm(n);

  auto check_symmetry_arrangement = [&](std::span<const std::size_t> idx, double value) {
    const double v2 = ev.eval(arranged);
    if (violates_eq(value, v2)) {
      Witness w;
      w.tuple = ev.materialize(idx);
      w.aux_tuple = ev.materialize(arranged);
      w.lhs = value;
      w.rhs = v2;
      w.margin = std::abs(value - v2);
      st[3].violation(std::move(w));
    }
  };

  auto check_rectangle = [&](std::span<const std::size_t> idx, double value, std::size_t w) {
    probe.assign(n, w);
    probe[0] = idx[0];
    const double head = ev.eval(probe);  // G(x1, w, ..., w)
    std::copy(idx.begin(), idx.end(), arranged.begin());
    arranged[0] = w;
    const double tail = ev.eval(arranged);  // G(w, x2, ..., xn)
    const double rhs = head + tail;
    if (violates_le(value, rhs)) {
      Witness wit;
      wit.tuple = ev.materialize(idx);
      wit.interpolant = ev.point(w);
      wit.lhs = value;
      wit.rhs = rhs;
      wit.margin = value - rhs;
      st[4].violation(std::move(wit));
    }
  };

  const std::size_t checked = for_each_index_tuple(
      u, n, plan, tuple_seed, [&](std::span<const std::size_t> idx) {
        const double value = ev.eval(idx);

        // [1] zero on the constant tuple built from x1.
        st[0].applicable++;
        probe.assign(n, idx[0]);
        const double c = ev.eval(probe);
        if (c > tol::kStrict) {
          Witness w;
          w.tuple = ev.materialize(probe);
          w.lhs = c;
          w.rhs = 0.0;
          w.margin = c;
          st[0].violation(std::move(w));
        }

        // [2] strict positivity of G(a,...,a,b) for the first b != a.
        std::size_t b = kNpos;
        for (std::size_t j = 1; j < n; ++j)
          if (!(ev.point(idx[j]) == ev.point(idx[0]))) {
            b = idx[j];
            break;
          }
        if (b != kNpos) {
          st[1].applicable++;
          probe.assign(n, idx[0]);
          probe[n - 1] = b;
          const double v = ev.eval(probe);
          if (!strictly_positive(v)) {
            Witness w;
            w.tuple = ev.materialize(probe);
            w.lhs = v;
            w.rhs = 0.0;
            w.margin = tol::kStrict - v;
            st[1].violation(std::move(w));
          }
        }

        // [3] G(x1,...,x1,x2) <= G(x1,...,xn), gated on the tail condition.
        bool tail_ok;
        if (tailcond == TailCondition::pairwise_distinct) {
          tail_ok = true;
          for (std::size_t a = 1; a < n && tail_ok; ++a)
            for (std::size_t c2 = a + 1; c2 < n; ++c2)
              if (ev.point(idx[a]) == ev.point(idx[c2])) {
                tail_ok = false;
                break;
              }
        } else {
          tail_ok = false;
          for (std::size_t a = 1; a < n && !tail_ok; ++a)
            for (std::size_t c2 = a + 1; c2 < n; ++c2)
              if (!(ev.point(idx[a]) == ev.point(idx[c2]))) {
                tail_ok = true;
                break;
              }
        }
        if (tail_ok) {
          st[2].applicable++;
          probe.assign(n, idx[0]);
          probe[n - 1] = idx[1];
          const double lhs = ev.eval(probe);
          if (violates_le(lhs, value)) {
            Witness w;
            w.tuple = ev.materialize(idx);
            w.aux_tuple = ev.materialize(probe);
            w.lhs = lhs;
            w.rhs = value;
            w.margin = lhs - value;
            st[2].violation(std::move(w));
          }
        }

        // [4] symmetry: cyclic shifts for the K family, all arrangements
        // (or a sample) for the G family.
        st[3].applicable++;
        if (cyclic_only) {
          for (std::size_t r = 1; r < n; ++r) {
            for (std::size_t k = 0; k < n; ++k) arranged[k] = idx[(k + r) % n];
            check_symmetry_arrangement(idx, value);
          }
        } else if (n <= kExhaustivePermutationArity) {
          std::iota(perm.begin(), perm.end(), std::size_t{0});
          while (std::next_permutation(perm.begin(), perm.end())) {
            for (std::size_t k = 0; k < n; ++k) arranged[k] = idx[perm[k]];
            check_symmetry_arrangement(idx, value);
          }
        } else {
          for (std::size_t tpm = 0; tpm < kSampledPermutations; ++tpm) {
            std::iota(perm.begin(), perm.end(), std::size_t{0});
            for (std::size_t k = n - 1; k > 0; --k)
              std::swap(perm[k], perm[perm_rng.next_index(k + 1)]);
            for (std::size_t k = 0; k < n; ++k) arranged[k] = idx[perm[k]];
            check_symmetry_arrangement(idx, value);
          }
        }

        // [5] rectangle inequality over interpolating points.
        st[4].applicable++;
        if (plan.mode == SamplePlan::Mode::exhaustive) {
          for (std::size_t w = 0; w < u; ++w) check_rectangle(idx, value, w);
        } else {
          check_rectangle(idx, value, interp_rng.next_index(u));
        }
      });

  AxiomReport report;
  report.suite = suite;
  report.tuples_checked = checked;
  report.seed = plan.seed;
  report.exhaustive = plan.mode == SamplePlan::Mode::exhaustive;
  const char prefix = cyclic_only ? 'K' : 'G';
  for (std::size_t i = 0; i < 5; ++i)
    report.verdicts.push_back(st[i].finalize(std::string(1, prefix) + std::to_string(i + 1)));
  return report;
}

}  // namespace

AxiomReport check_g_axioms(const GnMetric& g, const SamplePlan& plan, TailCondition tail) {
  return check_gk_suite(g, plan, tail, /*cyclic_only=*/false);
}

AxiomReport check_k_axioms(const GnMetric& k, const SamplePlan& plan, TailCondition tail) {
  return check_gk_suite(k, plan, tail, /*cyclic_only=*/true);
}

AxiomReport check_metric_axioms(const GnMetric& g, const SamplePlan& plan) {
  const std::vector<Point> pool = resolve_universe(g, plan);
  const PooledEval ev(g, pool);
  const std::size_t u = pool.size();

  AxiomState sym, ident, tri;
  std::vector<std::size_t> scratch;

  const std::size_t pairs = for_each_index_tuple(
      u, 2, plan, derive_seed(plan.seed, "metric.pairs"), [&](std::span<const std::size_t> idx) {
        const std::size_t i = idx[0], j = idx[1];
        const double dij = ev.dg(i, j, scratch);
        const double dji = ev.dg(j, i, scratch);

        sym.applicable++;
        if (violates_eq(dij, dji)) {
          Witness w;
          w.tuple = {ev.point(i), ev.point(j)};
          w.lhs = dij;
          w.rhs = dji;
          w.margin = std::abs(dij - dji);
          sym.violation(std::move(w));
        }

        ident.applicable++;
        const bool same = ev.point(i) == ev.point(j);
        const bool zero = !strictly_positive(dij);
        if (same != zero) {
          Witness w;
          w.tuple = {ev.point(i), ev.point(j)};
          w.lhs = dij;
          w.rhs = 0.0;
          w.margin = same ? dij : tol::kStrict - dij;
          ident.violation(std::move(w));
        }
      });

  const std::size_t triples = for_each_index_tuple(
      u, 3, plan, derive_seed(plan.seed, "metric.triples"), [&](std::span<const std::size_t> idx) {
        tri.applicable++;
        const double lhs = ev.dg(idx[0], idx[2], scratch);
        const double via = ev.dg(idx[0], idx[1], scratch) + ev.dg(idx[1], idx[2], scratch);
        if (violates_le(lhs, via)) {
          Witness w;
          w.tuple = {ev.point(idx[0]), ev.point(idx[1]), ev.point(idx[2])};
          w.lhs = lhs;
          w.rhs = via;
          w.margin = lhs - via;
          tri.violation(std::move(w));
        }
      });

  AxiomReport report;
  report.suite = "metric";
  report.tuples_checked = pairs + triples;
  report.seed = plan.seed;
  report.exhaustive = plan.mode == SamplePlan::Mode::exhaustive;
  report.verdicts.push_back(sym.finalize("M-sym"));
  report.verdicts.push_back(ident.finalize("M-id"));
  report.verdicts.push_back(tri.finalize("M-tri"));
  return report;
}

AxiomReport check_inequality_prop(const GnMetric& g, const SamplePlan& plan) {
  const std::vector<Point> pool = resolve_universe(g, plan);
  const PooledEval ev(g, pool);
  const std::size_t n = g.arity();
  const std::size_t u = pool.size();

  AxiomState st;
  std::vector<std::size_t> probe(n);

  const std::size_t pairs = for_each_index_tuple(
      u, 2, plan, derive_seed(plan.seed, "prop.pairs"), [&](std::span<const std::size_t> idx) {
        st.applicable++;
        probe.assign(n, idx[1]);
        probe[0] = idx[0];
        const double lhs = ev.eval(probe);  // G(x, y, ..., y)
        probe.assign(n, idx[0]);
        probe[0] = idx[1];
        const double rhs = static_cast<double>(n - 1) * ev.eval(probe);  // (n-1) G(y, x, ..., x)
        if (violates_le(lhs, rhs)) {
          Witness w;
          w.tuple = {ev.point(idx[0]), ev.point(idx[1])};
          w.lhs = lhs;
          w.rhs = rhs;
          w.margin = lhs - rhs;
          st.violation(std::move(w));
        }
      });

  AxiomReport report;
  report.suite = "prop";
  report.tuples_checked = pairs;
  report.seed = plan.seed;
  report.exhaustive = plan.mode == SamplePlan::Mode::exhaustive;
  report.verdicts.push_back(st.finalize("Prop2.1"));
  return report;
}

AxiomReport check_ball_inclusion(const GnMetric& g, const SamplePlan& plan,
                                 std::span<const double> radii) {
  if (radii.empty()) throw validation_error("ball inclusion check needs at least one radius");
  for (double r : radii)
    if (!(r > 0.0)) throw validation_error("ball radii must be positive");

  const std::vector<Point> pool = resolve_universe(g, plan);
  const PooledEval ev(g, pool);
  const std::size_t n = g.arity();
  const std::size_t u = pool.size();

  AxiomState st;
  std::vector<std::size_t> probe(n);
  std::vector<std::size_t> scratch;
  std::size_t probes = 0;

  for_each_index_tuple(
      u, 2, plan, derive_seed(plan.seed, "ball.pairs"), [&](std::span<const std::size_t> idx) {
        probe.assign(n, idx[1]);
        probe[0] = idx[0];
        const double gxy = ev.eval(probe);  // G(x, y, ..., y)
        for (double r : radii) {
          ++probes;
          if (!(gxy < r / static_cast<double>(n))) continue;
          st.applicable++;
          const double d = ev.dg(idx[0], idx[1], scratch);
          if (!(d < r + fp_slack(d, r))) {
            Witness w;
            w.tuple = {ev.point(idx[0]), ev.point(idx[1])};
            w.radius = r;
            w.lhs = d;
            w.rhs = r;
            w.margin = d - r;
            st.violation(std::move(w));
          }
        }
      });

  AxiomReport report;
  report.suite = "ball";
  report.tuples_checked = probes;
  report.seed = plan.seed;
  report.exhaustive = plan.mode == SamplePlan::Mode::exhaustive;
  report.verdicts.push_back(st.finalize("BallIncl"));
  return report;
}

std::pair<double, double> reverify_witness(const GnMetric& g, const std::string& axiom_id,
                                           const Witness& w) {
  const std::size_t n = g.arity();
  const auto eval = [&](const Tuple& t) { return g.evaluate(t); };

  if (axiom_id == "G1" || axiom_id == "K1" || axiom_id == "G2" || axiom_id == "K2")
    return {eval(w.tuple), 0.0};

  if (axiom_id == "G3" || axiom_id == "K3") {
    if (!w.aux_tuple) throw validation_error("witness is missing the comparison tuple");
    return {eval(*w.aux_tuple), eval(w.tuple)};
  }

  if (axiom_id == "G4" || axiom_id == "K4") {
    if (!w.aux_tuple) throw validation_error("witness is missing the rearranged tuple");
    return {eval(w.tuple), eval(*w.aux_tuple)};
  }

  if (axiom_id == "G5" || axiom_id == "K5") {
    if (!w.interpolant) throw validation_error("witness is missing the interpolating point");
    Tuple head(n, *w.interpolant);
    head[0] = w.tuple.at(0);
    Tuple tail = w.tuple;
    tail[0] = *w.interpolant;
    return {eval(w.tuple), eval(head) + eval(tail)};
  }

  if (axiom_id == "M-sym")
    return {derived_metric(g, w.tuple.at(0), w.tuple.at(1)),
            derived_metric(g, w.tuple.at(1), w.tuple.at(0))};

  if (axiom_id == "M-id") return {derived_metric(g, w.tuple.at(0), w.tuple.at(1)), 0.0};

  if (axiom_id == "M-tri")
    return {derived_metric(g, w.tuple.at(0), w.tuple.at(2)),
            derived_metric(g, w.tuple.at(0), w.tuple.at(1)) +
                derived_metric(g, w.tuple.at(1), w.tuple.at(2))};

  if (axiom_id == "Prop2.1") {
    Tuple t(n, w.tuple.at(1));
    t[0] = w.tuple.at(0);
    const double lhs = eval(t);
    t.assign(n, w.tuple.at(0));
    t[0] = w.tuple.at(1);
    return {lhs, static_cast<double>(n - 1) * eval(t)};
  }

  if (axiom_id == "BallIncl") {
    if (!w.radius) throw validation_error("witness is missing the ball radius");
    return {derived_metric(g, w.tuple.at(0), w.tuple.at(1)), *w.radius};
  }

  throw validation_error("unknown axiom id: " + axiom_id);
}

}  // namespace gnmetric
