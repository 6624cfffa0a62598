#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gnmetric/metric.hpp"
#include "gnmetric/point.hpp"

namespace gnmetric {

/// How to sample the check domain. Exhaustive mode enumerates every tuple
/// over the point universe (finite space indices, or an explicit pool);
/// random mode draws `tuple_count` tuples with replacement from a
/// counter-based stream seeded by `seed`. Real-vector spaces always need
/// an explicit pool.
struct SamplePlan {
  enum class Mode { exhaustive, random };
  Mode mode = Mode::random;
  std::size_t tuple_count = 1000;
  std::uint64_t seed = 0;
  std::optional<std::vector<Point>> point_pool;
};

enum class Verdict { pass, fail, not_applicable };
std::string to_string(Verdict v);

/// A reproducible counterexample. `tuple` is the primary offending tuple;
/// depending on the axiom there may be an auxiliary tuple (permuted /
/// rearranged form), an interpolating point, or a ball radius. lhs/rhs are
/// the two sides of the violated relation as computed by the metric, and
/// margin is the amount by which the relation failed (positive).
struct Witness {
  Tuple tuple;
  std::optional<Tuple> aux_tuple;
  std::optional<Point> interpolant;
  std::optional<double> radius;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
};

struct AxiomVerdict {
  std::string axiom_id;  // G1..G5, K1..K5, M-sym, M-id, M-tri, Prop2.1, BallIncl
  Verdict verdict = Verdict::not_applicable;
  std::optional<Witness> witness;
  std::size_t applicable = 0;  // configurations the axiom actually applied to
};

struct AxiomReport {
  std::string suite;  // "g", "k", "metric", "prop", "ball"
  std::vector<AxiomVerdict> verdicts;
  std::size_t tuples_checked = 0;
  std::uint64_t seed = 0;
  bool exhaustive = false;

  bool all_pass() const;
  const AxiomVerdict* find(const std::string& axiom_id) const;
};

/// Reading of the side condition on the tail points x2..xn in the third
/// axiom. The default requires the tail to be pairwise distinct; the
/// alternative only requires two distinct tail points.
enum class TailCondition { pairwise_distinct, any_two_distinct };

/// Verify the five generalized n-metric axioms on sampled (or exhaustive)
/// tuples. Per sampled tuple (x1..xn) this checks:
///   G1  G(a,...,a) = 0 on the constant tuple built from x1,
///   G2  G(a,...,a,b) > 0 for the first b != a found in the tuple,
///   G3  G(x1,...,x1,x2) <= G(x1,...,xn) when the tail satisfies `tail`,
///   G4  invariance under all n! permutations (n <= 5; 50 sampled above),
///   G5  G(x1,...,xn) <= G(x1,w,...,w) + G(w,x2,...,xn) over interpolants w
///       (every pool point when exhaustive, one drawn point when random).
/// The first violation of each axiom is recorded; the witness kept is the
/// lexicographically smallest violating tuple, so the report is invariant
/// under any partitioning of the scan.
AxiomReport check_g_axioms(const GnMetric& g, const SamplePlan& plan,
                           TailCondition tail = TailCondition::pairwise_distinct);

/// Same checks with the symmetry axiom restricted to the n cyclic shifts.
AxiomReport check_k_axioms(const GnMetric& k, const SamplePlan& plan,
                           TailCondition tail = TailCondition::pairwise_distinct);

/// Verify that d_G is a bona fide metric: symmetry and identity of
/// indiscernibles on sampled pairs, triangle inequality on sampled triples.
AxiomReport check_metric_axioms(const GnMetric& g, const SamplePlan& plan);

/// Probe G(x,y,...,y) <= (n-1) * G(y,x,...,x) on sampled pairs.
AxiomReport check_inequality_prop(const GnMetric& g, const SamplePlan& plan);

/// Ball inclusion probe: whenever G(x,y,...,y) < r/n, require d_G(x,y) < r,
/// for every sampled pair and every radius in `radii`.
AxiomReport check_ball_inclusion(const GnMetric& g, const SamplePlan& plan,
                                 std::span<const double> radii);

/// Recompute the two sides of a reported violation through the public
/// evaluation path. Checkers compute witnesses through the same arithmetic,
/// so the result reproduces the recorded lhs/rhs exactly (0 ulp).
std::pair<double, double> reverify_witness(const GnMetric& g, const std::string& axiom_id,
                                           const Witness& w);

}  // namespace gnmetric
