#include <gtest/gtest.h>

#include <cmath>

#include "gnmetric/gnmetric.hpp"
#include "support/test_util.hpp"

using namespace gnmetric;
using testutil::real_line;

namespace {

SequencePrefix geometric_prefix(double first, double rate, std::size_t len, double limit = 0.0) {
  SequencePrefix s;
  double v = first;
  for (std::size_t i = 0; i < len; ++i) {
    s.points.push_back(Point::scalar(limit + v));
    v *= rate;
  }
  return s;
}

SequencePrefix halving_prefix(std::size_t len) { return geometric_prefix(1.0, 0.5, len); }

}  // namespace

TEST(Convergence, HalvingSequenceConvergesWithExpectedSups) {
  const GnMetric g = GnMetric::max_pairwise(real_line(), 3);
  const SequencePrefix s = halving_prefix(31);  // 2^0 .. 2^-30
  const ConvergenceReport rep = convergence_report(g, s, Point::scalar(0), 20, 1e-5);
  EXPECT_TRUE(rep.converged);
  // Tail supremum is attained at m = 20: G(x, x, 0) = |x| = 2^-20.
  EXPECT_DOUBLE_EQ(rep.sup_iterate_repeated, std::ldexp(1.0, -20));
  EXPECT_DOUBLE_EQ(rep.sup_limit_repeated, std::ldexp(1.0, -20));
  EXPECT_TRUE(rep.cross_bound_ok);
  EXPECT_TRUE(rep.dg_bound_ok);
}

TEST(Convergence, ConstantSequenceTrivialCase) {
  const GnMetric g = GnMetric::sum_pairwise(real_line(), 4);
  SequencePrefix s;
  for (int i = 0; i < 10; ++i) s.points.push_back(Point::scalar(3.25));
  const ConvergenceReport rep = convergence_report(g, s, Point::scalar(3.25), 0, 1e-9);
  EXPECT_TRUE(rep.converged);
  EXPECT_DOUBLE_EQ(rep.sup_iterate_repeated, 0.0);
  EXPECT_DOUBLE_EQ(rep.sup_limit_repeated, 0.0);
}

TEST(Convergence, DivergentSequenceIsNotConverged) {
  const GnMetric g = GnMetric::max_pairwise(real_line(), 3);
  SequencePrefix s;
  for (int i = 0; i < 30; ++i) s.points.push_back(Point::scalar(double(i)));
  const ConvergenceReport rep = convergence_report(g, s, Point::scalar(0), 5, 0.999);
  EXPECT_FALSE(rep.converged);
  EXPECT_TRUE(rep.cross_bound_ok);  // the proof bounds hold regardless of the verdict
  EXPECT_TRUE(rep.dg_bound_ok);
}

TEST(Convergence, InputValidation) {
  const GnMetric g = GnMetric::max_pairwise(real_line(), 3);
  const SequencePrefix s = halving_prefix(5);
  EXPECT_THROW(convergence_report(g, s, Point::scalar(0), 5, 1e-3), validation_error);
  EXPECT_THROW(convergence_report(g, s, Point::scalar(0), 1, 0.0), validation_error);
  EXPECT_THROW(convergence_report(g, SequencePrefix{}, Point::scalar(0), 0, 1e-3),
               validation_error);
  EXPECT_THROW(convergence_report(g, s, Point::index(0), 1, 1e-3), validation_error);
}

TEST(Convergence, CrossAndDgBoundsHoldOnRandomSequences) {
  CounterRng rng(77);
  for (std::size_t n : {3u, 4u}) {
    for (auto kind : {MetricKind::max_pairwise, MetricKind::sum_pairwise}) {
      const GnMetric g = GnMetric::make(kind, real_line(), n);
      for (int trial = 0; trial < 20; ++trial) {
        SequencePrefix s;
        const double limit = rng.next_real(-5, 5);
        double amp = rng.next_real(0.1, 2.0);
        const double rate = rng.next_real(0.2, 0.9);
        for (int i = 0; i < 25; ++i) {
          s.points.push_back(Point::scalar(limit + amp * (trial % 2 ? 1 : -1)));
          amp *= rate;
        }
        const ConvergenceReport rep =
            convergence_report(g, s, Point::scalar(limit), 3, 1.0);
        EXPECT_TRUE(rep.cross_bound_ok);
        EXPECT_TRUE(rep.dg_bound_ok);
      }
    }
  }
}

TEST(Cauchy, HalvingSequenceTwoIndexSup) {
  const GnMetric g = GnMetric::max_pairwise(real_line(), 3);
  const SequencePrefix s = halving_prefix(41);  // 2^0 .. 2^-40
  const CauchyReport rep = cauchy_report(g, s, 10);
  // sup |2^-n1 - 2^-n2| over the tail = 2^-10 - 2^-40.
  EXPECT_DOUBLE_EQ(rep.two_index_sup, std::ldexp(1.0, -10) - std::ldexp(1.0, -40));
  EXPECT_LE(rep.two_index_sup, 9.77e-4);
  EXPECT_TRUE(rep.amplification_ok);
  EXPECT_TRUE(rep.full_exhaustive);
  EXPECT_EQ(rep.combinations_checked, 31u * 31u * 31u);
}

TEST(Cauchy, ConstantAndDivergentSequences) {
  const GnMetric g = GnMetric::max_pairwise(real_line(), 3);
  SequencePrefix c;
  for (int i = 0; i < 8; ++i) c.points.push_back(Point::scalar(1.5));
  const CauchyReport crep = cauchy_report(g, c, 0);
  EXPECT_DOUBLE_EQ(crep.two_index_sup, 0.0);
  EXPECT_DOUBLE_EQ(crep.full_sup, 0.0);
  EXPECT_TRUE(crep.amplification_ok);

  SequencePrefix d;
  for (int i = 0; i < 12; ++i) d.points.push_back(Point::scalar(double(i)));
  const CauchyReport drep = cauchy_report(g, d, 0);
  EXPECT_DOUBLE_EQ(drep.two_index_sup, 11.0);  // the largest gap in the prefix
  EXPECT_TRUE(drep.amplification_ok);
}

TEST(Cauchy, SubsampledModeOverCap) {
  const GnMetric g = GnMetric::max_pairwise(real_line(), 3);
  const SequencePrefix s = halving_prefix(40);
  const CauchyReport rep = cauchy_report(g, s, 0, /*exhaustive_cap=*/1000);
  EXPECT_FALSE(rep.full_exhaustive);
  EXPECT_EQ(rep.combinations_checked, kCauchySubsampleDraws);
  EXPECT_TRUE(rep.amplification_ok);
  // Subsampling can only undershoot the exhaustive supremum.
  const CauchyReport full = cauchy_report(g, s, 0);
  EXPECT_LE(rep.full_sup, full.full_sup);
}

TEST(Cauchy, AmplificationHoldsExhaustivelyOnRandomGeometricSequences) {
  CounterRng rng(4040);
  for (std::size_t m : {3u, 4u}) {
    for (auto kind : {MetricKind::max_pairwise, MetricKind::sum_pairwise}) {
      const GnMetric g = GnMetric::make(kind, real_line(), m);
      for (int trial = 0; trial < 10; ++trial) {
        const SequencePrefix s = geometric_prefix(rng.next_real(0.5, 3.0),
                                                  rng.next_real(0.2, 0.9), 20,
                                                  rng.next_real(-4, 4));
        const CauchyReport rep = cauchy_report(g, s, 10);
        EXPECT_TRUE(rep.full_exhaustive);
        EXPECT_TRUE(rep.amplification_ok);
        EXPECT_LE(rep.full_sup,
                  double(m - 1) * rep.two_index_sup + 1e-9);
      }
    }
  }
}

TEST(Cauchy, ConvergentPrefixIsCauchyWithQuantitativeBound) {
  // converged at tolerance t implies two_index_sup <= 2 * n * t on the same tail
  const GnMetric g = GnMetric::max_pairwise(real_line(), 3);
  const double tol = 1e-5;
  const SequencePrefix s = halving_prefix(31);
  const ConvergenceReport conv = convergence_report(g, s, Point::scalar(0), 20, tol);
  ASSERT_TRUE(conv.converged);
  const CauchyReport cau = cauchy_report(g, s, 20);
  EXPECT_LE(cau.two_index_sup, 2.0 * double(g.arity()) * tol);
}

TEST(ContinuityProbe, PerturbedSequencesSatisfyTheBound) {
  const GnMetric g = GnMetric::max_pairwise(real_line(), 3);
  const std::vector<double> centers = {0, 1, 3};
  std::vector<SequencePrefix> seqs(3);
  for (std::size_t i = 0; i < 3; ++i)
    for (int m = 0; m < 20; ++m)
      seqs[i].points.push_back(Point::scalar(centers[i] + std::ldexp(1.0, -m)));
  const Tuple limits = testutil::scalars({0, 1, 3});
  const ContinuityProbeResult res = continuity_probe(g, seqs, limits, 2);
  EXPECT_TRUE(res.holds);
  EXPECT_LE(res.worst_margin, 0.0 + 1e-12);
  EXPECT_EQ(res.checked, 18u);
}

TEST(ContinuityProbe, ConstantSequencesAreExact) {
  const GnMetric g = GnMetric::sum_pairwise(real_line(), 3);
  std::vector<SequencePrefix> seqs(3);
  const Tuple limits = testutil::scalars({2, 5, 9});
  for (std::size_t i = 0; i < 3; ++i)
    for (int m = 0; m < 6; ++m) seqs[i].points.push_back(limits[i]);
  const ContinuityProbeResult res = continuity_probe(g, seqs, limits, 0);
  EXPECT_TRUE(res.holds);
  EXPECT_DOUBLE_EQ(res.worst_margin, 0.0);
}

TEST(ContinuityProbe, RandomPerturbationsHold) {
  CounterRng rng(5);
  for (auto kind : {MetricKind::max_pairwise, MetricKind::sum_pairwise}) {
    const GnMetric g = GnMetric::make(kind, real_line(), 3);
    for (int trial = 0; trial < 25; ++trial) {
      Tuple limits;
      std::vector<SequencePrefix> seqs(3);
      for (std::size_t i = 0; i < 3; ++i) {
        const double c = rng.next_real(-10, 10);
        limits.push_back(Point::scalar(c));
        double amp = rng.next_real(0.01, 1.0);
        for (int m = 0; m < 15; ++m) {
          seqs[i].points.push_back(Point::scalar(c + amp * (m % 2 ? -1 : 1)));
          amp *= rng.next_real(0.3, 0.8);
        }
      }
      const ContinuityProbeResult res = continuity_probe(g, seqs, limits, 0);
      EXPECT_TRUE(res.holds);
    }
  }
}

TEST(ContinuityProbe, ShapeValidation) {
  const GnMetric g = GnMetric::max_pairwise(real_line(), 3);
  std::vector<SequencePrefix> two(2);
  const Tuple limits = testutil::scalars({0, 1, 2});
  EXPECT_THROW(continuity_probe(g, two, limits, 0), validation_error);

  std::vector<SequencePrefix> ragged(3);
  for (int i = 0; i < 3; ++i)
    for (int m = 0; m < 3 + i; ++m) ragged[i].points.push_back(Point::scalar(0));
  EXPECT_THROW(continuity_probe(g, ragged, limits, 0), validation_error);
}

TEST(Sequences, FiniteSpaceCarrier) {
  const gnmetric::Space s = testutil::line_embedded_space({0, 1, 3, 7});
  const GnMetric g = GnMetric::max_pairwise(s, 3);
  SequencePrefix seq;
  for (std::size_t i : {3u, 2u, 1u, 0u, 0u, 0u}) seq.points.push_back(Point::index(i));
  const ConvergenceReport conv = convergence_report(g, seq, Point::index(0), 3, 1e-9);
  EXPECT_TRUE(conv.converged);
  const CauchyReport cau = cauchy_report(g, seq, 0);
  EXPECT_DOUBLE_EQ(cau.two_index_sup, 7.0);
  EXPECT_TRUE(cau.amplification_ok);
}
