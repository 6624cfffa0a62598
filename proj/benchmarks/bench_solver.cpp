#include <benchmark/benchmark.h>

#include "gnmetric/gnmetric.hpp"

using namespace gnmetric;

namespace {

void BM_QuasiContractionSolve(benchmark::State& state) {
  const GnMetric g =
      GnMetric::max_pairwise(Space::real_vector(1, BaseNorm::absolute_difference), 3);
  const SelfMap f = SelfMap::affine(1.0 / 3.0, 0.0);
  const double eps = std::pow(10.0, -double(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(
        solve_quasi_contraction(g, f, Point::scalar(1), 1.0 / 3.0, eps, 100000));
}

void BM_CommonFixedPointSolve(benchmark::State& state) {
  const GnMetric g =
      GnMetric::max_pairwise(Space::real_vector(1, BaseNorm::absolute_difference), 3);
  const SelfMap f = SelfMap::affine(0.5, 1.0);
  const SelfMap id = SelfMap::affine(1.0, 0.0).with_preimage(SelfMap::affine(1.0, 0.0));
  const double eps = std::pow(10.0, -double(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(
        solve_common_fixed_point(g, f, id, Point::scalar(0), 0.5, eps, 100000));
}

}  // namespace

BENCHMARK(BM_QuasiContractionSolve)->Arg(6)->Arg(9)->Arg(12);
BENCHMARK(BM_CommonFixedPointSolve)->Arg(6)->Arg(9)->Arg(12);
