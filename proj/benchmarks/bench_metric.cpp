#include <benchmark/benchmark.h>

#include "gnmetric/gnmetric.hpp"

using namespace gnmetric;

namespace {

Space real_line() { return Space::real_vector(1, BaseNorm::absolute_difference); }

Tuple random_tuple(std::size_t n, CounterRng& rng) {
  Tuple t;
  t.reserve(n);
  for (std::size_t i = 0; i < n; ++i) t.push_back(Point::scalar(rng.next_real(-10, 10)));
  return t;
}

void BM_Evaluate(benchmark::State& state, MetricKind kind) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const GnMetric g = GnMetric::make(kind, real_line(), n);
  CounterRng rng(1);
  const Tuple t = random_tuple(n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(g.evaluate(t));
}

void BM_DerivedMetric(benchmark::State& state) {
  const GnMetric g = GnMetric::max_pairwise(real_line(), static_cast<std::size_t>(state.range(0)));
  const Point x = Point::scalar(0.3), y = Point::scalar(4.7);
  for (auto _ : state) benchmark::DoNotOptimize(derived_metric(g, x, y));
}

}  // namespace

BENCHMARK_CAPTURE(BM_Evaluate, max_pairwise, MetricKind::max_pairwise)->Arg(3)->Arg(5)->Arg(8);
BENCHMARK_CAPTURE(BM_Evaluate, sum_pairwise, MetricKind::sum_pairwise)->Arg(3)->Arg(5)->Arg(8);
BENCHMARK_CAPTURE(BM_Evaluate, cyclic_perimeter_avg, MetricKind::cyclic_perimeter_avg)
    ->Arg(3)
    ->Arg(5)
    ->Arg(8);
BENCHMARK(BM_DerivedMetric)->Arg(3)->Arg(5);
