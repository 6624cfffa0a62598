#include <benchmark/benchmark.h>

#include "gnmetric/gnmetric.hpp"

using namespace gnmetric;

namespace {

void BM_GAxiomSuite(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const std::size_t tuples = static_cast<std::size_t>(state.range(1));
  const GnMetric g =
      GnMetric::max_pairwise(Space::real_vector(1, BaseNorm::absolute_difference), n);
  SamplePlan plan;
  plan.mode = SamplePlan::Mode::random;
  plan.tuple_count = tuples;
  plan.seed = 7;
  CounterRng rng(3);
  std::vector<Point> pool;
  for (int i = 0; i < 64; ++i) pool.push_back(Point::scalar(rng.next_real(-10, 10)));
  plan.point_pool = std::move(pool);

  for (auto _ : state) benchmark::DoNotOptimize(check_g_axioms(g, plan));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * tuples));
}

void BM_ExhaustiveFiniteSuite(benchmark::State& state) {
  const std::size_t m = static_cast<std::size_t>(state.range(0));
  std::vector<std::vector<double>> base(m, std::vector<double>(m, 0.0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) base[i][j] = i > j ? double(i - j) : double(j - i);
  const GnMetric g = GnMetric::max_pairwise(Space::finite_table(base), 3);
  SamplePlan plan;
  plan.mode = SamplePlan::Mode::exhaustive;
  for (auto _ : state) benchmark::DoNotOptimize(check_g_axioms(g, plan));
}

}  // namespace

BENCHMARK(BM_GAxiomSuite)->Args({3, 1000})->Args({4, 1000})->Args({5, 1000});
BENCHMARK(BM_ExhaustiveFiniteSuite)->Arg(4)->Arg(6)->Arg(8);
