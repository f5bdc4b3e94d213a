#include <benchmark/benchmark.h>

#include "isobar3/budget.hpp"
#include "isobar3/exponent_pairs.hpp"

using namespace isobar3;

static void BM_PairSearch(benchmark::State& state) {
  for (auto _ : state) {
    auto r = expo::search_pairs(static_cast<unsigned>(state.range(0)));
    benchmark::DoNotOptimize(r.words_enumerated);
  }
}
BENCHMARK(BM_PairSearch)->DenseRange(4, 10, 2)->Unit(benchmark::kMillisecond);

static void BM_Budget(benchmark::State& state) {
  const auto pair = expo::a_process(expo::bourgain_pair());
  for (auto _ : state) benchmark::DoNotOptimize(expo::verify_budget(pair).delta_max);
}
BENCHMARK(BM_Budget);
