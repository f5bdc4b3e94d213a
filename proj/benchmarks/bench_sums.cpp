#include <benchmark/benchmark.h>

#include "isobar3/coeff_engine.hpp"
#include "isobar3/isobaric.hpp"
#include "isobar3/l_eval.hpp"

using namespace isobar3;

namespace {
const coeff::LambdaTable& table() {
  static const auto lam = coeff::normalize(coeff::build_tau_table(1 << 20), coeff::CuspFormSpec::delta());
  return lam;
}
}  // namespace

static void BM_Isobaric(benchmark::State& state) {
  const auto& lam = table();
  for (auto _ : state) {
    auto iso = sums::build_isobaric(lam, static_cast<unsigned>(state.range(0)));
    benchmark::DoNotOptimize(iso[iso.size()]);
  }
  state.SetItemsProcessed(state.iterations() * lam.size());
}
BENCHMARK(BM_Isobaric)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

static void BM_BlockMaxima(benchmark::State& state) {
  const auto iso = sums::build_isobaric(table());
  for (auto _ : state) {
    auto b = sums::dyadic_block_maxima(iso, 0.8393455120319420, 10, 20);
    benchmark::DoNotOptimize(b.max_ratio.back());
  }
}
BENCHMARK(BM_BlockMaxima)->Unit(benchmark::kMillisecond);

static void BM_L1(benchmark::State& state) {
  const auto& lam = table();
  for (auto _ : state) benchmark::DoNotOptimize(lfun::l1_phi(lam, 10).value);
}
BENCHMARK(BM_L1)->Unit(benchmark::kMillisecond);
