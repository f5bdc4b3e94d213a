#include <benchmark/benchmark.h>

#include "isobar3/coeff_engine.hpp"

using namespace isobar3;

static void BM_TauTable(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    auto tau = coeff::build_tau_table(n);
    benchmark::DoNotOptimize(tau.size());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_TauTable)->RangeMultiplier(8)->Range(1 << 12, 1 << 21)->Unit(benchmark::kMillisecond);

static void BM_Normalize(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto tau = coeff::build_tau_table(n);
  for (auto _ : state) {
    auto lam = coeff::normalize(tau, coeff::CuspFormSpec::delta());
    benchmark::DoNotOptimize(lam[n]);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Normalize)->Arg(1 << 16)->Arg(1 << 20)->Unit(benchmark::kMillisecond);
