#include <benchmark/benchmark.h>

#include "foresight/quant.hpp"

using namespace foresight;

static void BM_SimulatePath(benchmark::State& state) {
  const quant::ParamSet p;
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(quant::simulate_path(p, {0.9, 0.9}, 10.0, 0.1, seed++));
}
BENCHMARK(BM_SimulatePath);

static void BM_MonteCarlo(benchmark::State& state) {
  const quant::ParamSet p;
  const auto runs = static_cast<std::size_t>(state.range(0));
  const auto threads = static_cast<std::size_t>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(quant::monte_carlo(p, {0.9, 0.9}, 10.0, 0.1, runs, 42, {.threads = threads}));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MonteCarlo)->Args({1000, 1})->Args({1000, 4})->Args({10000, 0})->Unit(benchmark::kMillisecond);
