// Serial reference vs OpenMP sweep on the same ensemble.

#include <benchmark/benchmark.h>

#include "fockgauge/verify.hpp"

namespace {

fockgauge::SweepConfig config(std::int64_t n_pure) {
  fockgauge::SweepConfig c;
  c.n_pure = static_cast<std::size_t>(n_pure);
  c.n_mixed = static_cast<std::size_t>(n_pure / 10);
  c.cutoff = 32;
  c.mixed_cutoff = 16;
  c.rank = 8;
  c.seed = 1;
  return c;
}

void BM_SweepSerial(benchmark::State& state) {
  const auto c = config(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fockgauge::sweep_serial(c));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(c.n_pure + c.n_mixed));
}

void BM_SweepParallel(benchmark::State& state) {
  const auto c = config(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fockgauge::sweep(c));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(c.n_pure + c.n_mixed));
}

}  // namespace

BENCHMARK(BM_SweepSerial)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SweepParallel)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
