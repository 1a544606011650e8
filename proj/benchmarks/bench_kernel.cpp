#include <benchmark/benchmark.h>

#include "qpe/engine.hpp"
#include "qpe/kernel.hpp"
#include "qpe/sampler.hpp"

namespace {

void BM_KernelEval(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  qpe::SplitMix64 rng(1);
  double theta = rng.next_double();
  double grid = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(qpe::f_kernel_sq(theta - grid, n));
    grid += 1.0 / 4096.0;
    if (grid >= 1.0) grid = 0.0;
  }
}
BENCHMARK(BM_KernelEval)->Arg(8)->Arg(16)->Arg(24);

void BM_PhaseDistribution(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  qpe::SplitMix64 rng(2);
  qpe::PhaseTable pt;
  pt.t = 1.0;
  pt.n_phase = n;
  pt.thetas = {rng.next_double(), rng.next_double(), rng.next_double(), rng.next_double()};
  pt.weights = {0.4, 0.3, 0.2, 0.1};
  for (auto _ : state) {
    benchmark::DoNotOptimize(qpe::phase_distribution(pt));
  }
  state.SetComplexityN(1ll << n);
}
BENCHMARK(BM_PhaseDistribution)->Arg(8)->Arg(10)->Arg(12)->Arg(14)->Complexity();

void BM_SampleShots(benchmark::State& state) {
  qpe::SplitMix64 rng(3);
  qpe::PhaseTable pt;
  pt.t = 1.0;
  pt.n_phase = 10;
  pt.thetas = {rng.next_double(), rng.next_double()};
  pt.weights = {0.8, 0.2};
  const qpe::PhaseDistribution pd = qpe::phase_distribution(pt);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(qpe::sample_shots(pd, state.range(0), ++seed));
  }
}
BENCHMARK(BM_SampleShots)->Arg(100)->Arg(10000);

}  // namespace

BENCHMARK_MAIN();
