#include <benchmark/benchmark.h>

#include "qpe/eigen.hpp"
#include "qpe/hamiltonian.hpp"
#include "qpe/sampler.hpp"
#include "qpe/spectrum.hpp"
#include "qpe/trotter.hpp"

namespace {

qpe::CMatrix random_hermitian(std::size_t n, std::uint64_t seed) {
  qpe::SplitMix64 rng(seed);
  qpe::CMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    m(r, r) = rng.next_double();
    for (std::size_t c = r + 1; c < n; ++c) {
      const qpe::cplx v{rng.next_double() - 0.5, rng.next_double() - 0.5};
      m(r, c) = v;
      m(c, r) = std::conj(v);
    }
  }
  return m;
}

void BM_JacobiHermitian(benchmark::State& state) {
  const qpe::CMatrix m = random_hermitian(state.range(0), 11);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qpe::jacobi_hermitian(m));
  }
}
BENCHMARK(BM_JacobiHermitian)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

void BM_TrotterStep(benchmark::State& state) {
  const qpe::LCUHamiltonian h =
      qpe::parse_lcu("0.5 XYI\n0.3 ZZI\n-0.2 IYX\n0.15 ZIZ\n0.1 XIX");
  const qpe::TrotterSpec spec = qpe::make_trotter_spec(h, 1, state.range(0), 0, 0.1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qpe::trotter_step(h, spec));
  }
}
BENCHMARK(BM_TrotterStep)->Arg(8)->Arg(64)->Arg(512);

void BM_EffectiveSpectrum(benchmark::State& state) {
  const qpe::LCUHamiltonian h =
      qpe::parse_lcu("0.5 XYI\n0.3 ZZI\n-0.2 IYX\n0.15 ZIZ\n0.1 XIX");
  const qpe::Spectrum s = qpe::diagonalize(qpe::dense_matrix(h));
  const qpe::TrotterSpec spec = qpe::make_trotter_spec(h, 1, state.range(0), 0, 0.1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qpe::effective_spectrum(h, s, spec));
  }
}
BENCHMARK(BM_EffectiveSpectrum)->Arg(16)->Arg(128);

}  // namespace

BENCHMARK_MAIN();
