#include <benchmark/benchmark.h>

#include "rmt/distributions.hpp"
#include "rmt/ensembles.hpp"
#include "rmt/random.hpp"

namespace {

void BM_GammaDraw(benchmark::State& state) {
  rmt::RandomStream rng(42, 0);
  rmt::GammaParams shape(static_cast<double>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(rmt::sample_gamma(shape, rng));
  }
}
BENCHMARK(BM_GammaDraw)->Arg(1)->Arg(100)->Arg(100000);

void BM_JacobiSample(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  auto spec = rmt::EnsembleSpec::jacobi(2.0, n, 2.0 * n, static_cast<double>(n) * n);
  rmt::RandomStream rng(42, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rmt::sample_jacobi_tridiag(spec, rng));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_JacobiSample)->Range(64, 4096)->Complexity();

void BM_LaguerreSample(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  auto spec = rmt::EnsembleSpec::laguerre(2.0, n, 2.0 * n);
  rmt::RandomStream rng(42, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rmt::sample_laguerre_tridiag(spec, rng));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_LaguerreSample)->Range(64, 4096)->Complexity();

}  // namespace

BENCHMARK_MAIN();
