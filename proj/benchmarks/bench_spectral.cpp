#include <benchmark/benchmark.h>

#include "rmt/coefficients.hpp"
#include "rmt/ensembles.hpp"
#include "rmt/measures.hpp"
#include "rmt/random.hpp"
#include "rmt/spectral.hpp"

namespace {

void BM_Decompose(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  rmt::RandomStream rng(7, 0);
  auto t = rmt::sample_gaussian_tridiag(rmt::EnsembleSpec::gaussian(2.0, n), rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rmt::decompose(t));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Decompose)->Range(64, 2048)->Complexity();

void BM_Lanczos(benchmark::State& state) {
  const std::size_t n = 512;
  rmt::RandomStream rng(7, 1);
  auto t = rmt::sample_gaussian_tridiag(rmt::EnsembleSpec::gaussian(2.0, n), rng);
  auto mu = rmt::spectral_measure(t);
  const std::size_t depth = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(rmt::lanczos_coefficients(mu, depth));
  }
}
BENCHMARK(BM_Lanczos)->Arg(10)->Arg(40)->Arg(160);

void BM_MarchenkoPasturCdf(benchmark::State& state) {
  auto law = rmt::ReferenceLaw::marchenko_pastur(0.5);
  double x = law.support_min();
  const double step = (law.support_max() - law.support_min()) / 1024.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(law.cdf(x));
    x += step;
    if (x > law.support_max()) x = law.support_min();
  }
}
BENCHMARK(BM_MarchenkoPasturCdf);

}  // namespace

BENCHMARK_MAIN();
