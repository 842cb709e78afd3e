#include <benchmark/benchmark.h>

#include "hydronudge/observation.hpp"
#include "hydronudge/transform.hpp"

namespace hn = hydronudge;

namespace {

hn::DomainSpec cube_grid(int n) {
  hn::DomainSpec s;
  s.nx = n;
  s.ny = n;
  s.nz = n + 1;
  return s;
}

void BM_RoundTrip(benchmark::State& state) {
  const hn::Domain d(cube_grid(int(state.range(0))));
  const hn::SpectralField c = hn::smooth_random_field(d, 2, 1);
  for (auto _ : state) benchmark::DoNotOptimize(hn::to_spectral(d, hn::to_physical(d, c)));
}
BENCHMARK(BM_RoundTrip)->Arg(16)->Arg(32);

void BM_PaddedRoundTrip(benchmark::State& state) {
  const hn::Domain d(cube_grid(int(state.range(0))));
  const hn::SpectralField c = hn::smooth_random_field(d, 2, 1);
  for (auto _ : state) benchmark::DoNotOptimize(hn::from_padded(d, hn::to_padded(d, c)));
}
BENCHMARK(BM_PaddedRoundTrip)->Arg(16)->Arg(32);

void BM_Laplacian(benchmark::State& state) {
  const hn::Domain d(cube_grid(int(state.range(0))));
  const hn::SpectralField c = hn::smooth_random_field(d, 2, 1);
  for (auto _ : state) benchmark::DoNotOptimize(hn::laplacian(d, c));
}
BENCHMARK(BM_Laplacian)->Arg(16)->Arg(32);

}  // namespace
