#include <benchmark/benchmark.h>

#include "hydronudge/spectral_analysis.hpp"

namespace hn = hydronudge;

namespace {

void BM_AssemblePerturbed(benchmark::State& state) {
  hn::DomainSpec s;
  s.nx = 8;
  s.ny = 8;
  s.nz = int(state.range(0));
  const hn::Domain d(s);
  const hn::DiscreteSpace space(d);
  const auto obs = hn::ObservationOperator::cube(d, 4, 4, 4);
  const hn::PerturbedStokes op(d, hn::NudgingParams{20.0, obs.delta()}, obs);
  for (auto _ : state) benchmark::DoNotOptimize(hn::assemble_perturbed(space, op).matrix.data());
  state.counters["dim"] = space.dimension();
}
BENCHMARK(BM_AssemblePerturbed)->Arg(9)->Arg(17)->Unit(benchmark::kMillisecond);

void BM_EigenDecompose(benchmark::State& state) {
  hn::DomainSpec s;
  s.nx = 8;
  s.ny = 8;
  s.nz = 9;
  const hn::Domain d(s);
  const hn::DiscreteSpace space(d);
  const auto obs = hn::ObservationOperator::cube(d, 8, 8, 4);
  const hn::DenseOperator a = hn::assemble_perturbed(space, hn::PerturbedStokes(d, {20.0, obs.delta()}, obs));
  for (auto _ : state) benchmark::DoNotOptimize(hn::eigen_decompose(a, false).values.data());
}
BENCHMARK(BM_EigenDecompose)->Unit(benchmark::kMillisecond);

}  // namespace
