#include <benchmark/benchmark.h>

#include "hydronudge/dynamics.hpp"
#include "hydronudge/timestep.hpp"

namespace hn = hydronudge;

namespace {

hn::DomainSpec cube_grid(int n) {
  hn::DomainSpec s;
  s.nx = n;
  s.ny = n;
  s.nz = n + 1;
  return s;
}

void BM_Convection(benchmark::State& state) {
  const hn::Domain d(cube_grid(int(state.range(0))));
  const hn::DiscreteSpace space(d);
  const hn::SpectralField v = hn::named_field(space, "random", 1.0, 3);
  for (auto _ : state) benchmark::DoNotOptimize(hn::convection(d, v));
}
BENCHMARK(BM_Convection)->Arg(16)->Arg(32);

void BM_Step(benchmark::State& state) {
  const hn::Domain d(cube_grid(16));
  const hn::DiscreteSpace space(d);
  const hn::Forcing f = hn::Forcing::zero(d);
  const hn::PrimitiveSystem system(d, f);
  const auto scheme = state.range(0) ? hn::Scheme::Exponential : hn::Scheme::ImexCnab2;
  const auto stepper = hn::make_stepper(scheme, space, system);
  hn::SpectralField v = hn::named_field(space, "taylor-green-layer", 1.0);
  double t = 0.0;
  for (auto _ : state) {
    v = stepper->step(v, t, t + 1e-3);
    t += 1e-3;
  }
  state.SetLabel(hn::to_string(scheme));
}
BENCHMARK(BM_Step)->Arg(0)->Arg(1);

}  // namespace
