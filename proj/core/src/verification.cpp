#include "hydronudge/verification.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "hydronudge/galerkin.hpp"
#include "hydronudge/norms.hpp"
#include "hydronudge/observation.hpp"
#include "hydronudge/operators.hpp"
#include "hydronudge/transform.hpp"

namespace hydronudge {

namespace {

// max over horizontal modes of |sum_m c(0, i, j, m) T_m(z)|
double max_value_at(const Domain& d, const SpectralField& c, double z) {
  const Eigen::RowVectorXd row = d.cheb().value_row(z, c.shape().nz);
  double worst = 0.0;
  for (int i = 0; i < c.shape().nx; ++i)
    for (int j = 0; j < c.shape().ny; ++j) {
      Complex s = 0.0;
      for (int m = 0; m < c.shape().nz; ++m) s += row(m) * c(0, i, j, m);
      worst = std::max(worst, std::abs(s));
    }
  return worst;
}

double observation_constant(const DomainSpec& spec, std::uint64_t seed) {
  const Domain d(spec);
  const ObservationOperator obs = ObservationOperator::cube(d, 4, 4, 4);
  std::vector<SpectralField> samples;
  for (int k = 0; k < 10; ++k) samples.push_back(smooth_random_field(d, 2, seed + 100 + k));
  return estimate_observation_constants(obs, samples, 2.0).c_approx;
}

}  // namespace

std::vector<OperatorCheck> verify_operators(const DomainSpec& spec, std::uint64_t seed) {
  const Domain d(spec);
  std::vector<OperatorCheck> out;
  auto add = [&](std::string name, double value, double tol) {
    out.push_back({std::move(name), value, tol, value <= tol});
  };

  const SpectralField f = smooth_random_field(d, 2, seed, 4, 8);
  const double nf = l2_norm(d, f);

  PhysicalField grid(2, d.nx(), d.ny(), d.nz());
  {
    std::uint64_t state = seed;
    for (double& x : grid.values()) {
      state = state * 6364136223846793005ULL + 1442695040888963407ULL;
      x = double(state >> 11) * 0x1.0p-53 - 0.5;
    }
  }
  add("transform round trip (physical)", (to_physical(d, to_spectral(d, grid)) - grid).max_abs() / grid.max_abs(),
      1e-11);
  add("transform round trip (spectral)", (to_spectral(d, to_physical(d, f)) - f).max_abs() / f.max_abs(), 1e-11);

  const SpectralField pf = hydrostatic_projection(d, f);
  const SpectralField ppf = hydrostatic_projection(d, pf);
  add("projection idempotence", l2_norm(d, ppf - pf) / l2_norm(d, pf), 1e-11);
  add("projection contraction", std::max(0.0, l2_norm(d, pf) / nf - 1.0), 1e-11);
  add("mean divergence after projection", mean_divergence_residual(d, pf) / nf, 1e-11);

  const SpectralField w = vertical_velocity(d, pf);
  add("w at bottom", max_value_at(d, w, -d.spec().l) / nf, 1e-14);
  add("w at top after projection", max_value_at(d, w, 0.0) / nf, 1e-10);

  const DiscreteSpace space(d);
  const SpectralField v = space.project(f);
  add("boundary conditions after Galerkin projection", bc_residual(d, v) / l2_norm(d, v), 1e-11);

  const ObservationOperator obs = ObservationOperator::cube(d, 4, 4, 4);
  std::vector<SpectralField> samples;
  for (int k = 0; k < 10; ++k) samples.push_back(smooth_random_field(d, 2, seed + 100 + k));
  const ObservationConstants c = estimate_observation_constants(obs, samples, 2.0);
  add("observation bound |J f| <= |f|", std::max(0.0, c.c_bound - 1.0), 1e-12);
  const PhysicalField jf = obs.apply(to_physical(d, f));
  add("observation idempotence", (obs.apply(jf) - jf).max_abs() / jf.max_abs(), 1e-12);
  DomainSpec fine = spec;
  fine.nx *= 2;
  fine.ny *= 2;
  fine.nz = 2 * spec.nz - 1;
  const double c_fine = observation_constant(fine, seed);
  add("observation approximation constant drift under refinement", std::abs(c_fine / c.c_approx - 1.0), 0.2);

  const PerturbedStokes op(d, NudgingParams{20.0, obs.delta()}, obs);
  const SpectralField a = op.apply(v), b = op.apply_decomposed(v);
  add("perturbed operator decomposition", l2_norm(d, a - b) / l2_norm(d, a), 1e-12);
  return out;
}

std::string format_checks(const std::vector<OperatorCheck>& checks) {
  std::ostringstream out;
  char line[256];
  for (const auto& c : checks) {
    std::snprintf(line, sizeof line, "%-58s %12.3e  <= %9.1e  %s\n", c.name.c_str(), c.value, c.tolerance,
                  c.passed ? "pass" : "FAIL");
    out << line;
  }
  return out.str();
}

}  // namespace hydronudge
