#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hydronudge/galerkin.hpp"
#include "hydronudge/norms.hpp"
#include "hydronudge/observation.hpp"
#include "hydronudge/operators.hpp"

using namespace hydronudge;
constexpr double pi = std::numbers::pi;

namespace {

// Per kept mode: nz - 2 coefficients per component after the two boundary
// conditions, minus one mean-divergence constraint when k != 0.
int expected_dimension(int n, int nz) {
  const int kmax = std::min(int(std::floor(2.0 / 3.0 * n / 2 + 1e-9)), n / 2 - 1);
  const int modes = (2 * kmax + 1) * (2 * kmax + 1);
  return (modes - 1) * (2 * (nz - 2) - 1) + 2 * (nz - 2);
}

DomainSpec grid(int n, int nz, double l = 1.0) {
  DomainSpec s;
  s.nx = n;
  s.ny = n;
  s.nz = nz;
  s.l = l;
  return s;
}

}  // namespace

TEST_CASE("dimension of the discrete space") {
  for (auto [n, nz] : {std::pair{8, 9}, std::pair{16, 17}, std::pair{12, 7}}) {
    const Domain d(grid(n, nz));
    CHECK(DiscreteSpace(d).dimension() == expected_dimension(n, nz));
  }
}

TEST_CASE("smallest Stokes eigenvalue is (pi / 2 l)^2") {
  for (double l : {1.0, 2.0}) {
    const Domain d(grid(8, 9, l));
    CHECK(DiscreteSpace(d).min_stokes_eigenvalue() == doctest::Approx(pi * pi / (4 * l * l)).epsilon(1e-10));
  }
}

TEST_CASE("coordinates are L2 isometric and invertible on V_h") {
  const Domain d(grid(8, 9));
  const DiscreteSpace space(d);
  for (std::uint64_t s : {1u, 2u, 3u}) {
    const SpectralField v = space.project(smooth_random_field(d, 2, s));
    const Eigen::VectorXcd a = space.coords(v);
    CHECK(a.norm() == doctest::Approx(l2_norm(d, v)).epsilon(1e-13));
    CHECK((space.from_coords(a) - v).max_abs() < 1e-13);
    CHECK(bc_residual(d, v) < 1e-12);
    CHECK(mean_divergence_residual(d, v) < 1e-13);
    CHECK((space.project(v) - v).max_abs() < 1e-13);
  }
}

TEST_CASE("projection is orthogonal in L2") {
  const Domain d(grid(8, 9));
  const DiscreteSpace space(d);
  const SpectralField f = smooth_random_field(d, 2, 5);
  const SpectralField p = space.project(f);
  const SpectralField v = space.project(smooth_random_field(d, 2, 6));
  CHECK(std::abs(l2_inner(d, f - p, v)) < 1e-13 * l2_norm(d, f) * l2_norm(d, v));
}

TEST_CASE("Galerkin Stokes matrix is symmetric positive and matches the operator") {
  const Domain d(grid(8, 9));
  const DiscreteSpace space(d);
  const SpectralField u = space.project(smooth_random_field(d, 2, 1));
  const SpectralField v = space.project(smooth_random_field(d, 2, 2));
  const Eigen::VectorXcd a = space.coords(u), b = space.coords(v);
  CHECK(std::abs(a.dot(space.apply_stokes(b)) - b.dot(space.apply_stokes(a))) < 1e-12 * a.norm() * b.norm() * 100);
  CHECK(a.dot(space.apply_stokes(a)).real() >= space.min_stokes_eigenvalue() * a.squaredNorm() * (1 - 1e-12));
  const Eigen::VectorXcd direct = space.coords(apply_stokes(d, u));
  CHECK((direct - space.apply_stokes(a)).norm() < 1e-12 * direct.norm());
}

TEST_CASE("perturbed Stokes operator") {
  const Domain d(grid(8, 9));
  const DiscreteSpace space(d);
  const ObservationOperator cube = ObservationOperator::cube(d, 4, 4, 2);
  const SpectralField v = space.project(smooth_random_field(d, 2, 4));
  const PerturbedStokes op(d, NudgingParams{15.0, cube.delta()}, cube);
  CHECK(l2_norm(d, op.apply(v) - op.apply_decomposed(v)) < 1e-12 * l2_norm(d, op.apply(v)));
  const PerturbedStokes none(d, NudgingParams{0.0, cube.delta()}, cube);
  CHECK(l2_norm(d, none.apply(v) - apply_stokes(d, v)) < 1e-12 * l2_norm(d, v));
  const ObservationOperator id = ObservationOperator::identity(d);
  const PerturbedStokes shifted(d, NudgingParams{7.0, 0.0}, id);
  CHECK(l2_norm(d, shifted.apply(v) - (apply_stokes(d, v) + 7.0 * v)) < 1e-12 * l2_norm(d, shifted.apply(v)));
  CHECK(l2_norm(d, apply_perturbed(op, v) - op.apply(v)) == 0.0);
}
