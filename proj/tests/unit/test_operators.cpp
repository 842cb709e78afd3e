#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hydronudge/norms.hpp"
#include "hydronudge/observation.hpp"
#include "hydronudge/operators.hpp"
#include "hydronudge/transform.hpp"
#include "support.hpp"

using namespace hydronudge;
constexpr double pi = std::numbers::pi;

namespace {

SpectralField field(const Domain& d, std::function<double(int, double, double, double)> f) {
  return to_spectral(d, support::sample(d, 2, f));
}

Complex column_value(const Domain& d, const SpectralField& c, int comp, int i, int j, double z) {
  const Eigen::RowVectorXd row = d.cheb().value_row(z, c.nz());
  Complex s = 0.0;
  for (int m = 0; m < c.nz(); ++m) s += row(m) * c(comp, i, j, m);
  return s;
}

}  // namespace

TEST_CASE("vertical average of a linear profile") {
  const Domain d(DomainSpec{});
  const SpectralField v = field(d, [](int c, double x, double, double z) { return c == 0 ? std::cos(x) * z : 1.0; });
  const PhysicalField avg = to_physical(d, vertical_average(d, v));
  const PhysicalField expect =
      support::sample(d, 2, [](int c, double x, double, double) { return c == 0 ? -0.5 * std::cos(x) : 1.0; });
  CHECK((avg - expect).max_abs() < 1e-13);
}

TEST_CASE("horizontal divergence and vertical velocity") {
  const Domain d(DomainSpec{});
  // v = (cos x z, 0): div = -sin x z, w = -int_{-1}^z div = sin x (z^2 - 1) / 2
  const SpectralField v = field(d, [](int c, double x, double, double z) { return c == 0 ? std::cos(x) * z : 0.0; });
  const PhysicalField div = to_physical(d, horizontal_divergence(d, v));
  CHECK((div - support::sample(d, 1, [](int, double x, double, double z) { return -std::sin(x) * z; })).max_abs() <
        1e-13);
  const SpectralField w = vertical_velocity(d, v);
  CHECK(w.nz() == d.nz() + 1);
  // sin x has coefficient -i/2 at kx = 1
  for (double z : {-1.0, -0.7, -0.25, 0.0}) {
    const Complex got = column_value(d, w, 0, 1, 0, z);
    CHECK(std::abs(got - Complex(0.0, -0.5) * 0.5 * (z * z - 1.0)) < 1e-14);
  }
}

TEST_CASE("hydrostatic projection") {
  const Domain d(DomainSpec{});
  // A z-independent horizontal gradient is removed entirely.
  const SpectralField grad =
      field(d, [](int c, double x, double y, double) { return c == 0 ? -std::sin(x) * std::cos(2 * y) : -2.0 * std::cos(x) * std::sin(2 * y); });
  CHECK(l2_norm(d, hydrostatic_projection(d, grad)) < 1e-13);
  // Fields whose vertical mean is divergence free are left alone.
  const SpectralField keep = field(d, [](int c, double x, double y, double z) {
    return c == 0 ? std::cos(y) + std::cos(x) * (z + 0.5) : std::sin(x) * z * z;
  });
  const SpectralField pk = hydrostatic_projection(d, keep);
  CHECK(mean_divergence_residual(d, keep) < 1e-13);
  CHECK(l2_norm(d, pk - keep) < 1e-13);
  const SpectralField base = field(d, [](int c, double x, double y, double z) {
    return c == 0 ? std::cos(y) + std::cos(x) * (z + 0.5) : 0.0;
  });
  CHECK(l2_norm(d, hydrostatic_projection(d, base) - base) < 1e-13);
  CHECK(mean_divergence_residual(d, pk) < 1e-13);
}

TEST_CASE("projection property: idempotent contraction") {
  const Domain d(DomainSpec{});
  for (std::uint64_t seed : {1u, 2u, 3u, 4u}) {
    const SpectralField f = smooth_random_field(d, 2, seed);
    const SpectralField p = hydrostatic_projection(d, f);
    CHECK(l2_norm(d, hydrostatic_projection(d, p) - p) <= 1e-13 * l2_norm(d, f));
    CHECK(l2_norm(d, p) <= l2_norm(d, f) * (1.0 + 1e-14));
    // orthogonality of the removed part
    CHECK(std::abs(l2_inner(d, f - p, p)) <= 1e-12 * l2_norm(d, f) * l2_norm(d, f));
  }
}

TEST_CASE("Stokes operator on an eigenfunction") {
  const Domain d(DomainSpec{});
  // cos(y) cos(pi z / 2): Dirichlet bottom, Neumann top, eigenvalue 1 + pi^2/4
  const SpectralField v =
      field(d, [](int c, double, double y, double z) { return c == 0 ? std::cos(y) * std::cos(pi * z / 2) : 0.0; });
  CHECK(bc_residual(d, v) < 1e-10);
  const SpectralField av = apply_stokes(d, v);
  CHECK(l2_norm(d, av - (1.0 + pi * pi / 4.0) * v) < 1e-9 * l2_norm(d, av));
}

TEST_CASE("boundary projection") {
  const Domain d(DomainSpec{});
  const SpectralField f = smooth_random_field(d, 2, 9);
  CHECK(bc_residual(d, f) > 1e-3);
  const SpectralField g = project_bc(d, f);
  CHECK(bc_residual(d, g) < 1e-12);
  CHECK(l2_norm(d, project_bc(d, g) - g) < 1e-12);
}
