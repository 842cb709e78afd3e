#include <doctest.h>

#include <cmath>

#include "hydronudge/transform.hpp"
#include "support.hpp"

using namespace hydronudge;

namespace {

double profile(double z) { return z * z * z + 0.5 * z; }
double dprofile(double z) { return 3.0 * z * z + 0.5; }
double ddprofile(double z) { return 6.0 * z; }

}  // namespace

TEST_CASE("round trips") {
  const Domain d(DomainSpec{});
  const PhysicalField f = support::sample(d, 2, [](int c, double x, double y, double z) {
    return std::sin(x + c) * std::cos(2.0 * y) * std::exp(z) + 0.3 * std::cos(7.0 * y);
  });
  const SpectralField c = to_spectral(d, f);
  CHECK((to_physical(d, c) - f).max_abs() < 1e-12);
  CHECK(imaginary_residue(d, c) < 1e-13);
  CHECK((from_padded(d, to_padded(d, c)) - c).max_abs() < 1e-12);
}

TEST_CASE("forward transform is scaled by the grid size") {
  const Domain d(DomainSpec{});
  PhysicalField f(1, d.nx(), d.ny(), d.nz());
  f.fill(2.5);
  const SpectralField c = to_spectral(d, f);
  CHECK(c(0, 0, 0, 0).real() == doctest::Approx(2.5));
  CHECK(c.max_abs() == doctest::Approx(2.5));
}

TEST_CASE("derivatives of a separable field") {
  const Domain d(DomainSpec{});
  auto f = [](int, double x, double y, double z) { return std::sin(x) * std::cos(2.0 * y) * profile(z); };
  const SpectralField c = to_spectral(d, support::sample(d, 1, f));
  const PhysicalField dx = support::sample(
      d, 1, [](int, double x, double y, double z) { return std::cos(x) * std::cos(2.0 * y) * profile(z); });
  const PhysicalField dy = support::sample(
      d, 1, [](int, double x, double y, double z) { return -2.0 * std::sin(x) * std::sin(2.0 * y) * profile(z); });
  const PhysicalField dz = support::sample(
      d, 1, [](int, double x, double y, double z) { return std::sin(x) * std::cos(2.0 * y) * dprofile(z); });
  const PhysicalField lap = support::sample(d, 1, [](int, double x, double y, double z) {
    return std::sin(x) * std::cos(2.0 * y) * (ddprofile(z) - 5.0 * profile(z));
  });
  CHECK((to_physical(d, derivative_x(d, c)) - dx).max_abs() < 1e-12);
  CHECK((to_physical(d, derivative_y(d, c)) - dy).max_abs() < 1e-12);
  CHECK((to_physical(d, derivative_z(d, c)) - dz).max_abs() < 1e-11);
  CHECK((to_physical(d, laplacian(d, c)) - lap).max_abs() < 1e-10);
}

TEST_CASE("spectral x derivative agrees with a fourth-order finite difference oracle") {
  // The gap between the two must shrink by about 2^4 per refinement.
  double previous = 0.0;
  for (int n : {16, 32, 64}) {
    DomainSpec s;
    s.nx = n;
    s.ny = 4;
    s.nz = 4;
    s.dealias = 1.0;
    const Domain d(s);
    auto f = [](int, double x, double, double) { return std::exp(std::sin(x)); };
    const PhysicalField p = support::sample(d, 1, f);
    const PhysicalField spec = to_physical(d, derivative_x(d, to_spectral(d, p)));
    const double h = d.x(1) - d.x(0);
    double gap = 0.0;
    for (int i = 0; i < n; ++i) {
      auto at = [&](int k) { return p(0, (i + k + n) % n, 0, 0); };
      const double fd = (-at(2) + 8.0 * at(1) - 8.0 * at(-1) + at(-2)) / (12.0 * h);
      gap = std::max(gap, std::abs(fd - spec(0, i, 0, 0)));
    }
    if (previous > 0.0) CHECK(previous / gap == doctest::Approx(16.0).epsilon(0.15));
    previous = gap;
  }
}

TEST_CASE("dealias removes the outer band only") {
  const Domain d(DomainSpec{});
  const PhysicalField f = support::sample(
      d, 1, [](int, double x, double y, double) { return std::cos(3.0 * x) + std::sin(7.0 * y) + std::cos(x + y); });
  SpectralField c = to_spectral(d, f);
  CHECK(masked_energy(d, c) > 0.1);
  apply_dealias(d, c);
  CHECK(masked_energy(d, c) == 0.0);
  const PhysicalField kept = support::sample(
      d, 1, [](int, double x, double y, double) { return std::cos(3.0 * x) + std::cos(x + y); });
  CHECK((to_physical(d, c) - kept).max_abs() < 1e-13);
}

TEST_CASE("hermitian split separates real and imaginary fields") {
  const Domain d(DomainSpec{});
  const PhysicalField a = support::sample(d, 1, [](int, double x, double y, double z) { return std::sin(x) * z; });
  const PhysicalField b = support::sample(d, 1, [](int, double x, double y, double) { return std::cos(2.0 * y); });
  SpectralField mixed = to_spectral(d, a);
  const SpectralField cb = to_spectral(d, b);
  for (std::size_t k = 0; k < mixed.size(); ++k) mixed.values()[k] += Complex(0.0, 1.0) * cb.values()[k];
  const auto parts = hermitian_split(mixed);
  CHECK((to_physical(d, parts[0]) - a).max_abs() < 1e-13);
  CHECK((to_physical(d, parts[1]) - b).max_abs() < 1e-13);
}
