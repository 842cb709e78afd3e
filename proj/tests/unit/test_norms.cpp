#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hydronudge/error.hpp"
#include "hydronudge/norms.hpp"
#include "hydronudge/transform.hpp"
#include "support.hpp"

using namespace hydronudge;
constexpr double pi = std::numbers::pi;

TEST_CASE("Lebesgue norms of constants and sines") {
  const Domain d(DomainSpec{});
  PhysicalField one(1, d.nx(), d.ny(), d.nz());
  one.fill(1.0);
  const double vol = 4.0 * pi * pi;
  CHECK(lebesgue_norm(d, one, 2.0) == doctest::Approx(std::sqrt(vol)).epsilon(1e-12));
  CHECK(lebesgue_norm(d, one, 4.0) == doctest::Approx(std::pow(vol, 0.25)).epsilon(1e-12));
  CHECK(lebesgue_norm(d, 3.0 * one, kInfinity) == doctest::Approx(3.0));
  const PhysicalField s = support::sample(d, 1, [](int, double x, double, double) { return std::sin(x); });
  CHECK(lebesgue_norm(d, s, 2.0) == doctest::Approx(std::sqrt(2.0) * pi).epsilon(1e-12));
  // |sin|^4 integrates to 3/8 of the period
  CHECK(lebesgue_norm(d, s, 4.0) == doctest::Approx(std::pow(4.0 * pi * pi * 3.0 / 8.0, 0.25)).epsilon(1e-12));
}

TEST_CASE("pointwise magnitude of vector fields") {
  const Domain d(DomainSpec{});
  PhysicalField v(2, d.nx(), d.ny(), d.nz());
  for (std::size_t k = 0; k < v.size() / 2; ++k) {
    v.values()[k] = 3.0;
    v.values()[k + v.size() / 2] = 4.0;
  }
  CHECK(lebesgue_norm(d, v, kInfinity) == doctest::Approx(5.0));
  CHECK(lebesgue_norm(d, v, 2.0) == doctest::Approx(5.0 * 2.0 * pi));
}

TEST_CASE("Sobolev norms in closed form") {
  const Domain d(DomainSpec{});
  const SpectralField s =
      to_spectral(d, support::sample(d, 1, [](int, double x, double, double) { return std::sin(x); }));
  const double l2 = std::sqrt(2.0) * pi;
  CHECK(sobolev_norm(d, s, 0.0, 2.0) == doctest::Approx(l2).epsilon(1e-12));
  CHECK(sobolev_norm(d, s, 1.0, 2.0) == doctest::Approx(std::sqrt(2.0) * l2).epsilon(1e-12));
  CHECK(sobolev_norm(d, s, 2.0, 2.0) == doctest::Approx(std::sqrt(3.0) * l2).epsilon(1e-12));
  CHECK(sobolev_norm(d, s, 0.5, 2.0) == doctest::Approx(std::pow(2.0, 0.25) * l2).epsilon(1e-12));
  CHECK(homogeneous_h2_norm(d, s) == doctest::Approx(l2).epsilon(1e-10));
  CHECK(gradient_norm(d, s) == doctest::Approx(l2).epsilon(1e-12));
  // z-profile: f = z on (-1, 0): |f|^2 = 4 pi^2 / 3, |f'|^2 = 4 pi^2
  const SpectralField z = to_spectral(d, support::sample(d, 1, [](int, double, double, double zz) { return zz; }));
  CHECK(sobolev_norm(d, z, 1.0, 2.0) == doctest::Approx(std::sqrt(4.0 * pi * pi * (1.0 / 3.0 + 1.0))));
}

TEST_CASE("exact L2 inner product") {
  const Domain d(DomainSpec{});
  const SpectralField a = to_spectral(
      d, support::sample(d, 1, [](int, double x, double, double z) { return std::cos(x) * std::pow(z, 12); }));
  const SpectralField b = to_spectral(
      d, support::sample(d, 1, [](int, double x, double, double z) { return std::cos(x) * std::pow(z, 11); }));
  // int_{-1}^0 z^23 dz = -1/24, horizontal factor 2 pi^2
  CHECK(l2_inner(d, a, b) == doctest::Approx(-2.0 * pi * pi / 24.0).epsilon(1e-12));
  CHECK(l2_inner(d, a, b) == doctest::Approx(l2_inner(d, b, a)));
  CHECK(l2_norm(d, a) == doctest::Approx(std::sqrt(2.0 * pi * pi / 25.0)).epsilon(1e-12));
}

TEST_CASE("time-weighted norm against closed forms") {
  TimeSeries ones;
  const int n = 2001;
  for (int k = 0; k < n; ++k) ones.push(double(k) / (n - 1), 1.0);
  NormSpec spec;
  CHECK(time_weighted_norm(ones, spec) == doctest::Approx(1.0));
  spec.eta = 0.75;  // int t^{1/2} dt
  CHECK(time_weighted_norm(ones, spec) == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-4));
  spec.eta = 1.0;
  spec.gamma = 1.5;
  CHECK(time_weighted_norm(ones, spec) == doctest::Approx(std::sqrt((std::exp(3.0) - 1.0) / 3.0)).epsilon(1e-6));
  spec = NormSpec::critical(4.0, 4.0);
  CHECK(spec.eta == doctest::Approx(0.5));
  TimeSeries single;
  single.push(0.0, 3.0);
  CHECK(time_weighted_norm(single, NormSpec{}) == 0.0);
}

TEST_CASE("norm spec and series validation") {
  NormSpec s;
  s.p = 0.5;
  CHECK_THROWS_AS(s.validate(), ValidationError);
  TimeSeries t;
  t.push(1.0, 0.0);
  t.push(1.0, 0.0);
  CHECK_THROWS_AS(t.validate(), ValidationError);
}
