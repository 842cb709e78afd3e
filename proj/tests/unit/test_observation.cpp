#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hydronudge/error.hpp"
#include "hydronudge/norms.hpp"
#include "hydronudge/observation.hpp"
#include "hydronudge/transform.hpp"
#include "support.hpp"

using namespace hydronudge;
constexpr double pi = std::numbers::pi;

TEST_CASE("kind names") {
  CHECK(observation_kind_from_string("cube") == ObservationKind::CubeAverage);
  CHECK(to_string(ObservationKind::FourierLowpass) == "lowpass");
  CHECK_THROWS_AS(observation_kind_from_string("median"), ValidationError);
}

TEST_CASE("cube average against a direct cell-mean oracle") {
  const Domain d(DomainSpec{});
  const int cx = 4, cy = 2, cz = 3;
  const ObservationOperator j = ObservationOperator::cube(d, cx, cy, cz);
  CHECK(j.delta() == doctest::Approx(std::sqrt(std::pow(2 * pi / cx, 2) + std::pow(2 * pi / cy, 2) + 1.0 / 9.0)));
  const PhysicalField f = support::sample(
      d, 1, [](int, double x, double y, double z) { return std::sin(x + 0.3) * std::cos(y) + z * z * x; });
  const PhysicalField jf = j.apply(f);
  const double hz = 1.0 / cz;
  auto zcell = [&](int k) { return std::min(cz - 1, int(std::floor((d.z(k) + 1.0) / hz))); };
  const auto& w = d.cheb().weights();
  double worst = 0.0;
  for (int i = 0; i < d.nx(); ++i)
    for (int jj = 0; jj < d.ny(); ++jj)
      for (int k = 0; k < d.nz(); ++k) {
        double num = 0.0, den = 0.0;
        for (int a = 0; a < d.nx(); ++a)
          for (int b = 0; b < d.ny(); ++b)
            for (int m = 0; m < d.nz(); ++m)
              if (a / (d.nx() / cx) == i / (d.nx() / cx) && b / (d.ny() / cy) == jj / (d.ny() / cy) &&
                  zcell(m) == zcell(k)) {
                num += w(m) * f(0, a, b, m);
                den += w(m);
              }
        worst = std::max(worst, std::abs(jf(0, i, jj, k) - num / den));
      }
  CHECK(worst < 1e-13);
}

TEST_CASE("cube average is a bounded idempotent that preserves constants") {
  const Domain d(DomainSpec{});
  const ObservationOperator j = ObservationOperator::cube(d, 4, 4, 4);
  PhysicalField one(2, d.nx(), d.ny(), d.nz());
  one.fill(1.0);
  CHECK((j.apply(one) - one).max_abs() < 1e-14);
  std::vector<SpectralField> samples;
  for (int s = 0; s < 12; ++s) samples.push_back(smooth_random_field(d, 2, 40 + s));
  for (const auto& f : samples) {
    const PhysicalField jf = j.apply(to_physical(d, f));
    CHECK((j.apply(jf) - jf).max_abs() < 1e-13);
  }
  const ObservationConstants c = estimate_observation_constants(j, samples, 2.0);
  CHECK(c.c_bound <= 1.0 + 1e-12);
  CHECK(c.c_approx > 0.0);
  CHECK(c.c_approx < 1.0);
  CHECK(c.used == 12);
  samples.resize(5);
  CHECK_THROWS_AS(estimate_observation_constants(j, samples), ValidationError);
}

TEST_CASE("empty vertical cells are rejected") {
  DomainSpec s;
  s.nx = 8;
  s.ny = 8;
  s.nz = 9;
  const Domain d(s);
  CHECK_THROWS_AS(ObservationOperator::cube(d, 8, 8, 8), ValidationError);
  CHECK_THROWS_AS(ObservationOperator::cube(d, 3, 8, 2), ValidationError);
}

TEST_CASE("Fourier low-pass keeps |k| <= 1/delta") {
  const Domain d(DomainSpec{});
  const ObservationOperator j = ObservationOperator::lowpass(d, 0.5);
  CHECK(j.delta() == 0.5);
  const PhysicalField f = support::sample(d, 1, [](int, double x, double y, double z) {
    return (std::cos(2 * x) + std::cos(x + 2 * y) + std::sin(x - y)) * (1 + z);
  });
  const PhysicalField expect = support::sample(
      d, 1, [](int, double x, double y, double z) { return (std::cos(2 * x) + std::sin(x - y)) * (1 + z); });
  CHECK((j.apply(f) - expect).max_abs() < 1e-13);
}

TEST_CASE("identity observation") {
  const Domain d(DomainSpec{});
  const ObservationOperator j = ObservationOperator::identity(d);
  CHECK(j.delta() == 0.0);
  const SpectralField f = smooth_random_field(d, 2, 3);
  CHECK((j.apply(f) - f).max_abs() == 0.0);
}

TEST_CASE("complex extension agrees on real and imaginary parts") {
  const Domain d(DomainSpec{});
  const ObservationOperator j = ObservationOperator::cube(d, 4, 4, 4);
  const SpectralField a = smooth_random_field(d, 2, 5), b = smooth_random_field(d, 2, 6);
  SpectralField mixed = a;
  for (std::size_t k = 0; k < mixed.size(); ++k) mixed.values()[k] += Complex(0, 1) * b.values()[k];
  const SpectralField out = j.apply_complex(mixed);
  SpectralField expect = j.apply(a);
  const SpectralField jb = j.apply(b);
  for (std::size_t k = 0; k < expect.size(); ++k) expect.values()[k] += Complex(0, 1) * jb.values()[k];
  CHECK((out - expect).max_abs() < 1e-13);
}

TEST_CASE("smooth random fields are real and grid independent") {
  const Domain coarse(DomainSpec{});
  DomainSpec fs;
  fs.nx = 32;
  fs.ny = 32;
  fs.nz = 33;
  const Domain fine(fs);
  const SpectralField a = smooth_random_field(coarse, 2, 77), b = smooth_random_field(fine, 2, 77);
  CHECK(imaginary_residue(coarse, a) < 1e-14);
  const PhysicalField pa = to_physical(coarse, a), pb = to_physical(fine, b);
  double worst = 0.0;
  for (int c = 0; c < 2; ++c)
    for (int i = 0; i < 16; ++i)
      for (int j = 0; j < 16; ++j)
        for (int k = 0; k < 17; ++k) worst = std::max(worst, std::abs(pa(c, i, j, k) - pb(c, 2 * i, 2 * j, 2 * k)));
  CHECK(worst < 1e-12);
  CHECK((smooth_random_field(coarse, 2, 77) - a).max_abs() == 0.0);
  CHECK((smooth_random_field(coarse, 2, 78) - a).max_abs() > 0.01);
}

TEST_CASE("nudging parameters") {
  NudgingParams p{-1.0, 0.1};
  CHECK_THROWS_AS(p.validate(), ValidationError);
  p.mu = 0.0;
  CHECK_NOTHROW(p.validate());
  p.mu = 5.0;
  CHECK(p.admissible(1.0));
  CHECK_FALSE(p.admissible(0.5));
}
