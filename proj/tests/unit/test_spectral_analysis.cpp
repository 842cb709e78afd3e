#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include <unsupported/Eigen/MatrixFunctions>

#include "hydronudge/error.hpp"
#include "hydronudge/spectral_analysis.hpp"

using namespace hydronudge;
constexpr double pi = std::numbers::pi;

namespace {

DomainSpec small() {
  DomainSpec s;
  s.nx = 8;
  s.ny = 8;
  s.nz = 9;
  return s;
}

std::complex<double> kernel_series(std::complex<double> lambda, double t, double beta, double gamma) {
  // e^{-lambda t} sum_n (lambda - gamma)^n t^{n + 1 - beta} / (n! (n + 1 - beta))
  std::complex<double> sum = 0.0, power = 1.0;
  double fact = 1.0;
  for (int n = 0; n < 200; ++n) {
    if (n > 0) {
      power *= (lambda - gamma) * t;
      fact *= n;
    }
    sum += power / fact * std::pow(t, 1.0 - beta) / (n + 1.0 - beta);
  }
  return std::exp(-lambda * t) * sum;
}

}  // namespace

TEST_CASE("dense Stokes spectrum matches closed forms") {
  const Domain d(small());
  const DiscreteSpace space(d);
  const Spectrum s = eigen_decompose(assemble_stokes(space), false);
  std::vector<double> got;
  for (Eigen::Index k = 0; k < s.values.size(); ++k) got.push_back(s.values(k).real());
  // k = 0 vertical modes ((m + 1/2) pi)^2 appear twice (two components);
  // |k| = 1 modes 1 + pi^2/4 appear for 4 wavevectors, one velocity each.
  auto count_near = [&](double v) {
    return std::count_if(got.begin(), got.end(), [&](double x) { return std::abs(x - v) < 1e-6 * v; });
  };
  CHECK(got.front() == doctest::Approx(pi * pi / 4).epsilon(1e-12));
  CHECK(count_near(pi * pi / 4) == 2);
  CHECK(count_near(9 * pi * pi / 4) == 2);
  CHECK(count_near(1 + pi * pi / 4) == 4);
  CHECK(s.values.imag().cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("spectral gap: zero margin at mu = 0 and exact shift for identity") {
  const Domain d(small());
  const DiscreteSpace space(d);
  const ObservationOperator id = ObservationOperator::identity(d);
  const ObservationOperator cube = ObservationOperator::cube(d, 8, 8, 4);
  const auto rows = spectral_gap(space, {0.0, 5.0, 20.0}, {&id, &cube});
  REQUIRE(rows.size() == 6);
  for (const auto& r : rows) {
    if (r.mu == 0.0) CHECK(r.margin == 0.0);
    if (r.delta == 0.0) CHECK(r.margin == doctest::Approx(r.mu).epsilon(1e-10));
    CHECK(r.margin <= r.mu + 1e-9);
    CHECK(r.transient_C >= 1.0 - 1e-9);
  }
  CHECK(gap_csv(rows).rfind("mu,delta,lambda_min_A,lambda_min_tilde,margin,max_imag,transient_C\n", 0) == 0);
}

TEST_CASE("dense size cap") {
  const Domain d(small());
  const DiscreteSpace space(d);
  CHECK_THROWS_AS(assemble_stokes(space, 100), ValidationError);
}

TEST_CASE("transient constant against a matrix exponential oracle") {
  Eigen::MatrixXcd m(3, 3);
  m << 1.0, 4.0, 0.0, 0.0, 1.5, 3.0, 0.0, 0.0, 2.0;
  DenseOperator op;
  op.matrix = m;
  const Spectrum s = eigen_decompose(op, true);
  const std::vector<double> times{0.01, 0.1, 0.3, 0.7, 1.5, 3.0};
  double oracle = 0.0;
  for (double t : times) {
    const Eigen::MatrixXcd e = (-t * m).exp();
    const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(e);
    oracle = std::max(oracle, svd.singularValues()(0) * std::exp(1.0 * t));
  }
  CHECK(transient_constant(s, times) == doctest::Approx(oracle).epsilon(1e-9));
  CHECK(oracle > 1.5);
}

TEST_CASE("forced kernel integral against its power series") {
  for (auto [lambda, t, beta, gamma] :
       {std::tuple{std::complex<double>(2.0, 0.0), 1.0, 0.5, 1.0}, std::tuple{std::complex<double>(5.0, 3.0), 0.7, 0.25, 0.0},
        std::tuple{std::complex<double>(0.5, -1.0), 2.0, 0.75, 3.0}, std::tuple{std::complex<double>(1.0, 0.0), 1e-6, 0.5, 1.0}}) {
    const auto got = forced_kernel_integral(lambda, t, beta, gamma);
    const auto want = kernel_series(lambda, t, beta, gamma);
    CHECK(std::abs(got - want) < 1e-10 * std::abs(want));
  }
}

TEST_CASE("resolvent and semigroup probes on a normal operator") {
  const Domain d(small());
  const DiscreteSpace space(d);
  const ObservationOperator id = ObservationOperator::identity(d);
  const PerturbedStokes p(d, NudgingParams{3.0, 0.0}, id);
  const DenseOperator op = assemble_perturbed(space, p);
  const auto samples = smooth_samples(space, 4, 1);
  const double lmin = pi * pi / 4 + 3.0;
  // On the negative real axis |(lambda - M)^{-1}| = 1 / (|lambda| + lmin).
  const auto rows = resolvent_probe(op, {-1.0, -100.0, -1e4}, samples);
  for (const auto& r : rows) {
    CHECK_FALSE(r.skipped);
    CHECK(r.scaled_norm <= std::abs(r.lambda) / (std::abs(r.lambda) + lmin) * (1 + 1e-10));
  }
  CHECK(rows.back().scaled_norm == doctest::Approx(1.0).epsilon(0.01));
  const std::vector<double> times{0.01, 0.1, 0.5, 1.0, 2.0};
  const auto decay = semigroup_decay_probe(op, {0.0, 0.5, 1.0}, times, samples, lmin);
  REQUIRE(decay.size() == 3);
  CHECK(decay[0].sup <= 1.0 + 1e-10);
  // sup_t t^theta lambda^theta e^{-(lambda - lmin) t} is at most (theta / e)^theta... per mode
  CHECK(std::isfinite(decay[2].sup));
  const auto forced = forced_integral_probe(op, samples[0], 0.5, 1.0, 0.95 * lmin, times);
  for (const auto& r : forced) {
    CHECK(std::isfinite(r.ratio));
    CHECK(r.norm > 0.0);
  }
}
