#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hydronudge/domain.hpp"
#include "hydronudge/error.hpp"
#include "support.hpp"

using namespace hydronudge;

TEST_CASE("domain spec validation") {
  DomainSpec s;
  CHECK_NOTHROW(s.validate());
  s.nx = 15;
  CHECK_THROWS_AS(s.validate(), ValidationError);
  s = DomainSpec{};
  s.nz = 3;
  CHECK_THROWS_AS(s.validate(), ValidationError);
  s = DomainSpec{};
  s.l = 0.0;
  CHECK_THROWS_AS(s.validate(), ValidationError);
  s = DomainSpec{};
  s.dealias = 1.5;
  CHECK_THROWS_AS(s.validate(), ValidationError);
  s = DomainSpec{};
  s.nx = 2;
  CHECK_THROWS_AS(s.validate(), ValidationError);
}

TEST_CASE("Gauss-Lobatto nodes run bottom to top") {
  const double l = 1.7;
  const ChebyshevBasis b(9, l);
  for (int k = 0; k < 9; ++k) CHECK(b.nodes()(k) == doctest::Approx(-0.5 * l * (1.0 + std::cos(M_PI * k / 8.0))));
  CHECK(b.nodes()(0) == -l);
  CHECK(b.nodes()(8) == 0.0);
}

TEST_CASE("mass matrix matches Gauss-Legendre quadrature") {
  const double l = 0.8;
  const int n = 11;
  std::vector<double> x, w;
  support::gauss_legendre(40, x, w);
  const Eigen::MatrixXd m = ChebyshevBasis::mass_matrix(n, l);
  double worst = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      double s = 0.0;
      for (std::size_t q = 0; q < x.size(); ++q) s += w[q] * support::chebyshev(a, x[q]) * support::chebyshev(b, x[q]);
      worst = std::max(worst, std::abs(m(a, b) - 0.5 * l * s));
    }
  CHECK(worst < 1e-13);
}

TEST_CASE("Clenshaw-Curtis weights integrate the basis exactly") {
  const ChebyshevBasis b(13, 2.0);
  CHECK(b.weights().sum() == doctest::Approx(2.0).epsilon(1e-14));
  for (int m = 0; m < 13; ++m) {
    double s = 0.0;
    for (int k = 0; k < 13; ++k) s += b.weights()(k) * support::chebyshev(m, b.reference(b.nodes()(k)));
    CHECK(s == doctest::Approx(b.integrals()(m)).epsilon(1e-13).scale(1.0));
  }
}

TEST_CASE("analysis inverts evaluation and derivative is spectrally accurate") {
  const double l = 1.0;
  const ChebyshevBasis b(17, l);
  CHECK((b.analysis() * b.eval() - Eigen::MatrixXd::Identity(17, 17)).norm() < 1e-12);
  Eigen::VectorXd f(17), df(17);
  for (int k = 0; k < 17; ++k) {
    const double z = b.nodes()(k);
    f(k) = std::exp(z) * std::sin(3.0 * z);
    df(k) = std::exp(z) * (std::sin(3.0 * z) + 3.0 * std::cos(3.0 * z));
  }
  const Eigen::VectorXd approx = b.eval() * (b.derivative() * (b.analysis() * f));
  CHECK((approx - df).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("antiderivative vanishes at the bottom") {
  const ChebyshevBasis b(9, 1.3);
  Eigen::VectorXd c = Eigen::VectorXd::LinSpaced(9, 1.0, 2.0);
  const Eigen::VectorXd a = b.antiderivative() * c;
  CHECK(std::abs(b.value_row(-1.3, 10) * a) < 1e-14);
  // d/dz of the antiderivative recovers the integrand
  const Eigen::VectorXd back = ChebyshevBasis::derivative_matrix(10, 1.3) * a;
  CHECK((back.head(9) - c).norm() < 1e-12);
  CHECK(std::abs(back(9)) < 1e-12);
}

TEST_CASE("wavenumbers and dealias band") {
  DomainSpec s;
  s.nx = 16;
  s.ny = 12;
  s.lx = 4.0 * std::numbers::pi;
  const Domain d(s);
  CHECK(d.kmax_x() == 5);
  CHECK(d.kmax_y() == 4);
  CHECK(d.kx(1) == doctest::Approx(0.5));
  CHECK(d.kx(15) == doctest::Approx(-0.5));
  CHECK(d.kx(8) == 0.0);
  CHECK_FALSE(d.kept(8, 0));
  CHECK(d.kept(5, 0));
  CHECK_FALSE(d.kept(6, 0));
  CHECK(d.kept(0, 4));
  CHECK_FALSE(d.kept(0, 5));
  s.dealias = 1.0;
  const Domain full(s);
  CHECK(full.kmax_x() == 7);
}
