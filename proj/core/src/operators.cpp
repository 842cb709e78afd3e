#include "hydronudge/operators.hpp"

#include <cmath>

#include "hydronudge/error.hpp"
#include "hydronudge/transform.hpp"

namespace hydronudge {

namespace {

void require_velocity(const SpectralField& v) {
  if (v.components() != 2) throw ShapeError("expected a 2-component horizontal field");
}

Complex column_mean(const Domain& domain, std::span<const Complex> col) {
  const auto& w = domain.cheb().integrals();
  Complex s = 0.0;
  for (int m = 0; m < domain.nz(); ++m) s += w(m) * col[m];
  return s / domain.depth();
}

}  // namespace

SpectralField vertical_average(const Domain& domain, const SpectralField& v) {
  if (v.nz() != domain.nz()) throw ShapeError("vertical average expects nz coefficients");
  SpectralField out(v.shape());
  for (int c = 0; c < v.components(); ++c)
    for (int i = 0; i < v.nx(); ++i)
      for (int j = 0; j < v.ny(); ++j) out(c, i, j, 0) = column_mean(domain, v.column(c, i, j));
  return out;
}

SpectralField horizontal_divergence(const Domain& domain, const SpectralField& v) {
  require_velocity(v);
  SpectralField out(1, v.nx(), v.ny(), v.nz());
  for (int i = 0; i < v.nx(); ++i)
    for (int j = 0; j < v.ny(); ++j) {
      const Complex ikx(0.0, domain.kx(i)), iky(0.0, domain.ky(j));
      for (int m = 0; m < v.nz(); ++m) out(0, i, j, m) = ikx * v(0, i, j, m) + iky * v(1, i, j, m);
    }
  return out;
}

SpectralField vertical_velocity(const Domain& domain, const SpectralField& v) {
  if (v.nz() != domain.nz()) throw ShapeError("vertical velocity expects nz coefficients");
  const SpectralField div = horizontal_divergence(domain, v);
  const Eigen::MatrixXd anti = -domain.cheb().antiderivative();
  SpectralField w(1, v.nx(), v.ny(), v.nz() + 1);
  for (int i = 0; i < v.nx(); ++i)
    for (int j = 0; j < v.ny(); ++j) apply_real(anti, div.column(0, i, j), w.column(0, i, j));
  return w;
}

SpectralField hydrostatic_projection(const Domain& domain, const SpectralField& f) {
  require_velocity(f);
  if (f.nz() != domain.nz()) throw ShapeError("projection expects nz coefficients");
  SpectralField out = f;
  for (int i = 0; i < f.nx(); ++i)
    for (int j = 0; j < f.ny(); ++j) {
      const double k2 = domain.k2(i, j);
      if (k2 == 0.0) continue;
      const double kx = domain.kx(i), ky = domain.ky(j);
      const Complex kf = kx * column_mean(domain, f.column(0, i, j)) + ky * column_mean(domain, f.column(1, i, j));
      out(0, i, j, 0) -= kx * kf / k2;
      out(1, i, j, 0) -= ky * kf / k2;
    }
  return out;
}

double mean_divergence_residual(const Domain& domain, const SpectralField& f) {
  require_velocity(f);
  double r = 0.0;
  for (int i = 0; i < f.nx(); ++i)
    for (int j = 0; j < f.ny(); ++j) {
      const Complex kf = domain.kx(i) * column_mean(domain, f.column(0, i, j)) +
                         domain.ky(j) * column_mean(domain, f.column(1, i, j));
      r = std::max(r, std::abs(kf));
    }
  return r;
}

SpectralField apply_stokes(const Domain& domain, const SpectralField& v) {
  SpectralField lap = laplacian(domain, v);
  lap *= -1.0;
  return hydrostatic_projection(domain, lap);
}

SpectralField project_bc(const Domain& domain, const SpectralField& v) {
  const int n = domain.nz();
  if (v.nz() != n) throw ShapeError("boundary projection expects nz coefficients");
  const auto& cheb = domain.cheb();
  const Eigen::RowVectorXd bottom = cheb.value_row(-domain.depth(), n);
  const Eigen::RowVectorXd top = cheb.derivative_row(0.0, n);
  Eigen::Matrix2d tau;
  tau << bottom(n - 2), bottom(n - 1), top(n - 2), top(n - 1);
  const Eigen::Matrix2d inv = tau.inverse();
  SpectralField out = v;
  for (int c = 0; c < v.components(); ++c)
    for (int i = 0; i < v.nx(); ++i)
      for (int j = 0; j < v.ny(); ++j) {
        auto col = out.column(c, i, j);
        Complex rb = 0.0, rt = 0.0;
        for (int m = 0; m < n - 2; ++m) {
          rb += bottom(m) * col[m];
          rt += top(m) * col[m];
        }
        col[n - 2] = -(inv(0, 0) * rb + inv(0, 1) * rt);
        col[n - 1] = -(inv(1, 0) * rb + inv(1, 1) * rt);
      }
  return out;
}

double bc_residual(const Domain& domain, const SpectralField& v) {
  const int n = v.nz();
  const auto& cheb = domain.cheb();
  const Eigen::RowVectorXd bottom = cheb.value_row(-domain.depth(), n);
  const Eigen::RowVectorXd top = cheb.derivative_row(0.0, n);
  double r = 0.0;
  for (int c = 0; c < v.components(); ++c)
    for (int i = 0; i < v.nx(); ++i)
      for (int j = 0; j < v.ny(); ++j) {
        const auto col = v.column(c, i, j);
        Complex rb = 0.0, rt = 0.0;
        for (int m = 0; m < n; ++m) {
          rb += bottom(m) * col[m];
          rt += top(m) * col[m];
        }
        r = std::max({r, std::abs(rb), std::abs(rt)});
      }
  return r;
}

}  // namespace hydronudge
