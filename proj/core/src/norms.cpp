#include "hydronudge/norms.hpp"

#include <cmath>
#include <functional>

#include "hydronudge/error.hpp"
#include "hydronudge/transform.hpp"

namespace hydronudge {

void NormSpec::validate() const {
  if (!(p > 1.0) || !std::isfinite(p)) throw ValidationError("NormSpec.p must lie in (1, inf)");
  if (!(q > 1.0)) throw ValidationError("NormSpec.q must exceed 1");
  if (!(eta > 1.0 / p && eta <= 1.0)) throw ValidationError("NormSpec.eta must lie in (1/p, 1]");
  if (!(gamma >= 0.0)) throw ValidationError("NormSpec.gamma must be >= 0");
}

NormSpec NormSpec::critical(double p, double q, double gamma) {
  NormSpec s{p, q, 1.0 / p + 1.0 / q, gamma};
  s.validate();
  return s;
}

void TimeSeries::validate() const {
  if (times.size() != values.size()) throw ValidationError("time series length mismatch");
  for (std::size_t n = 1; n < times.size(); ++n)
    if (!(times[n] > times[n - 1])) throw ValidationError("time series times must increase strictly");
}

namespace {

// Pointwise sum over components of |f|^2, accumulated into `mag2`.
void accumulate_square(const PhysicalField& f, std::vector<double>& mag2, double multiplicity) {
  const std::size_t n = std::size_t(f.nx()) * f.ny() * f.nz();
  for (int c = 0; c < f.components(); ++c) {
    auto v = f.component(c);
    for (std::size_t p = 0; p < n; ++p) mag2[p] += multiplicity * v[p] * v[p];
  }
}

double norm_of_magnitude(const Domain& domain, const std::vector<double>& mag2, double q) {
  const int nx = domain.nx(), ny = domain.ny(), nz = domain.nz();
  const auto& w = domain.cheb().weights();
  if (std::isinf(q)) {
    double m = 0.0;
    for (double v : mag2) m = std::max(m, std::sqrt(v));
    return m;
  }
  double sum = 0.0;
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j)
      for (int k = 0; k < nz; ++k) {
        const double a = mag2[(std::size_t(i) * ny + j) * nz + k];
        sum += w(k) * (q == 2.0 ? a : std::pow(std::sqrt(a), q));
      }
  sum *= domain.cell_area();
  return q == 2.0 ? std::sqrt(sum) : std::pow(sum, 1.0 / q);
}

// Visits every multi-index alpha with |alpha| = order, passing d^alpha f and
// the multiplicity order! / alpha! of alpha among ordered index tuples.
void for_each_derivative(const Domain& domain, const SpectralField& f, int order,
                         const std::function<void(const SpectralField&, double)>& visit) {
  auto fact = [](int n) {
    double r = 1.0;
    for (int k = 2; k <= n; ++k) r *= k;
    return r;
  };
  for (int ax = 0; ax <= order; ++ax)
    for (int ay = 0; ax + ay <= order; ++ay) {
      const int az = order - ax - ay;
      SpectralField d = f;
      for (int n = 0; n < ax; ++n) d = derivative_x(domain, d);
      for (int n = 0; n < ay; ++n) d = derivative_y(domain, d);
      for (int n = 0; n < az; ++n) d = derivative_z(domain, d);
      visit(d, fact(order) / (fact(ax) * fact(ay) * fact(az)));
    }
}

double derivative_tensor_norm(const Domain& domain, const SpectralField& f, int order, double q) {
  std::vector<double> mag2(std::size_t(domain.nx()) * domain.ny() * domain.nz(), 0.0);
  for_each_derivative(domain, f, order, [&](const SpectralField& d, double mult) {
    accumulate_square(to_physical(domain, d), mag2, mult);
  });
  return norm_of_magnitude(domain, mag2, q);
}

double integer_sobolev(const Domain& domain, const SpectralField& f, int s, double q) {
  if (std::isinf(q)) {
    double m = 0.0;
    for (int j = 0; j <= s; ++j) m = std::max(m, derivative_tensor_norm(domain, f, j, q));
    return m;
  }
  double sum = 0.0;
  for (int j = 0; j <= s; ++j) sum += std::pow(derivative_tensor_norm(domain, f, j, q), q);
  return std::pow(sum, 1.0 / q);
}

}  // namespace

double lebesgue_norm(const Domain& domain, const PhysicalField& f, double q) {
  if (!(q >= 1.0)) throw ValidationError("Lebesgue exponent must be >= 1");
  if (f.nx() != domain.nx() || f.ny() != domain.ny() || f.nz() != domain.nz())
    throw ShapeError("field does not live on the domain grid");
  if (!f.all_finite()) throw NumericalError("non-finite values in Lebesgue norm");
  std::vector<double> mag2(std::size_t(f.nx()) * f.ny() * f.nz(), 0.0);
  accumulate_square(f, mag2, 1.0);
  return norm_of_magnitude(domain, mag2, q);
}

double sobolev_norm(const Domain& domain, const SpectralField& f, double s, double q) {
  if (!(s >= 0.0)) throw ValidationError("Sobolev smoothness must be >= 0");
  if (s == 0.0) return lebesgue_norm(domain, to_physical(domain, f), q);
  const double rounded = std::round(s);
  if (std::abs(s - rounded) < 1e-12) return integer_sobolev(domain, f, int(rounded), q);
  if (q == 2.0) {
    const auto& mass = domain.cheb().mass();
    double sum = 0.0;
    for (int c = 0; c < f.components(); ++c)
      for (int i = 0; i < f.nx(); ++i)
        for (int j = 0; j < f.ny(); ++j)
          for (int m = 0; m < f.nz(); ++m) {
            const double weight = std::pow(1.0 + domain.k2(i, j) + double(m) * m, s);
            sum += weight * mass(m, m) * std::norm(f(c, i, j, m));
          }
    return std::sqrt(sum * domain.spec().lx * domain.spec().ly);
  }
  const int upper = int(std::ceil(s));
  const double theta = s / upper;
  const double low = lebesgue_norm(domain, to_physical(domain, f), q);
  const double high = integer_sobolev(domain, f, upper, q);
  return std::pow(low, 1.0 - theta) * std::pow(high, theta);
}

double homogeneous_h2_norm(const Domain& domain, const SpectralField& f, double q) {
  double sum = 0.0;
  for_each_derivative(domain, f, 2, [&](const SpectralField& d, double) {
    sum += lebesgue_norm(domain, to_physical(domain, d), q);
  });
  return sum;
}

double gradient_norm(const Domain& domain, const SpectralField& f, double q) {
  return derivative_tensor_norm(domain, f, 1, q);
}

double l2_inner(const Domain& domain, const SpectralField& a, const SpectralField& b) {
  if (!(a.shape() == b.shape())) throw ShapeError("inner product shape mismatch");
  if (a.nz() != domain.nz()) throw ShapeError("exact inner product expects nz coefficients");
  const auto& mass = domain.cheb().mass();
  const int n = a.nz();
  double sum = 0.0;
  for (int c = 0; c < a.components(); ++c)
    for (int i = 0; i < a.nx(); ++i)
      for (int j = 0; j < a.ny(); ++j) {
        const auto x = a.column(c, i, j);
        const auto y = b.column(c, i, j);
        for (int m = 0; m < n; ++m) {
          if (x[m] == Complex{}) continue;
          Complex row = 0.0;
          for (int r = 0; r < n; ++r) row += mass(m, r) * y[r];
          sum += (std::conj(x[m]) * row).real();
        }
      }
  return sum * domain.spec().lx * domain.spec().ly;
}

double l2_norm(const Domain& domain, const SpectralField& a) {
  return std::sqrt(std::max(0.0, l2_inner(domain, a, a)));
}

double time_weighted_norm(const TimeSeries& series, const NormSpec& spec) {
  if (series.empty()) throw ValidationError("time-weighted norm of an empty series");
  series.validate();
  spec.validate();
  auto integrand = [&](std::size_t n) {
    const double t = series.times[n];
    const double w = std::pow(t, 1.0 - spec.eta) * std::exp(spec.gamma * t);
    return std::pow(w * std::abs(series.values[n]), spec.p);
  };
  if (series.size() == 1) return 0.0;
  double sum = 0.0;
  double prev = integrand(0);
  for (std::size_t n = 1; n < series.size(); ++n) {
    const double cur = integrand(n);
    sum += 0.5 * (series.times[n] - series.times[n - 1]) * (prev + cur);
    prev = cur;
  }
  return std::pow(sum, 1.0 / spec.p);
}

}  // namespace hydronudge
