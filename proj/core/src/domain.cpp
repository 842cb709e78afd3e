#include "hydronudge/domain.hpp"

#include <cmath>
#include <mutex>
#include <sstream>

#include <fftw3.h>

#include "hydronudge/error.hpp"

namespace hydronudge {

namespace {

// Integral of T_n over [-1, 1].
double reference_integral(int n) { return n % 2 ? 0.0 : 2.0 / (1.0 - double(n) * n); }

// FFTW's planner is not re-entrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

Eigen::MatrixXd ChebyshevBasis::derivative_matrix(int n, double l) {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd b(n + 2);
  for (int col = 0; col < n; ++col) {
    b.setZero();
    for (int k = n - 2; k >= 0; --k) b(k) = b(k + 2) + 2.0 * (k + 1) * (k + 1 == col ? 1.0 : 0.0);
    b(0) *= 0.5;
    d.col(col) = b.head(n) * (2.0 / l);
  }
  return d;
}

void DomainSpec::validate() const {
  std::ostringstream err;
  if (!(l > 0.0) || !std::isfinite(l)) err << "l must be positive; ";
  if (!(lx > 0.0) || !std::isfinite(lx)) err << "Lx must be positive; ";
  if (!(ly > 0.0) || !std::isfinite(ly)) err << "Ly must be positive; ";
  if (nx < 4 || nx % 2) err << "Nx must be an even integer >= 4; ";
  if (ny < 4 || ny % 2) err << "Ny must be an even integer >= 4; ";
  if (nz < 4) err << "Nz must be >= 4; ";
  if (!(dealias > 0.0 && dealias <= 1.0)) err << "dealias must lie in (0, 1]; ";
  if (!err.str().empty()) throw ValidationError("invalid domain: " + err.str());
}

Eigen::VectorXd ChebyshevBasis::lobatto_nodes(int n, double l) {
  Eigen::VectorXd z(n);
  for (int j = 0; j < n; ++j) {
    const double xi = -std::cos(std::numbers::pi * j / (n - 1));
    z(j) = 0.5 * l * (xi - 1.0);
  }
  z(0) = -l;
  z(n - 1) = 0.0;
  return z;
}

Eigen::MatrixXd ChebyshevBasis::mass_matrix(int n, double l) {
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m(i, j) = 0.25 * l * (reference_integral(i + j) + reference_integral(std::abs(i - j)));
  return m;
}

ChebyshevBasis::ChebyshevBasis(int n, double l) : n_(n), l_(l) {
  if (n < 2) throw ValidationError("Chebyshev basis needs at least two points");
  const int order = n - 1;
  nodes_ = lobatto_nodes(n, l);
  eval_.resize(n, n);
  analysis_.resize(n, n);
  for (int j = 0; j < n; ++j) {
    const int p = order - j;  // xi_j = cos(pi p / order)
    for (int m = 0; m < n; ++m) {
      eval_(j, m) = std::cos(std::numbers::pi * double(m) * p / order);
      const double cm = (m == 0 || m == order) ? 2.0 : 1.0;
      const double cj = (p == 0 || p == order) ? 2.0 : 1.0;
      analysis_(m, j) = 2.0 / (order * cm * cj) * std::cos(std::numbers::pi * double(m) * p / order);
    }
  }
  derivative_ = derivative_matrix(n, l);
  mass_ = mass_matrix(n, l);
  integrals_.resize(n);
  for (int m = 0; m < n; ++m) integrals_(m) = 0.5 * l * reference_integral(m);
  weights_ = analysis_.transpose() * integrals_;
}

Eigen::RowVectorXd ChebyshevBasis::value_row(double z, int ncoef) const {
  const double xi = reference(z);
  Eigen::RowVectorXd r(ncoef);
  if (ncoef > 0) r(0) = 1.0;
  if (ncoef > 1) r(1) = xi;
  for (int m = 2; m < ncoef; ++m) r(m) = 2.0 * xi * r(m - 1) - r(m - 2);
  return r;
}

Eigen::RowVectorXd ChebyshevBasis::derivative_row(double z, int ncoef) const {
  return value_row(z, ncoef) * derivative_matrix(ncoef, l_);
}

Eigen::MatrixXd ChebyshevBasis::antiderivative() const {
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n_ + 1, n_);
  for (int m = 0; m < n_; ++m) {
    if (m == 0) {
      b(1, 0) = 1.0;
    } else if (m == 1) {
      b(2, 1) = 0.25;
    } else {
      b(m + 1, m) += 0.5 / (m + 1);
      b(m - 1, m) -= 0.5 / (m - 1);
    }
  }
  b *= 0.5 * l_;
  for (int m = 0; m < n_; ++m) {
    double bottom = 0.0;
    for (int r = 0; r <= n_; ++r) bottom += (r % 2 ? -1.0 : 1.0) * b(r, m);
    b(0, m) -= bottom;
  }
  return b;
}

Eigen::MatrixXd ChebyshevBasis::evaluation_at(const Eigen::VectorXd& z, int ncoef) const {
  Eigen::MatrixXd e(z.size(), ncoef);
  for (Eigen::Index j = 0; j < z.size(); ++j) e.row(j) = value_row(z(j), ncoef);
  return e;
}

struct Domain::Plans {
  int levels = 0;
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
  ~Plans() {
    std::lock_guard lock(planner_mutex());
    if (forward) fftw_destroy_plan(forward);
    if (backward) fftw_destroy_plan(backward);
  }
};

Domain::Domain(const DomainSpec& spec)
    : spec_((spec.validate(), spec)), cheb_(spec.nz, spec.l), padded_(2 * spec.nz - 1, spec.l) {
  const int nz = spec_.nz;
  const Eigen::MatrixXd full_mass = ChebyshevBasis::mass_matrix(padded_.size(), spec_.l);
  padded_projection_ = cheb_.mass().ldlt().solve(full_mass.topRows(nz)) * padded_.analysis();
  padded_eval_n_ = cheb_.evaluation_at(padded_.nodes(), nz);
  padded_eval_n1_ = cheb_.evaluation_at(padded_.nodes(), nz + 1);

  kmax_x_ = std::min(int(std::floor(spec_.dealias * spec_.nx / 2 + 1e-9)), spec_.nx / 2 - 1);
  kmax_y_ = std::min(int(std::floor(spec_.dealias * spec_.ny / 2 + 1e-9)), spec_.ny / 2 - 1);
  kx_.resize(spec_.nx);
  kept_x_.resize(spec_.nx);
  for (int i = 0; i < spec_.nx; ++i) {
    const int s = signed_index(i, spec_.nx);
    kx_[i] = (i == spec_.nx / 2) ? 0.0 : 2.0 * std::numbers::pi / spec_.lx * s;
    kept_x_[i] = i != spec_.nx / 2 && std::abs(s) <= kmax_x_;
  }
  ky_.resize(spec_.ny);
  kept_y_.resize(spec_.ny);
  for (int j = 0; j < spec_.ny; ++j) {
    const int s = signed_index(j, spec_.ny);
    ky_[j] = (j == spec_.ny / 2) ? 0.0 : 2.0 * std::numbers::pi / spec_.ly * s;
    kept_y_[j] = j != spec_.ny / 2 && std::abs(s) <= kmax_y_;
  }

  std::lock_guard lock(planner_mutex());
  for (int levels : {nz, nz + 1, padded_.size()}) {
    auto p = std::make_unique<Plans>();
    p->levels = levels;
    const int n[2] = {spec_.nx, spec_.ny};
    const std::size_t count = std::size_t(spec_.nx) * spec_.ny * levels;
    fftw_complex* buf = fftw_alloc_complex(count);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    p->forward = fftw_plan_many_dft(2, n, levels, buf, nullptr, levels, 1, buf, nullptr, levels, 1,
                                    FFTW_FORWARD, flags);
    p->backward = fftw_plan_many_dft(2, n, levels, buf, nullptr, levels, 1, buf, nullptr, levels, 1,
                                     FFTW_BACKWARD, flags);
    fftw_free(buf);
    if (!p->forward || !p->backward) throw Error("FFTW planning failed");
    plans_.push_back(std::move(p));
  }
}

Domain::~Domain() = default;

const Eigen::MatrixXd& Domain::padded_eval(int ncoef) const {
  if (ncoef == spec_.nz) return padded_eval_n_;
  if (ncoef == spec_.nz + 1) return padded_eval_n1_;
  throw ShapeError("no padded evaluation for " + std::to_string(ncoef) + " coefficients");
}

const Domain::Plans& Domain::plans_for(int levels) const {
  for (const auto& p : plans_)
    if (p->levels == levels) return *p;
  throw ShapeError("no FFT plan for " + std::to_string(levels) + " levels");
}

void Domain::fft_forward(std::complex<double>* data, int levels) const {
  auto* d = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(plans_for(levels).forward, d, d);
}

void Domain::fft_backward(std::complex<double>* data, int levels) const {
  auto* d = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(plans_for(levels).backward, d, d);
}

}  // namespace hydronudge
