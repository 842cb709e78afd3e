#include "hydronudge/spectral_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <sstream>

#include "hydronudge/error.hpp"
#include "hydronudge/norms.hpp"
#include "hydronudge/operators.hpp"
#include "hydronudge/transform.hpp"

namespace hydronudge {

namespace {

void check_cap(const DiscreteSpace& space, int cap) {
  if (space.dimension() > cap)
    throw ValidationError("dense dimension " + std::to_string(space.dimension()) + " exceeds the cap " +
                          std::to_string(cap));
}

// Gauss-Legendre nodes and weights on [0, 1].
const std::pair<Eigen::VectorXd, Eigen::VectorXd>& gauss_legendre() {
  static const auto rule = [] {
    const int n = 12;
    Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
    for (int k = 1; k < n; ++k) {
      const double b = k / std::sqrt(4.0 * k * k - 1.0);
      jacobi(k, k - 1) = jacobi(k - 1, k) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jacobi);
    Eigen::VectorXd x = (es.eigenvalues().array() + 1.0) / 2.0;
    Eigen::VectorXd w = es.eigenvectors().row(0).transpose().array().square();
    return std::make_pair(x, w);
  }();
  return rule;
}

double h2_of_coords(const DiscreteSpace& space, const Eigen::VectorXcd& a) {
  const auto parts = hermitian_split(space.from_coords(a));
  const double re = homogeneous_h2_norm(space.domain(), parts[0]);
  const double im = homogeneous_h2_norm(space.domain(), parts[1]);
  return std::hypot(re, im);
}

}  // namespace

DenseOperator assemble_stokes(const DiscreteSpace& space, int cap) {
  check_cap(space, cap);
  DenseOperator op;
  op.space = &space;
  op.matrix = Eigen::MatrixXcd::Zero(space.dimension(), space.dimension());
  for (const auto& m : space.modes())
    op.matrix.block(m.offset, m.offset, m.dim, m.dim) = m.stokes.cast<std::complex<double>>();
  return op;
}

Eigen::MatrixXcd assemble_observation_part(const DiscreteSpace& space, const ObservationOperator& obs, int cap) {
  check_cap(space, cap);
  const int n = space.dimension();
  const Domain& d = space.domain();
  Eigen::MatrixXcd pj(n, n);
  Eigen::VectorXcd e = Eigen::VectorXcd::Zero(n);
  for (int c = 0; c < n; ++c) {
    e(c) = 1.0;
    pj.col(c) = space.coords(hydrostatic_projection(d, obs.apply_complex(space.from_coords(e))));
    e(c) = 0.0;
  }
  return pj;
}

DenseOperator assemble_perturbed(const DiscreteSpace& space, const PerturbedStokes& op, int cap) {
  DenseOperator out = assemble_stokes(space, cap);
  out.mu = op.params().mu;
  out.delta = op.observation().delta();
  if (op.params().mu != 0.0) out.matrix += op.params().mu * assemble_observation_part(space, op.observation(), cap);
  return out;
}

Spectrum eigen_decompose(const DenseOperator& op, bool with_vectors) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(op.matrix, with_vectors);
  Spectrum s;
  s.converged = es.info() == Eigen::Success;
  const Eigen::VectorXcd& vals = es.eigenvalues();
  std::vector<int> order(vals.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return vals(a).real() < vals(b).real(); });
  s.values.resize(vals.size());
  if (with_vectors) s.vectors.resize(vals.size(), vals.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    s.values(k) = vals(order[k]);
    if (with_vectors) s.vectors.col(k) = es.eigenvectors().col(order[k]);
  }
  return s;
}

double transient_constant(const Spectrum& spectrum, const std::vector<double>& times) {
  if (spectrum.vectors.size() == 0) throw ValidationError("transient constant needs eigenvectors");
  const Eigen::MatrixXcd& v = spectrum.vectors;
  const Eigen::MatrixXcd vinv = v.partialPivLu().inverse();
  const double abscissa = spectrum.values(0).real();
  double c = 0.0;
  for (double t : times) {
    Eigen::VectorXcd decay(spectrum.values.size());
    for (Eigen::Index k = 0; k < decay.size(); ++k) decay(k) = std::exp(-t * spectrum.values(k));
    const Eigen::MatrixXcd m = v * decay.asDiagonal() * vinv;
    const Eigen::MatrixXcd gram = m.adjoint() * m;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram, Eigen::EigenvaluesOnly);
    const double norm = std::sqrt(std::max(0.0, es.eigenvalues()(es.eigenvalues().size() - 1)));
    c = std::max(c, norm * std::exp(abscissa * t));
  }
  return c;
}

std::vector<GapReport> spectral_gap(const DiscreteSpace& space, const std::vector<double>& mus,
                                    const std::vector<const ObservationOperator*>& observations, int cap) {
  const DenseOperator stokes = assemble_stokes(space, cap);
  const Spectrum base = eigen_decompose(stokes, false);
  const double lambda_a = base.values(0).real();
  std::vector<GapReport> rows;
  for (const ObservationOperator* obs : observations) {
    const Eigen::MatrixXcd pj = assemble_observation_part(space, *obs, cap);
    for (double mu : mus) {
      DenseOperator op = stokes;
      op.mu = mu;
      op.delta = obs->delta();
      if (mu != 0.0) op.matrix += mu * pj;
      const Spectrum s = eigen_decompose(op, true);
      GapReport r;
      r.mu = mu;
      r.delta = obs->delta();
      r.lambda_min_A = lambda_a;
      r.flagged = !s.converged || !base.converged;
      r.lambda_min_tilde = s.values(0).real();
      r.margin = r.lambda_min_tilde - r.lambda_min_A;
      for (Eigen::Index k = 0; k < std::min<Eigen::Index>(10, s.values.size()); ++k)
        r.max_imag = std::max(r.max_imag, std::abs(s.values(k).imag()));
      if (r.lambda_min_tilde > 0.0) {
        std::vector<double> times;
        for (double f : {0.02, 0.05, 0.1, 0.2, 0.5, 1.0, 2.0, 4.0}) times.push_back(f / r.lambda_min_tilde);
        r.transient_C = transient_constant(s, times);
      } else {
        r.flagged = true;
      }
      rows.push_back(r);
    }
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const GapReport& a, const GapReport& b) { return a.lambda_min_tilde < b.lambda_min_tilde; });
  return rows;
}

std::string gap_csv(const std::vector<GapReport>& rows) {
  std::ostringstream out;
  out << "mu,delta,lambda_min_A,lambda_min_tilde,margin,max_imag,transient_C\n" << std::setprecision(17);
  for (const auto& r : rows)
    out << r.mu << ',' << r.delta << ',' << r.lambda_min_A << ',' << r.lambda_min_tilde << ',' << r.margin << ','
        << r.max_imag << ',' << r.transient_C << '\n';
  return out.str();
}

std::vector<Eigen::VectorXcd> smooth_samples(const DiscreteSpace& space, int count, std::uint64_t seed) {
  std::vector<Eigen::VectorXcd> out;
  for (int k = 0; k < count; ++k) {
    Eigen::VectorXcd a = space.coords(smooth_random_field(space.domain(), 2, seed + std::uint64_t(k)));
    const double n = a.norm();
    if (n > 0.0) out.push_back(a / n);
  }
  return out;
}

std::vector<ResolventRow> resolvent_probe(const DenseOperator& op, const std::vector<std::complex<double>>& lambdas,
                                          const std::vector<Eigen::VectorXcd>& samples) {
  if (!op.space) throw ValidationError("dense operator without a space");
  const int n = op.dimension();
  std::vector<ResolventRow> rows;
  for (const auto lambda : lambdas) {
    ResolventRow row;
    row.lambda = lambda;
    const Eigen::MatrixXcd shifted = lambda * Eigen::MatrixXcd::Identity(n, n) - op.matrix;
    const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(shifted);
    if (!(lu.rcond() > 1e-13)) {
      row.skipped = true;
      rows.push_back(row);
      continue;
    }
    for (const auto& f : samples) {
      const Eigen::VectorXcd psi = lu.solve(f);
      const double fn = f.norm();
      row.scaled_norm = std::max(row.scaled_norm, std::abs(lambda) * psi.norm() / fn);
      row.h2_ratio = std::max(row.h2_ratio, h2_of_coords(*op.space, psi) / fn);
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<DecayRow> semigroup_decay_probe(const DenseOperator& op, const std::vector<double>& thetas,
                                            const std::vector<double>& times,
                                            const std::vector<Eigen::VectorXcd>& samples, double mu_star) {
  const Spectrum s = eigen_decompose(op, true);
  if (!s.converged) throw NumericalError("eigensolver did not converge");
  if (!(s.values(0).real() > 0.0)) throw NumericalError("spectrum is not in the right half plane");
  const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(s.vectors);
  std::vector<Eigen::VectorXcd> weights;
  for (const auto& f : samples) weights.push_back(lu.solve(f));
  std::vector<DecayRow> rows;
  for (double theta : thetas) {
    DecayRow row;
    row.theta = theta;
    for (double t : times) {
      Eigen::VectorXcd symbol(s.values.size());
      for (Eigen::Index k = 0; k < symbol.size(); ++k)
        symbol(k) = (theta == 0.0 ? 1.0 : std::pow(s.values(k), theta)) * std::exp(-t * s.values(k));
      for (std::size_t q = 0; q < samples.size(); ++q) {
        const double value = std::pow(t, theta) * std::exp(mu_star * t) *
                             (s.vectors * symbol.cwiseProduct(weights[q])).norm() / samples[q].norm();
        if (value > row.sup) {
          row.sup = value;
          row.t_at_sup = t;
        }
      }
    }
    rows.push_back(row);
  }
  return rows;
}

std::complex<double> forced_kernel_integral(std::complex<double> lambda, double t, double beta, double gamma) {
  if (!(beta >= 0.0 && beta < 1.0)) throw ValidationError("beta must lie in [0, 1)");
  if (t == 0.0) return 0.0;
  // s = t u^p turns s^{-beta} ds into a smooth measure.
  const double p = 1.0 / (1.0 - beta);
  const auto& [x, w] = gauss_legendre();
  std::vector<double> breaks{0.0};
  for (int k = 40; k >= 1; --k) breaks.push_back(std::ldexp(1.0, -k));
  for (int k = 2; k <= 60; ++k) breaks.push_back(1.0 - std::ldexp(1.0, -k));
  breaks.push_back(1.0);
  std::complex<double> sum = 0.0;
  for (std::size_t b = 0; b + 1 < breaks.size(); ++b) {
    const double a0 = breaks[b], a1 = breaks[b + 1], h = a1 - a0;
    for (Eigen::Index q = 0; q < x.size(); ++q) {
      const double u = a0 + h * x(q);
      const double up = std::pow(u, p);
      const double rest = -std::expm1(p * std::log(u));
      sum += h * w(q) * std::exp(-lambda * (t * rest) - gamma * t * up);
    }
  }
  return std::pow(t, 1.0 - beta) * p * sum;
}

std::vector<ForcedRow> forced_integral_probe(const DenseOperator& op, const Eigen::VectorXcd& f0, double beta,
                                             double gamma, double mu_star, const std::vector<double>& times) {
  const Spectrum s = eigen_decompose(op, true);
  if (!s.converged) throw NumericalError("eigensolver did not converge");
  const Eigen::VectorXcd weights = s.vectors.partialPivLu().solve(f0);
  std::vector<ForcedRow> rows;
  for (double t : times) {
    Eigen::VectorXcd c(weights.size());
    for (Eigen::Index k = 0; k < c.size(); ++k) c(k) = forced_kernel_integral(s.values(k), t, beta, gamma) * weights(k);
    ForcedRow row;
    row.t = t;
    row.norm = (s.vectors * c).norm() / f0.norm();
    row.bound_shape = std::pow(t, 1.0 - beta) * (std::exp(-gamma * t) + std::exp(-0.5 * mu_star * t));
    row.ratio = row.norm / row.bound_shape;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace hydronudge
