#include "hydronudge/galerkin.hpp"

#include <cmath>

#include "hydronudge/error.hpp"
#include "hydronudge/operators.hpp"

namespace hydronudge {

namespace {

// Orthonormal complement of the unit vector n in R^len via a Householder
// reflection.
Eigen::MatrixXd householder_complement(const Eigen::VectorXd& n) {
  const Eigen::Index len = n.size();
  Eigen::VectorXd u = n.normalized();
  u(0) += u(0) >= 0.0 ? 1.0 : -1.0;
  const Eigen::MatrixXd h = Eigen::MatrixXd::Identity(len, len) - 2.0 * u * u.transpose() / u.squaredNorm();
  return h.rightCols(len - 1);
}

}  // namespace

DiscreteSpace::DiscreteSpace(const Domain& domain) : domain_(&domain) {
  const int nz = domain.nz();
  const auto& cheb = domain.cheb();
  const Eigen::MatrixXd& mass = cheb.mass();

  Eigen::MatrixXd bc(2, nz);
  bc.row(0) = cheb.value_row(-domain.depth(), nz);
  bc.row(1) = cheb.derivative_row(0.0, nz);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(bc, Eigen::ComputeFullV);
  const Eigen::MatrixXd null = svd.matrixV().rightCols(nz - 2);
  const Eigen::MatrixXd gram = null.transpose() * mass * null;
  const Eigen::LLT<Eigen::MatrixXd> llt(gram);
  column_basis_ = llt.matrixU().solve<Eigen::OnTheRight>(null);

  const int s = nz - 2;
  const Eigen::MatrixXd& d = cheb.derivative();
  const Eigen::MatrixXd ks = column_basis_.transpose() * d.transpose() * mass * d * column_basis_;
  const Eigen::VectorXd r = column_basis_.transpose() * cheb.integrals();

  Eigen::MatrixXd qs2 = Eigen::MatrixXd::Zero(2 * nz, 2 * s);
  qs2.topLeftCorner(nz, s) = column_basis_;
  qs2.bottomRightCorner(nz, s) = column_basis_;
  Eigen::MatrixXd mass2 = Eigen::MatrixXd::Zero(2 * nz, 2 * nz);
  mass2.topLeftCorner(nz, nz) = mass;
  mass2.bottomRightCorner(nz, nz) = mass;
  Eigen::MatrixXd ks2 = Eigen::MatrixXd::Zero(2 * s, 2 * s);
  ks2.topLeftCorner(s, s) = ks;
  ks2.bottomRightCorner(s, s) = ks;

  const double area = domain.spec().lx * domain.spec().ly;
  const double root = std::sqrt(area);
  for (int i = 0; i < domain.nx(); ++i)
    for (int j = 0; j < domain.ny(); ++j) {
      if (!domain.kept(i, j)) continue;
      Mode mode;
      mode.i = i;
      mode.j = j;
      const double k2 = domain.k2(i, j);
      Eigen::MatrixXd h;
      if (k2 == 0.0) {
        h = Eigen::MatrixXd::Identity(2 * s, 2 * s);
      } else {
        Eigen::VectorXd n(2 * s);
        n.head(s) = domain.kx(i) * r;
        n.tail(s) = domain.ky(j) * r;
        h = householder_complement(n);
      }
      const Eigen::MatrixXd q = qs2 * h;
      mode.dim = int(h.cols());
      mode.offset = dimension_;
      mode.synthesis = q / root;
      mode.analysis = root * q.transpose() * mass2;
      mode.stokes = h.transpose() * (ks2 + k2 * Eigen::MatrixXd::Identity(2 * s, 2 * s)) * h;
      mode.stokes = 0.5 * (mode.stokes + mode.stokes.transpose()).eval();
      dimension_ += mode.dim;
      modes_.push_back(std::move(mode));
    }
}

Eigen::VectorXcd DiscreteSpace::coords(const SpectralField& v) const {
  const int nz = domain_->nz();
  if (v.components() != 2 || v.nz() != nz || v.nx() != domain_->nx() || v.ny() != domain_->ny())
    throw ShapeError("coordinates expect a 2-component field with nz coefficients");
  Eigen::VectorXcd a(dimension_);
  Eigen::VectorXcd col(2 * nz);
  for (const auto& m : modes_) {
    for (int c = 0; c < 2; ++c) {
      const auto src = v.column(c, m.i, m.j);
      for (int k = 0; k < nz; ++k) col(c * nz + k) = src[k];
    }
    a.segment(m.offset, m.dim) = m.analysis * col;
  }
  return a;
}

SpectralField DiscreteSpace::from_coords(const Eigen::VectorXcd& a) const {
  if (a.size() != dimension_) throw ShapeError("coordinate vector has the wrong length");
  const int nz = domain_->nz();
  SpectralField v(2, domain_->nx(), domain_->ny(), nz);
  for (const auto& m : modes_) {
    const Eigen::VectorXcd col = m.synthesis * a.segment(m.offset, m.dim);
    for (int c = 0; c < 2; ++c) {
      auto dst = v.column(c, m.i, m.j);
      for (int k = 0; k < nz; ++k) dst[k] = col(c * nz + k);
    }
  }
  return v;
}

SpectralField DiscreteSpace::project(const SpectralField& v) const { return from_coords(coords(v)); }

Eigen::VectorXcd DiscreteSpace::apply_stokes(const Eigen::VectorXcd& a) const {
  Eigen::VectorXcd out(a.size());
  for (const auto& m : modes_) out.segment(m.offset, m.dim) = m.stokes * a.segment(m.offset, m.dim);
  return out;
}

double DiscreteSpace::min_stokes_eigenvalue() const {
  double lo = INFINITY;
  for (const auto& m : modes_) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.stokes, Eigen::EigenvaluesOnly);
    lo = std::min(lo, es.eigenvalues()(0));
  }
  return lo;
}

double DiscreteSpace::max_stokes_eigenvalue() const {
  double hi = 0.0;
  for (const auto& m : modes_) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.stokes, Eigen::EigenvaluesOnly);
    hi = std::max(hi, es.eigenvalues()(m.dim - 1));
  }
  return hi;
}

PerturbedStokes::PerturbedStokes(const Domain& domain, NudgingParams params, const ObservationOperator& obs)
    : domain_(&domain), params_(params), obs_(&obs) {
  params_.validate();
  if (&obs.domain() != &domain) throw ValidationError("observation operator lives on a different domain");
}

SpectralField PerturbedStokes::apply(const SpectralField& v) const {
  SpectralField out = hydronudge::apply_stokes(*domain_, v);
  if (params_.mu != 0.0) out.axpy(params_.mu, hydrostatic_projection(*domain_, obs_->apply(v)));
  return out;
}

SpectralField PerturbedStokes::apply_complex(const SpectralField& v) const {
  SpectralField out = hydronudge::apply_stokes(*domain_, v);
  if (params_.mu != 0.0) out.axpy(params_.mu, hydrostatic_projection(*domain_, obs_->apply_complex(v)));
  return out;
}

SpectralField PerturbedStokes::apply_decomposed(const SpectralField& v) const {
  SpectralField out = hydronudge::apply_stokes(*domain_, v);
  out.axpy(params_.mu, v);
  const SpectralField k = v - obs_->apply(v);
  out.axpy(-params_.mu, hydrostatic_projection(*domain_, k));
  return out;
}

SpectralField apply_perturbed(const PerturbedStokes& op, const SpectralField& v) { return op.apply(v); }

}  // namespace hydronudge
