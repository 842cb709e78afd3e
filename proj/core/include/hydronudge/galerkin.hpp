#pragma once

#include <vector>

#include <Eigen/Dense>

#include "hydronudge/domain.hpp"
#include "hydronudge/field.hpp"
#include "hydronudge/observation.hpp"

namespace hydronudge {

/// The discrete solution space V_h: dealiased horizontal modes whose
/// components are polynomials of degree < nz with v(-l) = 0, dz v(0) = 0 and,
/// for k != 0, k . mean(v) = 0.
///
/// Every kept mode k carries an orthonormal basis Q_k (2 nz rows, one block
/// per component) with respect to the exact L2 Gram matrix. Coordinates are
/// scaled so that the Euclidean norm of the coordinate vector equals the L2
/// norm of the field.
class DiscreteSpace {
 public:
  struct Mode {
    int i = 0, j = 0;
    int offset = 0;
    int dim = 0;
    /// Q_k / sqrt(Lx Ly): coordinates -> stacked coefficient column.
    Eigen::MatrixXd synthesis;
    /// sqrt(Lx Ly) Q_k^T M: stacked coefficient column -> coordinates.
    Eigen::MatrixXd analysis;
    /// Galerkin matrix of the hydrostatic Stokes operator (symmetric).
    Eigen::MatrixXd stokes;
  };

  explicit DiscreteSpace(const Domain& domain);

  const Domain& domain() const { return *domain_; }
  const std::vector<Mode>& modes() const { return modes_; }
  int dimension() const { return dimension_; }
  /// Orthonormal basis of the boundary-condition null space of one column.
  const Eigen::MatrixXd& column_basis() const { return column_basis_; }

  /// Coordinates of the L2-orthogonal projection of v onto V_h.
  Eigen::VectorXcd coords(const SpectralField& v) const;
  SpectralField from_coords(const Eigen::VectorXcd& a) const;
  /// L2-orthogonal projection onto V_h.
  SpectralField project(const SpectralField& v) const;

  /// Block-diagonal Stokes matrix on the full coordinate vector.
  Eigen::VectorXcd apply_stokes(const Eigen::VectorXcd& a) const;
  /// Smallest Stokes eigenvalue over all blocks.
  double min_stokes_eigenvalue() const;
  double max_stokes_eigenvalue() const;

 private:
  const Domain* domain_;
  Eigen::MatrixXd column_basis_;
  std::vector<Mode> modes_;
  int dimension_ = 0;
};

/// A + mu P J_delta, applied matrix-free.
class PerturbedStokes {
 public:
  PerturbedStokes(const Domain& domain, NudgingParams params, const ObservationOperator& obs);

  const Domain& domain() const { return *domain_; }
  const NudgingParams& params() const { return params_; }
  const ObservationOperator& observation() const { return *obs_; }

  /// For coefficients of real fields.
  SpectralField apply(const SpectralField& v) const;
  /// Complex-linear extension.
  SpectralField apply_complex(const SpectralField& v) const;
  /// (A + mu I) v - mu P K_delta v with K_delta = I - J_delta.
  SpectralField apply_decomposed(const SpectralField& v) const;

 private:
  const Domain* domain_;
  NudgingParams params_;
  const ObservationOperator* obs_;
};

SpectralField apply_perturbed(const PerturbedStokes& op, const SpectralField& v);

}  // namespace hydronudge
