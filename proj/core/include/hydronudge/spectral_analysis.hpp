#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hydronudge/galerkin.hpp"
#include "hydronudge/observation.hpp"

namespace hydronudge {

/// Dense matrix of an operator in the coordinates of a DiscreteSpace. The
/// coordinates are L2-isometric, so matrix 2-norms are L2 operator norms.
/// Matrices are complex because Fourier coordinates are complex; the
/// underlying operator is real.
struct DenseOperator {
  const DiscreteSpace* space = nullptr;
  Eigen::MatrixXcd matrix;
  double mu = 0.0;
  double delta = 0.0;

  int dimension() const { return int(matrix.rows()); }
};

inline constexpr int kDefaultDenseCap = 4096;

/// Block-diagonal hydrostatic Stokes matrix.
DenseOperator assemble_stokes(const DiscreteSpace& space, int cap = kDefaultDenseCap);
/// A + mu P J assembled column by column from the matrix-free action.
DenseOperator assemble_perturbed(const DiscreteSpace& space, const PerturbedStokes& op,
                                 int cap = kDefaultDenseCap);

/// Matrix of P J in the coordinates of the space.
Eigen::MatrixXcd assemble_observation_part(const DiscreteSpace& space, const ObservationOperator& obs,
                                          int cap = kDefaultDenseCap);

/// Eigenvalues sorted by increasing real part.
struct Spectrum {
  Eigen::VectorXcd values;
  Eigen::MatrixXcd vectors;
  bool converged = true;
};
Spectrum eigen_decompose(const DenseOperator& op, bool with_vectors = true);

struct GapReport {
  double mu = 0.0;
  double delta = 0.0;
  double lambda_min_A = 0.0;
  double lambda_min_tilde = 0.0;
  double margin = 0.0;
  /// Largest |Im lambda| among the ten slowest modes.
  double max_imag = 0.0;
  /// max over the probe grid of |exp(-t A~)| exp(lambda_min_tilde t).
  double transient_C = 0.0;
  bool flagged = false;
};

/// sup_t |exp(-t M)|_2 exp(abscissa t) over `times`, using the eigenvector
/// decomposition of M.
double transient_constant(const Spectrum& spectrum, const std::vector<double>& times);

/// Full eigensolve of A + mu P J for every mu and observation operator.
std::vector<GapReport> spectral_gap(const DiscreteSpace& space, const std::vector<double>& mus,
                                    const std::vector<const ObservationOperator*>& observations,
                                    int cap = kDefaultDenseCap);

std::string gap_csv(const std::vector<GapReport>& rows);

/// Random coordinate vectors of smooth fields in V_h.
std::vector<Eigen::VectorXcd> smooth_samples(const DiscreteSpace& space, int count, std::uint64_t seed);

struct ResolventRow {
  std::complex<double> lambda;
  /// sup over samples of |lambda| |psi| / |f|.
  double scaled_norm = 0.0;
  /// sup over samples of |psi|_{H^2 homogeneous} / |f|.
  double h2_ratio = 0.0;
  bool skipped = false;
};

/// Solves (lambda - A~) psi = f for samples f in V_h.
std::vector<ResolventRow> resolvent_probe(const DenseOperator& op, const std::vector<std::complex<double>>& lambdas,
                                          const std::vector<Eigen::VectorXcd>& samples);

struct DecayRow {
  double theta = 0.0;
  /// sup over samples and times of t^theta e^{mu* t} |A~^theta e^{-t A~} f| / |f|.
  double sup = 0.0;
  double t_at_sup = 0.0;
};

/// Requires a spectrum with positive real parts.
std::vector<DecayRow> semigroup_decay_probe(const DenseOperator& op, const std::vector<double>& thetas,
                                            const std::vector<double>& times,
                                            const std::vector<Eigen::VectorXcd>& samples, double mu_star);

/// int_0^t exp(-(t - s) lambda) s^{-beta} exp(-gamma s) ds for Re lambda >= 0.
std::complex<double> forced_kernel_integral(std::complex<double> lambda, double t, double beta, double gamma);

struct ForcedRow {
  double t = 0.0;
  double norm = 0.0;
  /// t^{1-beta} (e^{-gamma t} + e^{-mu* t / 2}).
  double bound_shape = 0.0;
  double ratio = 0.0;
};

/// phi(t) = int_0^t exp(-(t - s) A~) f(s) ds with f(s) = s^{-beta} e^{-gamma s} f0.
std::vector<ForcedRow> forced_integral_probe(const DenseOperator& op, const Eigen::VectorXcd& f0, double beta,
                                             double gamma, double mu_star, const std::vector<double>& times);

}  // namespace hydronudge
