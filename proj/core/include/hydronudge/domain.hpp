#pragma once

#include <complex>
#include <memory>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

namespace hydronudge {

/// Geometry and resolution of the periodic layer T^2 x (-l, 0).
struct DomainSpec {
  double l = 1.0;
  double lx = 2.0 * std::numbers::pi;
  double ly = 2.0 * std::numbers::pi;
  int nx = 16;
  int ny = 16;
  int nz = 17;
  /// Fraction of the horizontal Nyquist band kept after truncation.
  double dealias = 2.0 / 3.0;

  void validate() const;
  bool operator==(const DomainSpec&) const = default;
};

/// Chebyshev polynomial basis on [-l, 0] with Gauss-Lobatto collocation.
///
/// Nodes are ordered bottom to top: z_0 = -l, z_{n-1} = 0. The reference
/// coordinate is xi = 2 z / l + 1.
class ChebyshevBasis {
 public:
  ChebyshevBasis(int n, double l);

  int size() const { return n_; }
  double depth() const { return l_; }

  const Eigen::VectorXd& nodes() const { return nodes_; }
  /// values = eval * coeffs on the nodes.
  const Eigen::MatrixXd& eval() const { return eval_; }
  /// coeffs = analysis * values (exact inverse of eval).
  const Eigen::MatrixXd& analysis() const { return analysis_; }
  /// d/dz acting on coefficient vectors of length n.
  const Eigen::MatrixXd& derivative() const { return derivative_; }
  /// Exact L2(-l, 0) Gram matrix of T_0..T_{n-1}.
  const Eigen::MatrixXd& mass() const { return mass_; }
  /// Clenshaw-Curtis weights on the nodes.
  const Eigen::VectorXd& weights() const { return weights_; }
  /// Exact integrals of T_m over (-l, 0).
  const Eigen::VectorXd& integrals() const { return integrals_; }

  double reference(double z) const { return 2.0 * z / l_ + 1.0; }

  /// Row r with r * coeffs = value at z, for ncoef coefficients.
  Eigen::RowVectorXd value_row(double z, int ncoef) const;
  Eigen::RowVectorXd derivative_row(double z, int ncoef) const;
  /// (n+1) x n map to the antiderivative vanishing at z = -l.
  Eigen::MatrixXd antiderivative() const;

  /// Evaluation matrix of ncoef coefficients at arbitrary depths.
  Eigen::MatrixXd evaluation_at(const Eigen::VectorXd& z, int ncoef) const;

  static Eigen::MatrixXd mass_matrix(int n, double l);
  static Eigen::MatrixXd derivative_matrix(int n, double l);
  static Eigen::VectorXd lobatto_nodes(int n, double l);

 private:
  int n_;
  double l_;
  Eigen::VectorXd nodes_;
  Eigen::MatrixXd eval_;
  Eigen::MatrixXd analysis_;
  Eigen::MatrixXd derivative_;
  Eigen::MatrixXd mass_;
  Eigen::VectorXd weights_;
  Eigen::VectorXd integrals_;
};

/// Resolved grid, wavenumbers, dealias mask and FFT plans for one DomainSpec.
///
/// Construction creates FFTW plans and is not thread safe; every const member
/// may be called concurrently afterwards. Share instances by reference or
/// shared_ptr, they are neither copyable nor movable.
class Domain {
 public:
  explicit Domain(const DomainSpec& spec);
  ~Domain();
  Domain(const Domain&) = delete;
  Domain& operator=(const Domain&) = delete;

  const DomainSpec& spec() const { return spec_; }
  int nx() const { return spec_.nx; }
  int ny() const { return spec_.ny; }
  int nz() const { return spec_.nz; }
  double depth() const { return spec_.l; }
  /// Number of vertical points used for quadratic products.
  int padded_nz() const { return padded_.size(); }

  double x(int i) const { return spec_.lx * i / spec_.nx; }
  double y(int j) const { return spec_.ly * j / spec_.ny; }
  double z(int k) const { return cheb_.nodes()(k); }

  /// Signed Fourier index of array position i (Nyquist maps to -n/2).
  static int signed_index(int i, int n) { return i < n / 2 ? i : i - n; }
  /// Wavenumber used for derivatives; zero at the Nyquist index.
  double kx(int i) const { return kx_[i]; }
  double ky(int j) const { return ky_[j]; }
  double k2(int i, int j) const { return kx_[i] * kx_[i] + ky_[j] * ky_[j]; }
  /// True when mode (i, j) survives horizontal dealiasing.
  bool kept(int i, int j) const { return kept_x_[i] && kept_y_[j]; }
  int kmax_x() const { return kmax_x_; }
  int kmax_y() const { return kmax_y_; }

  const ChebyshevBasis& cheb() const { return cheb_; }
  const ChebyshevBasis& padded_cheb() const { return padded_; }
  /// Padded values -> nz coefficients by exact L2 projection.
  const Eigen::MatrixXd& padded_projection() const { return padded_projection_; }
  /// ncoef coefficients -> padded nodal values (ncoef in {nz, nz + 1}).
  const Eigen::MatrixXd& padded_eval(int ncoef) const;

  /// Horizontal trapezoid weight of a single grid column.
  double cell_area() const { return spec_.lx * spec_.ly / (spec_.nx * spec_.ny); }
  double volume() const { return spec_.lx * spec_.ly * spec_.l; }

  /// In-place 2D transforms of a (nx, ny, levels) block with levels fastest.
  /// levels must be nz, nz + 1 or padded_nz(). Forward is unnormalised.
  void fft_forward(std::complex<double>* data, int levels) const;
  void fft_backward(std::complex<double>* data, int levels) const;

 private:
  struct Plans;
  const Plans& plans_for(int levels) const;

  DomainSpec spec_;
  ChebyshevBasis cheb_;
  ChebyshevBasis padded_;
  Eigen::MatrixXd padded_projection_;
  Eigen::MatrixXd padded_eval_n_;
  Eigen::MatrixXd padded_eval_n1_;
  std::vector<double> kx_, ky_;
  std::vector<bool> kept_x_, kept_y_;
  int kmax_x_ = 0, kmax_y_ = 0;
  std::vector<std::unique_ptr<Plans>> plans_;
};

}  // namespace hydronudge
