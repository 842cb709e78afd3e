#pragma once

#include <limits>
#include <vector>

#include "hydronudge/domain.hpp"
#include "hydronudge/field.hpp"

namespace hydronudge {

/// Exponents and weights of the time-weighted norm
///   ( int_0^T ( t^{1-eta} e^{gamma t} |f(t)|_X )^p dt )^{1/p}.
struct NormSpec {
  double p = 2.0;
  double q = 2.0;
  double eta = 1.0;
  double gamma = 0.0;

  void validate() const;
  /// eta = 1/p + 1/q, the weight used for the maximal-regularity functional.
  static NormSpec critical(double p, double q, double gamma = 0.0);
};

/// Sampled scalar history, typically a norm of a trajectory.
struct TimeSeries {
  std::vector<double> times;
  std::vector<double> values;

  void push(double t, double v) {
    times.push_back(t);
    values.push_back(v);
  }
  std::size_t size() const { return times.size(); }
  bool empty() const { return times.empty(); }
  /// Throws unless times are strictly increasing and lengths agree.
  void validate() const;
};

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Discrete L^q(Omega) norm of the pointwise Euclidean magnitude, using the
/// trapezoid rule horizontally and Clenshaw-Curtis vertically. q = kInfinity
/// gives the maximum.
double lebesgue_norm(const Domain& domain, const PhysicalField& f, double q);

/// H^{s,q} norm. Integer s sums the L^q norms of the derivative tensors of
/// order 0..s (Frobenius magnitude); fractional s uses a coefficient weight
/// (q = 2) or an interpolation proxy between L^q and H^{ceil(s), q}.
double sobolev_norm(const Domain& domain, const SpectralField& f, double s, double q);

/// sum over |alpha| = 2 of |d^alpha f|_{L^q}.
double homogeneous_h2_norm(const Domain& domain, const SpectralField& f, double q = 2.0);

/// |grad f|_{L^q} with the full 3D gradient.
double gradient_norm(const Domain& domain, const SpectralField& f, double q = 2.0);

/// Exact L2 inner product Re <a, b> of polynomial-in-z fields (nz coefficients).
double l2_inner(const Domain& domain, const SpectralField& a, const SpectralField& b);
double l2_norm(const Domain& domain, const SpectralField& a);

/// Discrete evaluation of the weighted norm by the trapezoid rule on the
/// given samples.
double time_weighted_norm(const TimeSeries& series, const NormSpec& spec);

}  // namespace hydronudge
