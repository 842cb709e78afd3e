#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hydronudge/domain.hpp"
#include "hydronudge/field.hpp"

namespace hydronudge {

enum class ObservationKind { CubeAverage, FourierLowpass, Identity };

std::string to_string(ObservationKind kind);
ObservationKind observation_kind_from_string(const std::string& name);

/// Serializable description of an observation operator.
struct ObservationSpec {
  ObservationKind kind = ObservationKind::CubeAverage;
  /// Cell counts for CubeAverage.
  int cx = 4, cy = 4, cz = 4;
  /// Resolution for FourierLowpass (cutoff |k| <= 1 / delta).
  double delta = 0.5;
};

/// Linear, time-independent observation operator J_delta.
///
/// CubeAverage replaces every grid value by the mean over its cell, with
/// trapezoid weights horizontally and Clenshaw-Curtis weights vertically, so
/// it is an orthogonal projection in the discrete inner product. delta is the
/// largest cell diameter. FourierLowpass keeps horizontal modes |k| <= 1/delta
/// and every vertical mode. Identity is the delta -> 0 limit.
class ObservationOperator {
 public:
  ObservationOperator(const Domain& domain, const ObservationSpec& spec);

  static ObservationOperator cube(const Domain& domain, int cx, int cy, int cz);
  static ObservationOperator lowpass(const Domain& domain, double delta);
  static ObservationOperator identity(const Domain& domain);

  ObservationKind kind() const { return spec_.kind; }
  const ObservationSpec& spec() const { return spec_; }
  double delta() const { return delta_; }
  const Domain& domain() const { return *domain_; }

  PhysicalField apply(const PhysicalField& f) const;
  /// Applies J to the coefficients of a real field.
  SpectralField apply(const SpectralField& f) const;
  /// Complex-linear extension for arbitrary coefficient sets.
  SpectralField apply_complex(const SpectralField& f) const;

 private:
  const Domain* domain_;
  ObservationSpec spec_;
  double delta_ = 0.0;
  std::vector<int> cell_z_;       // vertical cell of every node
  std::vector<double> cell_wz_;   // Clenshaw-Curtis weight sum per vertical cell
};

/// Nudging strength and observation resolution.
struct NudgingParams {
  double mu = 0.0;
  double delta = 0.0;

  void validate() const;
  /// The smallness condition mu * delta < alpha.
  bool admissible(double alpha) const { return mu * delta < alpha; }
};

struct ObservationConstants {
  double c_bound = 0.0;
  double c_approx = 0.0;
  int used = 0;
};

/// sup |J f|_q / |f|_q and sup |J f - f|_q / (delta |grad f|_q) over the
/// samples. Samples with vanishing gradient are skipped for the second ratio.
ObservationConstants estimate_observation_constants(const ObservationOperator& op,
                                                    const std::vector<SpectralField>& samples,
                                                    double q = 2.0);

/// Smooth real random field built from modes |k_x|, |k_y| <= kmax and
/// Chebyshev degree < mmax with algebraically decaying amplitudes. The
/// coefficients depend on the seed only, not on the grid, as long as the grid
/// resolves them.
SpectralField smooth_random_field(const Domain& domain, int components, std::uint64_t seed, int kmax = 3,
                                  int mmax = 5);

}  // namespace hydronudge
