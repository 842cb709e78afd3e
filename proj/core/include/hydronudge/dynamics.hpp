#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>

#include "hydronudge/domain.hpp"
#include "hydronudge/field.hpp"
#include "hydronudge/galerkin.hpp"
#include "hydronudge/observation.hpp"

namespace hydronudge {

/// a_H . grad_H b + w(a) dz b, evaluated on the padded product grid and
/// projected back to nz coefficients. Bilinear in (a, b).
SpectralField advect(const Domain& domain, const SpectralField& a, const SpectralField& b);

/// u . grad v for the velocity v itself.
SpectralField convection(const Domain& domain, const SpectralField& v);

/// Named spatial patterns. g_m(z) = cos((m + 1/2) pi z / l) is the vertical
/// profile of the Stokes eigenfunctions.
///   zero
///   taylor-green-layer   (sin x cos y, -cos x sin y) g_0(z)
///   single-mode          (cos y, 0) g_0(z)
///   random               smooth random field, L2-normalised
/// Every pattern is projected onto V_h and scaled by `amplitude`.
SpectralField named_field(const DiscreteSpace& space, const std::string& name, double amplitude,
                          std::uint64_t seed = 0);
bool is_named_field(const std::string& name);

/// Forcing f(x, t), 2 components, with decay tag gamma0.
struct ForcingSpec {
  std::string name = "zero";
  double amplitude = 0.0;
  double gamma0 = 0.0;
  /// Spatial pattern for "decaying-modes".
  std::string pattern = "taylor-green-layer";

  void validate() const;
};

class Forcing {
 public:
  using Evaluator = std::function<SpectralField(double)>;

  Forcing(std::string name, double gamma0, Evaluator eval, bool vanishes = false)
      : name_(std::move(name)), gamma0_(gamma0), eval_(std::move(eval)), zero_(vanishes) {}

  /// Registry: "zero" and "decaying-modes" (amplitude e^{-gamma0 t} pattern).
  static Forcing from_spec(const DiscreteSpace& space, const ForcingSpec& spec);
  static Forcing zero(const Domain& domain);

  SpectralField operator()(double t) const { return eval_(t); }
  const std::string& name() const { return name_; }
  double gamma0() const { return gamma0_; }
  bool identically_zero() const { return zero_; }

 private:
  std::string name_;
  double gamma0_;
  Evaluator eval_;
  bool zero_;
};

/// Closed-form trajectory v*(t) = cos(t) A + sin(t) B with fixed fields in
/// V_h, and the forcing that makes it an exact discrete solution of the
/// primitive equations.
class ManufacturedSolution {
 public:
  ManufacturedSolution(const DiscreteSpace& space, double amplitude);

  SpectralField state(double t) const;
  SpectralField time_derivative(double t) const;
  Forcing forcing() const;

 private:
  const DiscreteSpace* space_;
  SpectralField a_, b_;
};

/// Source of the observed truth used by the nudged system. Only J v(t) and
/// J f(t) are ever requested.
class ObservationSource {
 public:
  virtual ~ObservationSource() = default;
  virtual SpectralField observed_state(double t) const = 0;
  virtual SpectralField observed_forcing(double t) const = 0;
};

/// Full truth access for the difference system.
class TruthSource {
 public:
  virtual ~TruthSource() = default;
  virtual SpectralField state(double t) const = 0;
};

/// Truth samples keyed by time, filled by a driver that advances the truth
/// in lockstep with the systems reading it.
class TruthCache : public ObservationSource, public TruthSource {
 public:
  TruthCache(const ObservationOperator& obs, const Forcing& forcing);

  void record(double t, const SpectralField& v);
  /// Drops samples older than t.
  void discard_before(double t);

  SpectralField state(double t) const override;
  SpectralField observed_state(double t) const override;
  SpectralField observed_forcing(double t) const override;

 private:
  struct Sample {
    SpectralField state;
    SpectralField observed;
  };
  const Sample& lookup(double t) const;

  const ObservationOperator* obs_;
  const Forcing* forcing_;
  std::map<double, Sample> samples_;
};

/// Observation streams only: J v and J f stored at discrete times, cubic
/// Hermite interpolation in between (derivatives by finite differences).
class RecordedObservations : public ObservationSource {
 public:
  void record(double t, SpectralField observed_state, SpectralField observed_forcing);
  SpectralField observed_state(double t) const override;
  SpectralField observed_forcing(double t) const override;
  std::size_t size() const { return times_.size(); }

 private:
  SpectralField interpolate(const std::vector<SpectralField>& values, double t) const;

  std::vector<double> times_;
  std::vector<SpectralField> states_, forcings_;
};

/// Full right-hand sides.
SpectralField primitive_rhs(const Domain& domain, const SpectralField& v, const Forcing& f, double t);
SpectralField nudged_rhs(const Domain& domain, const SpectralField& vt, const ObservationSource& truth,
                         const ObservationOperator& obs, double mu, double t);
SpectralField difference_rhs(const Domain& domain, const SpectralField& dv, const TruthSource& truth,
                             const ObservationOperator& obs, double mu, const Forcing& f, double t);

enum class SystemKind { Primitive, Nudged, Difference };
std::string to_string(SystemKind kind);

/// An evolution system d/dt v = -(A + shift) v + E(v, t). The steppers treat
/// A + shift implicitly (or exactly) and E explicitly. E includes + shift v.
class System {
 public:
  virtual ~System() = default;
  virtual SystemKind kind() const = 0;
  virtual double shift() const { return 0.0; }
  /// Everything except -A v: the explicit part minus shift * v.
  virtual SpectralField remainder(const SpectralField& v, double t) const = 0;

  SpectralField explicit_part(const SpectralField& v, double t) const;
  SpectralField rhs(const SpectralField& v, double t) const;
  const Domain& domain() const { return *domain_; }

 protected:
  explicit System(const Domain& domain) : domain_(&domain) {}
  const Domain* domain_;
};

class PrimitiveSystem : public System {
 public:
  PrimitiveSystem(const Domain& domain, const Forcing& forcing, double shift = 0.0)
      : System(domain), forcing_(&forcing), shift_(shift) {}
  SystemKind kind() const override { return SystemKind::Primitive; }
  double shift() const override { return shift_; }
  SpectralField remainder(const SpectralField& v, double t) const override;

 private:
  const Forcing* forcing_;
  double shift_;
};

class NudgedSystem : public System {
 public:
  NudgedSystem(const Domain& domain, const ObservationSource& truth, const ObservationOperator& obs, double mu)
      : System(domain), truth_(&truth), obs_(&obs), mu_(mu) {}
  SystemKind kind() const override { return SystemKind::Nudged; }
  double shift() const override { return mu_; }
  SpectralField remainder(const SpectralField& v, double t) const override;

 private:
  const ObservationSource* truth_;
  const ObservationOperator* obs_;
  double mu_;
};

class DifferenceSystem : public System {
 public:
  DifferenceSystem(const Domain& domain, const TruthSource& truth, const ObservationOperator& obs, double mu,
                   const Forcing& forcing)
      : System(domain), truth_(&truth), obs_(&obs), mu_(mu), forcing_(&forcing) {}
  SystemKind kind() const override { return SystemKind::Difference; }
  double shift() const override { return mu_; }
  SpectralField remainder(const SpectralField& v, double t) const override;

 private:
  const TruthSource* truth_;
  const ObservationOperator* obs_;
  double mu_;
  const Forcing* forcing_;
};

}  // namespace hydronudge
