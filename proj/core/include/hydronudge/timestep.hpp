#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hydronudge/dynamics.hpp"
#include "hydronudge/galerkin.hpp"
#include "hydronudge/norms.hpp"

namespace hydronudge {

enum class Scheme { ImexCnab2, Exponential };
std::string to_string(Scheme s);
Scheme scheme_from_string(const std::string& name);

struct StepperConfig {
  Scheme scheme = Scheme::ImexCnab2;
  double dt = 1e-3;
  double T = 1.0;
  /// Norms and observers run every output_every steps.
  int output_every = 10;
  double cfl_guard = 0.8;

  void validate() const;
  long steps() const;
};

/// Per-mode eigendecomposition of the Galerkin matrix A_k + shift I.
class ModalOperator {
 public:
  ModalOperator(const DiscreteSpace& space, double shift);

  const DiscreteSpace& space() const { return *space_; }
  double shift() const { return shift_; }
  /// Coordinates -> eigen-coordinates and back (orthogonal, per mode).
  Eigen::VectorXcd to_modal(const Eigen::VectorXcd& a) const;
  Eigen::VectorXcd from_modal(const Eigen::VectorXcd& b) const;
  /// Eigenvalues in eigen-coordinate order.
  const Eigen::VectorXd& eigenvalues() const { return lambda_; }
  /// exp(-t (A + shift)) applied to coordinates.
  Eigen::VectorXcd propagate(const Eigen::VectorXcd& a, double t) const;

 private:
  const DiscreteSpace* space_;
  double shift_;
  std::vector<Eigen::MatrixXd> vectors_;
  Eigen::VectorXd lambda_;
};

double phi1(double z);
double phi2(double z);

/// One-step integrator for d/dt a = -L a + E(a, t), L = A + shift.
class Stepper {
 public:
  virtual ~Stepper() = default;
  /// Advances v (in V_h) from t0 to t1.
  virtual SpectralField step(const SpectralField& v, double t0, double t1) = 0;
  /// Forgets multistep history.
  virtual void reset() {}
  const ModalOperator& modal() const { return modal_; }
  const System& system() const { return *system_; }

 protected:
  Stepper(const DiscreteSpace& space, const System& system);
  const DiscreteSpace* space_;
  const System* system_;
  ModalOperator modal_;
};

/// Crank-Nicolson on L, second-order Adams-Bashforth on E, explicit Euler on
/// the first step.
class ImexStepper : public Stepper {
 public:
  ImexStepper(const DiscreteSpace& space, const System& system);
  SpectralField step(const SpectralField& v, double t0, double t1) override;
  void reset() override { previous_.reset(); }

 private:
  std::optional<Eigen::VectorXcd> previous_;
  double previous_dt_ = 0.0;
};

/// Second-order exponential time differencing (ETD2RK): exact propagation of
/// L, linear interpolation of E across the step.
class ExponentialStepper : public Stepper {
 public:
  ExponentialStepper(const DiscreteSpace& space, const System& system);
  SpectralField step(const SpectralField& v, double t0, double t1) override;
  /// Number of times the step-size dependent factors were rebuilt.
  int cache_rebuilds() const { return rebuilds_; }

 private:
  void prepare(double h);
  double h_ = -1.0;
  int rebuilds_ = 0;
  Eigen::VectorXd decay_, f1_, f2_;
};

std::unique_ptr<Stepper> make_stepper(Scheme scheme, const DiscreteSpace& space, const System& system);

/// Advective CFL number of v for step dt.
double cfl_number(const Domain& domain, const SpectralField& v, double dt);

/// Norms recorded for every output time.
struct NormRecord {
  double t = 0.0;
  double l2 = 0.0;
  double h1 = 0.0;
  double h2 = 0.0;
  double lq = 0.0;
  double w_h1 = 0.0;
};

NormRecord measure_norms(const Domain& domain, const SpectralField& v, double t, double q = 4.0);

struct Trajectory {
  std::vector<NormRecord> norms;
  std::vector<double> snapshot_times;
  std::vector<SpectralField> snapshots;
  SpectralField final_state;
  double final_time = 0.0;
  std::optional<std::string> failure;

  TimeSeries series(const std::string& column) const;
};

struct RunOptions {
  bool keep_snapshots = false;
  double lq_exponent = 4.0;
  /// Called at every output time with read-only access.
  std::function<void(double, const SpectralField&)> observer;
};

/// Integrates `system` from `initial` at t = 0. Non-finite values stop the
/// run; the trajectory then holds the last good state and a failure message.
Trajectory run_simulation(const DiscreteSpace& space, const System& system, const SpectralField& initial,
                          const StepperConfig& config, const RunOptions& options = {});

/// CSV with columns t, L2, H1, H2, Lq, wH1cross.
std::string norms_csv(const std::vector<NormRecord>& rows);

}  // namespace hydronudge
