#include "hydronudge/timestep.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include "hydronudge/error.hpp"
#include "hydronudge/operators.hpp"
#include "hydronudge/transform.hpp"

namespace hydronudge {

std::string to_string(Scheme s) { return s == Scheme::ImexCnab2 ? "imex" : "exponential"; }

Scheme scheme_from_string(const std::string& name) {
  if (name == "imex") return Scheme::ImexCnab2;
  if (name == "exponential") return Scheme::Exponential;
  throw ValidationError("unknown scheme '" + name + "' (expected imex or exponential)");
}

void StepperConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ValidationError("stepper.dt must be positive");
  if (!(T >= 0.0) || !std::isfinite(T)) throw ValidationError("stepper.T must be >= 0");
  if (output_every < 1) throw ValidationError("stepper.output_every must be >= 1");
  if (!(cfl_guard > 0.0)) throw ValidationError("stepper.cfl_guard must be positive");
}

long StepperConfig::steps() const { return std::lround(T / dt); }

ModalOperator::ModalOperator(const DiscreteSpace& space, double shift)
    : space_(&space), shift_(shift), lambda_(space.dimension()) {
  for (const auto& m : space.modes()) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.stokes);
    if (es.info() != Eigen::Success) throw NumericalError("Stokes block eigensolve failed");
    vectors_.push_back(es.eigenvectors());
    lambda_.segment(m.offset, m.dim) = es.eigenvalues().array() + shift;
  }
}

Eigen::VectorXcd ModalOperator::to_modal(const Eigen::VectorXcd& a) const {
  Eigen::VectorXcd b(a.size());
  const auto& modes = space_->modes();
  for (std::size_t n = 0; n < modes.size(); ++n)
    b.segment(modes[n].offset, modes[n].dim) = vectors_[n].transpose() * a.segment(modes[n].offset, modes[n].dim);
  return b;
}

Eigen::VectorXcd ModalOperator::from_modal(const Eigen::VectorXcd& b) const {
  Eigen::VectorXcd a(b.size());
  const auto& modes = space_->modes();
  for (std::size_t n = 0; n < modes.size(); ++n)
    a.segment(modes[n].offset, modes[n].dim) = vectors_[n] * b.segment(modes[n].offset, modes[n].dim);
  return a;
}

Eigen::VectorXcd ModalOperator::propagate(const Eigen::VectorXcd& a, double t) const {
  Eigen::VectorXcd b = to_modal(a);
  for (Eigen::Index n = 0; n < b.size(); ++n) b(n) *= std::exp(-t * lambda_(n));
  return from_modal(b);
}

double phi1(double z) {
  if (std::abs(z) < 1e-8) return 1.0 + z / 2.0;
  return std::expm1(z) / z;
}

double phi2(double z) {
  if (std::abs(z) < 0.2) {
    double term = 0.5, sum = 0.5;
    for (int n = 1; n < 16; ++n) {
      term *= z / (n + 2);
      sum += term;
    }
    return sum;
  }
  return (std::expm1(z) - z) / (z * z);
}

Stepper::Stepper(const DiscreteSpace& space, const System& system)
    : space_(&space), system_(&system), modal_(space, system.shift()) {}

ImexStepper::ImexStepper(const DiscreteSpace& space, const System& system) : Stepper(space, system) {}

SpectralField ImexStepper::step(const SpectralField& v, double t0, double t1) {
  const double h = t1 - t0;
  if (!(h > 0.0)) throw ValidationError("step must advance time");
  const Eigen::VectorXcd b = modal_.to_modal(space_->coords(v));
  const Eigen::VectorXcd e = modal_.to_modal(space_->coords(system_->explicit_part(v, t0)));
  Eigen::VectorXcd ex = e;
  if (previous_) {
    const double r = h / previous_dt_;
    ex = (1.0 + 0.5 * r) * e - (0.5 * r) * *previous_;
  }
  const auto& lam = modal_.eigenvalues();
  Eigen::VectorXcd out(b.size());
  for (Eigen::Index n = 0; n < b.size(); ++n)
    out(n) = ((1.0 - 0.5 * h * lam(n)) * b(n) + h * ex(n)) / (1.0 + 0.5 * h * lam(n));
  previous_ = e;
  previous_dt_ = h;
  return space_->from_coords(modal_.from_modal(out));
}

ExponentialStepper::ExponentialStepper(const DiscreteSpace& space, const System& system)
    : Stepper(space, system) {}

void ExponentialStepper::prepare(double h) {
  // Step sizes computed as t1 - t0 differ from dt by rounding only.
  if (std::abs(h - h_) <= 1e-12 * h) return;
  const auto& lam = modal_.eigenvalues();
  decay_.resize(lam.size());
  f1_.resize(lam.size());
  f2_.resize(lam.size());
  for (Eigen::Index n = 0; n < lam.size(); ++n) {
    const double z = -h * lam(n);
    decay_(n) = std::exp(z);
    f1_(n) = h * phi1(z);
    f2_(n) = h * phi2(z);
  }
  h_ = h;
  ++rebuilds_;
}

SpectralField ExponentialStepper::step(const SpectralField& v, double t0, double t1) {
  const double h = t1 - t0;
  if (!(h > 0.0)) throw ValidationError("step must advance time");
  prepare(h);
  const Eigen::VectorXcd b = modal_.to_modal(space_->coords(v));
  const Eigen::VectorXcd e0 = modal_.to_modal(space_->coords(system_->explicit_part(v, t0)));
  Eigen::VectorXcd a = decay_.cwiseProduct(b) + f1_.cwiseProduct(e0);
  const SpectralField stage = space_->from_coords(modal_.from_modal(a));
  const Eigen::VectorXcd e1 = modal_.to_modal(space_->coords(system_->explicit_part(stage, t1)));
  a += f2_.cwiseProduct(e1 - e0);
  return space_->from_coords(modal_.from_modal(a));
}

std::unique_ptr<Stepper> make_stepper(Scheme scheme, const DiscreteSpace& space, const System& system) {
  if (scheme == Scheme::Exponential) return std::make_unique<ExponentialStepper>(space, system);
  return std::make_unique<ImexStepper>(space, system);
}

double cfl_number(const Domain& domain, const SpectralField& v, double dt) {
  const PhysicalField u = to_physical(domain, v);
  const PhysicalField w = to_physical(domain, vertical_velocity(domain, v));
  const double dx = domain.spec().lx / domain.nx(), dy = domain.spec().ly / domain.ny();
  double dz = domain.depth();
  for (int k = 1; k < domain.nz(); ++k) dz = std::min(dz, domain.z(k) - domain.z(k - 1));
  double c = 0.0;
  for (int i = 0; i < domain.nx(); ++i)
    for (int j = 0; j < domain.ny(); ++j)
      for (int k = 0; k < domain.nz(); ++k)
        c = std::max(c, std::abs(u(0, i, j, k)) / dx + std::abs(u(1, i, j, k)) / dy + std::abs(w(0, i, j, k)) / dz);
  return c * dt;
}

NormRecord measure_norms(const Domain& domain, const SpectralField& v, double t, double q) {
  NormRecord r;
  r.t = t;
  r.l2 = l2_norm(domain, v);
  r.h1 = sobolev_norm(domain, v, 1.0, 2.0);
  r.h2 = sobolev_norm(domain, v, 2.0, 2.0);
  r.lq = lebesgue_norm(domain, to_physical(domain, v), q);
  r.w_h1 = sobolev_norm(domain, vertical_velocity(domain, v), 1.0, 2.0);
  return r;
}

TimeSeries Trajectory::series(const std::string& column) const {
  TimeSeries s;
  for (const auto& r : norms) {
    double v;
    if (column == "L2") v = r.l2;
    else if (column == "H1") v = r.h1;
    else if (column == "H2") v = r.h2;
    else if (column == "Lq") v = r.lq;
    else if (column == "wH1cross") v = r.w_h1;
    else throw ValidationError("unknown norm column '" + column + "'");
    s.push(r.t, v);
  }
  return s;
}

Trajectory run_simulation(const DiscreteSpace& space, const System& system, const SpectralField& initial,
                          const StepperConfig& config, const RunOptions& options) {
  config.validate();
  const Domain& d = space.domain();
  auto stepper = make_stepper(config.scheme, space, system);
  Trajectory traj;
  SpectralField v = space.project(initial);
  auto output = [&](double t) {
    traj.norms.push_back(measure_norms(d, v, t, options.lq_exponent));
    if (options.keep_snapshots) {
      traj.snapshot_times.push_back(t);
      traj.snapshots.push_back(v);
    }
    if (options.observer) options.observer(t, v);
  };
  const long n = config.steps();
  output(0.0);
  double t = 0.0;
  for (long s = 1; s <= n; ++s) {
    const double cfl = cfl_number(d, v, config.dt);
    if (cfl > config.cfl_guard) {
      std::ostringstream msg;
      msg << "advective CFL " << cfl << " exceeds guard " << config.cfl_guard << " at t = " << t;
      throw GuardViolation(msg.str());
    }
    const double t1 = double(s) * config.dt;
    SpectralField next = stepper->step(v, t, t1);
    if (!next.all_finite()) {
      std::ostringstream msg;
      msg << "non-finite state at t = " << t1;
      traj.failure = msg.str();
      break;
    }
    v = std::move(next);
    t = t1;
    if (s % config.output_every == 0 || s == n) output(t);
  }
  traj.final_state = v;
  traj.final_time = t;
  return traj;
}

std::string norms_csv(const std::vector<NormRecord>& rows) {
  std::ostringstream out;
  out << "t,L2,H1,H2,Lq,wH1cross\n";
  out << std::setprecision(17);
  for (const auto& r : rows) out << r.t << ',' << r.l2 << ',' << r.h1 << ',' << r.h2 << ',' << r.lq << ',' << r.w_h1 << '\n';
  return out.str();
}

}  // namespace hydronudge
