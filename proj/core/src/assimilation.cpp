#include "hydronudge/assimilation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "hydronudge/error.hpp"
#include "hydronudge/operators.hpp"
#include "hydronudge/transform.hpp"

namespace hydronudge {

void InitialSpec::validate() const {
  if (!is_named_field(name)) throw ValidationError("unknown initial data '" + name + "'");
  if (!std::isfinite(amplitude)) throw ValidationError("initial amplitude must be finite");
}

std::string to_string(DifferenceMode m) {
  switch (m) {
    case DifferenceMode::State: return "state";
    case DifferenceMode::Direct: return "direct";
    case DifferenceMode::Both: return "both";
  }
  return "unknown";
}

DifferenceMode difference_mode_from_string(const std::string& name) {
  if (name == "state") return DifferenceMode::State;
  if (name == "direct") return DifferenceMode::Direct;
  if (name == "both") return DifferenceMode::Both;
  throw ValidationError("unknown difference mode '" + name + "' (expected state, direct or both)");
}

void TwinExperimentConfig::validate() const {
  truth.validate();
  assimilated.validate();
  forcing.validate();
  stepper.validate();
  if (!(mu >= 0.0) || !std::isfinite(mu)) throw ValidationError("nudging.mu must be >= 0");
  if (!(fit_start >= 0.0 && fit_start < 1.0)) throw ValidationError("fit_start must lie in [0, 1)");
  if (!(calibration_end > 0.0 && calibration_end <= 1.0)) throw ValidationError("calibration_end must lie in (0, 1]");
  if (!(energy_tolerance >= 1.0)) throw ValidationError("energy_tolerance must be >= 1");
  if (!(growth_ceiling > 0.0)) throw ValidationError("growth_ceiling must be positive");
  for (const auto& m : monitors)
    if (m != "energy" && m != "h1_h2" && m != "h3_budget") throw ValidationError("unknown monitor '" + m + "'");
  for (double q : regularity_exponents)
    if (!(q > 1.0)) throw ValidationError("regularity exponents must exceed 1");
}

DecayFit fit_decay_rate(const TimeSeries& series, double t_a, double t_b, const std::string& name) {
  series.validate();
  if (!(t_a < t_b)) throw ValidationError("fit window must satisfy t_a < t_b");
  if (series.empty()) throw ValidationError("empty series");
  const double floor = 1e-13 * std::abs(series.values.front());
  std::vector<double> x, y;
  for (std::size_t n = 0; n < series.size(); ++n) {
    const double t = series.times[n];
    if (t < t_a || t > t_b) continue;
    const double v = series.values[n];
    if (v <= floor) {
      if (v <= 0.0 && floor == 0.0) throw ValidationError("non-positive value in decay fit");
      break;
    }
    x.push_back(t);
    y.push_back(std::log(v));
  }
  if (x.size() < 10) throw ValidationError("decay fit window has fewer than 10 samples");
  const double n = double(x.size());
  double sx = 0, sy = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sx += x[k];
    sy += y[k];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sxx += (x[k] - mx) * (x[k] - mx);
    sxy += (x[k] - mx) * (y[k] - my);
    syy += (y[k] - my) * (y[k] - my);
  }
  const double slope = sxy / sxx;
  DecayFit fit;
  fit.norm_name = name;
  fit.rate = -slope;
  fit.intercept = my - slope * mx;
  fit.t_a = x.front();
  fit.t_b = x.back();
  fit.samples = int(x.size());
  fit.r2 = syy > 0.0 ? std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0) : 1.0;
  return fit;
}

void MonitorLedger::add(LedgerEntry e) {
  e.flag = e.violated;
  for (auto it = entries.rbegin(); it != entries.rend(); ++it)
    if (it->monitor == e.monitor && it->quantity == e.quantity) {
      e.flag = e.flag || it->flag;
      break;
    }
  entries.push_back(std::move(e));
}

bool MonitorLedger::any_violation(const std::string& monitor) const {
  for (const auto& e : entries)
    if (e.violated && (monitor.empty() || e.monitor == monitor)) return true;
  return false;
}

std::optional<double> MonitorLedger::constant(const std::string& name) const {
  for (const auto& [k, v] : constants)
    if (k == name) return v;
  return std::nullopt;
}

std::string MonitorLedger::json_lines() const {
  std::ostringstream out;
  for (const auto& e : entries) {
    nlohmann::ordered_json j;
    j["t"] = e.t;
    j["monitor"] = e.monitor;
    j["quantity"] = e.quantity;
    j["lhs"] = e.lhs;
    j["rhs"] = e.rhs;
    j["violated"] = e.violated;
    j["flag"] = e.flag;
    out << j.dump() << '\n';
  }
  for (const auto& [k, v] : constants) {
    nlohmann::ordered_json j;
    j["constant"] = k;
    j["value"] = v;
    out << j.dump() << '\n';
  }
  return out.str();
}

TimeSeries TwinExperimentResult::error_series(const std::string& column) const {
  TimeSeries s;
  for (const auto& e : error) {
    const NormRecord& r = e.norms;
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

const DecayFit* TwinExperimentResult::fit(const std::string& name) const {
  for (const auto& f : fits)
    if (f.norm_name == name) return &f;
  return nullptr;
}

std::string TwinExperimentResult::error_csv() const {
  std::vector<NormRecord> rows;
  for (const auto& e : error) rows.push_back(e.norms);
  return norms_csv(rows);
}

double nudging_guard_value(const DiscreteSpace& space, const ObservationOperator& obs, double mu, double dt) {
  if (mu == 0.0 || obs.delta() == 0.0) return 0.0;
  std::vector<SpectralField> samples;
  for (int k = 0; k < 10; ++k) samples.push_back(smooth_random_field(space.domain(), 2, 9001 + k));
  const ObservationConstants c = estimate_observation_constants(obs, samples, 2.0);
  const double kappa = std::min(1.0, c.c_approx * obs.delta() * std::sqrt(space.max_stokes_eigenvalue()));
  return mu * dt * kappa;
}

namespace {

double sq(double x) { return x * x; }

double horizontal_gradient_sq(const Domain& d, const SpectralField& f) {
  return sq(l2_norm(d, derivative_x(d, f))) + sq(l2_norm(d, derivative_y(d, f)));
}

void check_cfl(const Domain& d, const SpectralField& v, const StepperConfig& cfg, double t, const char* who) {
  const double c = cfl_number(d, v, cfg.dt);
  if (c > cfg.cfl_guard) {
    std::ostringstream msg;
    msg << "advective CFL " << c << " of the " << who << " run exceeds guard " << cfg.cfl_guard << " at t = " << t;
    throw GuardViolation(msg.str());
  }
}

// Central differences of output snapshots, one-sided at the ends.
class RegularityTracker {
 public:
  RegularityTracker(const Domain& d, std::vector<double> qs) : d_(&d) {
    for (double q : qs) series_.push_back(RegularitySeries{q, {}, {}});
  }

  void push(double t, const SpectralField& v) {
    for (auto& s : series_) s.h2_norm.push(t, sobolev_norm(*d_, v, 2.0, s.q));
    times_.push_back(t);
    window_.push_back(v);
    if (window_.size() == 2 && times_.size() == 2) emit(0, 1, times_[0]);
    if (window_.size() == 3) {
      emit(0, 2, times_[times_.size() - 2]);
      window_.erase(window_.begin());
    }
  }

  std::vector<RegularitySeries> finish() {
    if (window_.size() == 2) emit(0, 1, times_.back());
    return series_;
  }

 private:
  void emit(std::size_t a, std::size_t b, double t) {
    const std::size_t n = times_.size();
    const double ta = times_[n - window_.size() + a], tb = times_[n - window_.size() + b];
    SpectralField dv = window_[b] - window_[a];
    dv *= 1.0 / (tb - ta);
    const PhysicalField p = to_physical(*d_, dv);
    for (auto& s : series_) s.dt_norm.push(t, lebesgue_norm(*d_, p, s.q));
  }

  const Domain* d_;
  std::vector<RegularitySeries> series_;
  std::vector<double> times_;
  std::vector<SpectralField> window_;
};

}  // namespace

TwinExperimentResult run_twin_experiment(const DiscreteSpace& space, const TwinExperimentConfig& cfg,
                                         RecordedObservations* record) {
  cfg.validate();
  const Domain& d = space.domain();
  const ObservationOperator obs(d, cfg.observation);
  const Forcing forcing = Forcing::from_spec(space, cfg.forcing);
  TwinExperimentResult result;
  result.delta = obs.delta();
  result.mu = cfg.mu;

  const double guard = nudging_guard_value(space, obs, cfg.mu, cfg.stepper.dt);
  if (!(guard < 0.5)) {
    std::ostringstream msg;
    msg << "nudging guard mu*dt*kappa = " << guard << " is not below 0.5";
    throw GuardViolation(msg.str());
  }

  SpectralField v = named_field(space, cfg.truth.name, cfg.truth.amplitude, cfg.truth.seed);
  SpectralField vt = named_field(space, cfg.assimilated.name, cfg.assimilated.amplitude, cfg.assimilated.seed);
  const bool direct = cfg.difference_mode != DifferenceMode::State;
  SpectralField V = v - vt;

  TruthCache cache(obs, forcing);
  const PrimitiveSystem truth_sys(d, forcing, cfg.mu);
  const NudgedSystem nudged_sys(d, cache, obs, cfg.mu);
  const DifferenceSystem diff_sys(d, cache, obs, cfg.mu, forcing);
  auto truth_step = make_stepper(cfg.stepper.scheme, space, truth_sys);
  auto nudged_step = make_stepper(cfg.stepper.scheme, space, nudged_sys);
  std::unique_ptr<Stepper> diff_step;
  if (direct) diff_step = make_stepper(cfg.stepper.scheme, space, diff_sys);

  RegularityTracker regularity(d, cfg.regularity_exponents);
  std::vector<double> h3_times, h3_lap, h3_grad;

  auto output = [&](double t) {
    result.truth_norms.push_back(measure_norms(d, v, t, cfg.lq_exponent));
    result.assimilated_norms.push_back(measure_norms(d, vt, t, cfg.lq_exponent));
    if (cfg.keep_assimilated_states) result.assimilated_states.push_back(vt);
    const SpectralField err = v - vt;
    ErrorSample e;
    e.norms = measure_norms(d, err, t, cfg.lq_exponent);
    const SpectralField mean = vertical_average(d, err);
    e.grad_mean_h = horizontal_gradient_sq(d, mean);
    e.fluct_l4 = std::pow(lebesgue_norm(d, to_physical(d, err - mean), 4.0), 4.0);
    e.dz_l2 = sq(l2_norm(d, derivative_z(d, err)));
    e.grad_l2 = sq(gradient_norm(d, err, 2.0));
    e.h2_sq = sq(e.norms.h2);
    e.forcing_grad = forcing.identically_zero() ? 0.0 : sq(gradient_norm(d, forcing(t), 2.0));
    if (direct) {
      result.direct_norms.push_back(measure_norms(d, V, t, cfg.lq_exponent));
      const double scale = l2_norm(d, V);
      const double gap = l2_norm(d, err - V);
      e.direct_mismatch = scale > 0.0 ? gap / scale : gap;
      result.difference_mismatch = std::max(result.difference_mismatch, e.direct_mismatch);
    }
    result.error.push_back(e);
    regularity.push(t, err);
    if (cfg.monitors.count("h3_budget")) {
      const SpectralField lap = laplacian(d, v);
      h3_times.push_back(t);
      h3_lap.push_back(l2_norm(d, lap));
      h3_grad.push_back(sq(gradient_norm(d, lap, 2.0)));
    }
  };

  auto capture = [&](double t) {
    if (record) record->record(t, cache.observed_state(t), cache.observed_forcing(t));
  };

  cache.record(0.0, v);
  capture(0.0);
  output(0.0);
  const long n = cfg.stepper.steps();
  double t = 0.0;
  for (long s = 1; s <= n; ++s) {
    check_cfl(d, v, cfg.stepper, t, "truth");
    check_cfl(d, vt, cfg.stepper, t, "assimilated");
    const double t1 = double(s) * cfg.stepper.dt;
    SpectralField v1 = truth_step->step(v, t, t1);
    cache.record(t1, v1);
    capture(t1);
    SpectralField vt1 = nudged_step->step(vt, t, t1);
    SpectralField V1;
    if (direct) V1 = diff_step->step(V, t, t1);
    if (!v1.all_finite() || !vt1.all_finite() || (direct && !V1.all_finite())) {
      std::ostringstream msg;
      msg << "non-finite state at t = " << t1;
      result.failure = msg.str();
      break;
    }
    v = std::move(v1);
    vt = std::move(vt1);
    if (direct) V = std::move(V1);
    cache.discard_before(t1);
    t = t1;
    if (s % cfg.stepper.output_every == 0 || s == n) output(t);
  }
  result.final_truth = v;
  result.final_assimilated = vt;
  result.regularity = regularity.finish();

  const double T = cfg.stepper.T;
  for (const char* name : {"L2", "H1", "H2"}) {
    try {
      result.fits.push_back(fit_decay_rate(result.error_series(name), cfg.fit_start * T, T, name));
    } catch (const ValidationError&) {
      // Too few samples above the floor: no fit for this norm.
    }
  }
  const DecayFit* l2 = result.fit("L2");
  if (cfg.monitors.count("energy")) energy_monitor(cfg, obs.delta(), result.error, l2 ? l2->rate : 0.0, result.ledger);
  if (cfg.monitors.count("h1_h2")) h1_h2_monitors(cfg, obs.delta(), result.error, result.ledger);
  if (cfg.monitors.count("h3_budget")) h3_budget_monitor(h3_times, h3_lap, h3_grad, result.ledger);
  return result;
}

std::vector<SpectralField> run_nudged_from_observations(const DiscreteSpace& space, const TwinExperimentConfig& cfg,
                                                        const ObservationSource& observations) {
  cfg.validate();
  const Domain& d = space.domain();
  const ObservationOperator obs(d, cfg.observation);
  const NudgedSystem sys(d, observations, obs, cfg.mu);
  auto stepper = make_stepper(cfg.stepper.scheme, space, sys);
  SpectralField vt = named_field(space, cfg.assimilated.name, cfg.assimilated.amplitude, cfg.assimilated.seed);
  std::vector<SpectralField> states{vt};
  const long n = cfg.stepper.steps();
  double t = 0.0;
  for (long s = 1; s <= n; ++s) {
    const double t1 = double(s) * cfg.stepper.dt;
    vt = stepper->step(vt, t, t1);
    t = t1;
    if (s % cfg.stepper.output_every == 0 || s == n) states.push_back(vt);
  }
  return states;
}

void energy_monitor(const TwinExperimentConfig& cfg, double delta, const std::vector<ErrorSample>& samples,
                    double fitted_rate, MonitorLedger& ledger) {
  if (samples.empty()) return;
  const double c = 2.0 * std::max(0.0, fitted_rate);
  const double T = samples.back().norms.t;
  const double t_cal = cfg.calibration_end * T;
  const double v0 = sq(samples.front().norms.l2);
  std::vector<double> conv(samples.size(), 0.0);
  for (std::size_t k = 1; k < samples.size(); ++k) {
    const double h = samples[k].norms.t - samples[k - 1].norms.t;
    const double e = std::exp(-c * h);
    conv[k] = e * conv[k - 1] + 0.5 * h * (e * samples[k - 1].forcing_grad + samples[k].forcing_grad);
  }
  double C = 0.0;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const double t = samples[k].norms.t;
    if (t > t_cal) break;
    const double excess = sq(samples[k].norms.l2) - std::exp(-c * t) * v0;
    if (excess > 0.0 && delta * conv[k] > 0.0) C = std::max(C, excess / (delta * conv[k]));
  }
  ledger.constants.emplace_back("energy.c", c);
  ledger.constants.emplace_back("energy.C", C);
  double worst = 0.0;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const double t = samples[k].norms.t;
    LedgerEntry e;
    e.t = t;
    e.monitor = "energy";
    e.quantity = "L2_squared";
    e.lhs = sq(samples[k].norms.l2);
    e.rhs = std::exp(-c * t) * v0 + C * delta * conv[k];
    const double ratio = e.rhs > 0.0 ? e.lhs / e.rhs : (e.lhs > 0.0 ? INFINITY : 0.0);
    if (t > t_cal) worst = std::max(worst, ratio);
    e.violated = t > t_cal && ratio > cfg.energy_tolerance;
    ledger.add(e);
  }
  ledger.constants.emplace_back("energy.max_ratio_after_calibration", worst);
}

void h1_h2_monitors(const TwinExperimentConfig& cfg, double delta, const std::vector<ErrorSample>& samples,
                    MonitorLedger& ledger) {
  if (samples.empty()) return;
  struct Quantity {
    const char* name;
    double ErrorSample::*field;
  };
  const Quantity quantities[] = {{"grad_mean_h", &ErrorSample::grad_mean_h},
                                 {"fluct_l4", &ErrorSample::fluct_l4},
                                 {"dz_l2", &ErrorSample::dz_l2},
                                 {"grad_l2", &ErrorSample::grad_l2},
                                 {"h2_sq", &ErrorSample::h2_sq}};
  for (const auto& q : quantities) {
    const double initial = samples.front().*q.field;
    double peak = -1.0, t_peak = 0.0, dissipation = 0.0;
    for (std::size_t k = 0; k < samples.size(); ++k) {
      const double value = samples[k].*q.field;
      if (k > 0) {
        const double h = samples[k].norms.t - samples[k - 1].norms.t;
        dissipation += 0.5 * h * (value + samples[k - 1].*q.field);
      }
      if (value > peak) {
        peak = value;
        t_peak = samples[k].norms.t;
      }
      LedgerEntry e;
      e.t = samples[k].norms.t;
      e.monitor = "h1_h2";
      e.quantity = q.name;
      e.lhs = value;
      e.rhs = cfg.growth_ceiling * initial;
      e.violated = value > e.rhs;
      ledger.add(e);
    }
    ledger.constants.emplace_back(std::string("h1_h2.time_of_max.") + q.name, t_peak);
    ledger.constants.emplace_back(std::string("h1_h2.integral.") + q.name, dissipation);
  }
  // int_0^T |grad V|^2 against |V0|^2 + C delta int_0^T |grad f|^2.
  double grad_integral = 0.0, forcing_integral = 0.0;
  for (std::size_t k = 1; k < samples.size(); ++k) {
    const double h = samples[k].norms.t - samples[k - 1].norms.t;
    grad_integral += 0.5 * h * (samples[k].grad_l2 + samples[k - 1].grad_l2);
    forcing_integral += 0.5 * h * (samples[k].forcing_grad + samples[k - 1].forcing_grad);
  }
  const double C = ledger.constant("energy.C").value_or(0.0);
  LedgerEntry e;
  e.t = samples.back().norms.t;
  e.monitor = "h1_h2";
  e.quantity = "grad_budget";
  e.lhs = grad_integral;
  e.rhs = sq(samples.front().norms.l2) + C * delta * forcing_integral;
  e.violated = !std::isfinite(e.lhs) || e.lhs > e.rhs;
  ledger.add(e);
}

void h3_budget_monitor(const std::vector<double>& times, const std::vector<double>& laplacian_norm,
                       const std::vector<double>& grad_laplacian_sq, MonitorLedger& ledger) {
  if (times.empty()) return;
  double integral = 0.0;
  std::vector<double> cumulative{0.0};
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (k > 0) {
      integral += 0.5 * (times[k] - times[k - 1]) * (grad_laplacian_sq[k] + grad_laplacian_sq[k - 1]);
      cumulative.push_back(integral);
    }
    LedgerEntry e;
    e.t = times[k];
    e.monitor = "h3_budget";
    e.quantity = "lap_plus_integral";
    e.lhs = laplacian_norm[k] + integral;
    e.rhs = INFINITY;
    e.violated = !std::isfinite(e.lhs);
    ledger.add(e);
  }
  // Growth check: integral increments over consecutive quarters of the second
  // half must not increase.
  const std::size_t n = cumulative.size();
  bool superlinear = false;
  if (n >= 8) {
    const std::size_t a = n / 2, b = a + (n - a) / 2, c = n - 1;
    const double first = cumulative[b] - cumulative[a];
    const double second = cumulative[c] - cumulative[b];
    superlinear = second > first * 1.01 + 1e-300;
  }
  const double tail = n >= 10 ? cumulative[n - 1] - cumulative[n - 1 - n / 10] : 0.0;
  LedgerEntry e;
  e.t = times.back();
  e.monitor = "h3_budget";
  e.quantity = "superlinear_growth";
  e.lhs = superlinear ? 1.0 : 0.0;
  e.rhs = 0.0;
  e.violated = superlinear;
  ledger.add(e);
  ledger.constants.emplace_back("h3_budget.total", integral);
  ledger.constants.emplace_back("h3_budget.tail_increment", tail);
  ledger.constants.emplace_back("h3_budget.tail_fraction", integral > 0.0 ? tail / integral : 0.0);
}

double maximal_regularity_functional(const TwinExperimentResult& result, const NormSpec& spec, double mu_star) {
  NormSpec weighted = spec;
  weighted.gamma = mu_star;
  weighted.validate();
  for (const auto& s : result.regularity) {
    if (std::abs(s.q - spec.q) > 1e-12) continue;
    if (s.h2_norm.size() < 3 || s.dt_norm.size() < 3) throw ValidationError("fewer than 3 snapshots");
    return time_weighted_norm(s.dt_norm, weighted) + time_weighted_norm(s.h2_norm, weighted);
  }
  throw ValidationError("no regularity series for q = " + std::to_string(spec.q));
}

namespace {

SweepRow sweep_row(const DiscreteSpace& space, TwinExperimentConfig cfg, double mu, const ObservationSpec& ospec) {
  cfg.mu = mu;
  cfg.observation = ospec;
  cfg.difference_mode = DifferenceMode::State;
  SweepRow row;
  row.mu = mu;
  try {
    row.delta = ObservationOperator(space.domain(), ospec).delta();
    const TwinExperimentResult r = run_twin_experiment(space, cfg);
    std::vector<std::string> flags;
    if (r.failure) flags.push_back("diverged");
    if (const DecayFit* f = r.fit("L2")) {
      row.rate_l2 = f->rate;
      row.r2 = f->r2;
    } else {
      flags.push_back("no_fit");
    }
    if (const DecayFit* f = r.fit("H1")) row.rate_h1 = f->rate;
    for (const auto& e : r.error) row.max_h2 = std::max(row.max_h2, e.norms.h2);
    if (r.ledger.any_violation("energy")) flags.push_back("energy");
    if (r.ledger.any_violation("h1_h2")) flags.push_back("h1_h2");
    if (r.ledger.any_violation("h3_budget")) flags.push_back("h3_budget");
    if (row.rate_l2 <= 0.0) flags.push_back("nonconvergent");
    for (std::size_t k = 0; k < flags.size(); ++k) row.flags += (k ? ";" : "") + flags[k];
  } catch (const Error& e) {
    row.flags = std::string("failed:") + e.what();
  }
  return row;
}

}  // namespace

std::vector<SweepRow> parameter_sweep(const DiscreteSpace& space, const TwinExperimentConfig& base,
                                      const std::vector<double>& mus,
                                      const std::vector<ObservationSpec>& observations, int threads) {
  std::vector<std::pair<double, ObservationSpec>> jobs;
  for (const auto& ospec : observations)
    for (double mu : mus) jobs.emplace_back(mu, ospec);
  std::vector<SweepRow> rows(jobs.size());
  const int workers = std::clamp(threads, 1, int(jobs.size()));
  if (workers == 1) {
    for (std::size_t k = 0; k < jobs.size(); ++k) rows[k] = sweep_row(space, base, jobs[k].first, jobs[k].second);
    return rows;
  }
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    const Domain domain(space.domain().spec());
    const DiscreteSpace local(domain);
    for (std::size_t k = next++; k < jobs.size(); k = next++)
      rows[k] = sweep_row(local, base, jobs[k].first, jobs[k].second);
  };
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "mu,delta,rate_L2,rate_H1,r2,max_H2,flags\n" << std::setprecision(17);
  for (const auto& r : rows) {
    std::string flags = r.flags;
    for (char& ch : flags)
      if (ch == ',' || ch == '\n') ch = ' ';
    out << r.mu << ',' << r.delta << ',' << r.rate_l2 << ',' << r.rate_h1 << ',' << r.r2 << ',' << r.max_h2 << ','
        << flags << '\n';
  }
  return out.str();
}

}  // namespace hydronudge
