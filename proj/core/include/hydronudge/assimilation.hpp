#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hydronudge/dynamics.hpp"
#include "hydronudge/galerkin.hpp"
#include "hydronudge/norms.hpp"
#include "hydronudge/observation.hpp"
#include "hydronudge/timestep.hpp"

namespace hydronudge {

/// Named initial data (see named_field) with amplitude and seed.
struct InitialSpec {
  std::string name = "zero";
  double amplitude = 0.0;
  std::uint64_t seed = 0;

  void validate() const;
};

enum class DifferenceMode { State, Direct, Both };
std::string to_string(DifferenceMode m);
DifferenceMode difference_mode_from_string(const std::string& name);

struct TwinExperimentConfig {
  InitialSpec truth{"taylor-green-layer", 1.0, 0};
  ForcingSpec forcing;
  InitialSpec assimilated{"zero", 0.0, 0};
  double mu = 50.0;
  ObservationSpec observation;
  StepperConfig stepper;
  DifferenceMode difference_mode = DifferenceMode::Both;
  /// Decay fits use [fit_start * T, T].
  double fit_start = 0.4;
  /// Energy monitor constants are calibrated on [0, calibration_end * T].
  double calibration_end = 0.4;
  /// Tolerated LHS / RHS of the energy inequality after calibration.
  double energy_tolerance = 1.05;
  /// h1_h2 monitors flag values above ceiling * (initial value).
  double growth_ceiling = 100.0;
  std::set<std::string> monitors{"energy", "h1_h2", "h3_budget"};
  /// Exponents q of the maximal-regularity series.
  std::vector<double> regularity_exponents{2.0, 4.0};
  /// Lebesgue exponent of the Lq column.
  double lq_exponent = 4.0;
  bool keep_assimilated_states = false;

  void validate() const;
};

struct DecayFit {
  std::string norm_name;
  double rate = 0.0;
  double intercept = 0.0;
  double t_a = 0.0, t_b = 0.0;
  double r2 = 0.0;
  int samples = 0;
};

/// Least squares of log(value) on [t_a, t_b]. Samples below 1e-13 times the
/// first value end the window. Fewer than 10 usable samples is an error.
DecayFit fit_decay_rate(const TimeSeries& series, double t_a, double t_b, const std::string& name = "");

struct LedgerEntry {
  double t = 0.0;
  std::string monitor;
  std::string quantity;
  double lhs = 0.0;
  double rhs = 0.0;
  bool violated = false;
  /// True once any earlier entry of the same monitor and quantity violated.
  bool flag = false;
};

struct MonitorLedger {
  std::vector<LedgerEntry> entries;
  /// Measured constants (c, C, tightness, times of maxima, ...).
  std::vector<std::pair<std::string, double>> constants;

  void add(LedgerEntry e);
  bool any_violation(const std::string& monitor = "") const;
  std::optional<double> constant(const std::string& name) const;
  std::string json_lines() const;
};

/// Per output time diagnostics of the error V = v - v_assimilated.
struct ErrorSample {
  NormRecord norms;
  double grad_mean_h = 0.0;    // |grad_H mean(V)|_2^2
  double fluct_l4 = 0.0;       // |V - mean(V)|_4^4
  double dz_l2 = 0.0;          // |dz V|_2^2
  double grad_l2 = 0.0;        // |grad V|_2^2
  double h2_sq = 0.0;          // |V|_{H^2}^2
  double forcing_grad = 0.0;   // |grad f|_2^2
  double direct_mismatch = 0.0;
};

struct RegularitySeries {
  double q = 2.0;
  TimeSeries dt_norm;   // |d/dt V|_q
  TimeSeries h2_norm;   // |V|_{H^{2,q}}
};

struct TwinExperimentResult {
  std::vector<NormRecord> truth_norms;
  std::vector<NormRecord> assimilated_norms;
  std::vector<ErrorSample> error;
  std::vector<NormRecord> direct_norms;
  std::vector<DecayFit> fits;
  MonitorLedger ledger;
  std::vector<RegularitySeries> regularity;
  /// max over output times of |(v - v~) - V_direct| / |V_direct|.
  double difference_mismatch = 0.0;
  double delta = 0.0;
  double mu = 0.0;
  std::optional<std::string> failure;
  SpectralField final_truth, final_assimilated;
  /// Assimilated state at every output time, kept only on request.
  std::vector<SpectralField> assimilated_states;

  TimeSeries error_series(const std::string& column) const;
  const DecayFit* fit(const std::string& name) const;
  std::string error_csv() const;
};

/// Truth, nudged and (optionally) difference runs advanced in lockstep.
/// When `record` is given, the observation streams J v and J f consumed by
/// the nudged run are copied into it at every step time.
TwinExperimentResult run_twin_experiment(const DiscreteSpace& space, const TwinExperimentConfig& cfg,
                                         RecordedObservations* record = nullptr);

/// Only the nudged run, driven purely by observation streams. Returns the
/// state at every output time.
std::vector<SpectralField> run_nudged_from_observations(const DiscreteSpace& space, const TwinExperimentConfig& cfg,
                                                        const ObservationSource& observations);

/// Energy inequality |V(t)|^2 <= e^{-ct}|V0|^2 + C delta int_0^t e^{-c(t-s)} |grad f|^2 ds.
void energy_monitor(const TwinExperimentConfig& cfg, double delta, const std::vector<ErrorSample>& samples,
                    double fitted_rate, MonitorLedger& ledger);
void h1_h2_monitors(const TwinExperimentConfig& cfg, double delta, const std::vector<ErrorSample>& samples,
                    MonitorLedger& ledger);
/// |Laplacian v(t)| + int_0^t |grad Laplacian v|^2 on the truth run.
void h3_budget_monitor(const std::vector<double>& times, const std::vector<double>& laplacian_norm,
                       const std::vector<double>& grad_laplacian_sq, MonitorLedger& ledger);

/// |e^{mu* t} dV/dt|_{L^p_eta(L^q)} + |e^{mu* t} V|_{L^p_eta(H^{2,q})}.
double maximal_regularity_functional(const TwinExperimentResult& result, const NormSpec& spec, double mu_star);

struct SweepRow {
  double mu = 0.0;
  double delta = 0.0;
  double rate_l2 = 0.0;
  double rate_h1 = 0.0;
  double r2 = 0.0;
  double max_h2 = 0.0;
  std::string flags;
};

/// Rows are ordered observation-major. With threads > 1 every worker builds
/// its own grid; results do not depend on the thread count.
std::vector<SweepRow> parameter_sweep(const DiscreteSpace& space, const TwinExperimentConfig& base,
                                      const std::vector<double>& mus,
                                      const std::vector<ObservationSpec>& observations, int threads = 1);
std::string sweep_csv(const std::vector<SweepRow>& rows);

/// mu * dt * min(1, C_approx delta sqrt(lambda_max(A))) must stay below 0.5.
double nudging_guard_value(const DiscreteSpace& space, const ObservationOperator& obs, double mu, double dt);

}  // namespace hydronudge
