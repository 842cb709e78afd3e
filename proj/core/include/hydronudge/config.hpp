#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hydronudge/assimilation.hpp"
#include "hydronudge/domain.hpp"

namespace hydronudge {

enum class ExperimentKind { Simulate, Assimilate, Sweep, Spectrum, VerifyOps };
std::string to_string(ExperimentKind k);
ExperimentKind experiment_kind_from_string(const std::string& name);

/// Everything a CLI run needs. Text form:
///
///   # comment
///   experiment = assimilate
///   [domain]
///   nx = 16
///
/// Keys before the first section header are top level; all others are
/// addressed as section.key. Every key is optional.
struct RunConfig {
  DomainSpec domain;
  ExperimentKind experiment = ExperimentKind::Assimilate;
  StepperConfig stepper;
  double mu = 50.0;
  ObservationSpec observation;
  ForcingSpec forcing;
  /// Truth (or simulated) initial data; the seed comes from `seed`.
  InitialSpec initial{"taylor-green-layer", 1.0, 0};
  InitialSpec assimilated{"zero", 0.0, 0};
  std::uint64_t seed = 0;
  std::string output_dir = "out";

  DifferenceMode difference_mode = DifferenceMode::Both;
  double fit_start = 0.4;
  double calibration_end = 0.4;
  double energy_tolerance = 1.05;
  double growth_ceiling = 100.0;
  std::vector<std::string> monitors{"energy", "h1_h2", "h3_budget"};
  double lq_exponent = 4.0;

  std::vector<double> sweep_mu{0.0, 5.0, 20.0, 80.0};
  /// Observation specs of a sweep, written "cube:4x4x4", "lowpass:0.5" or "identity".
  std::vector<ObservationSpec> sweep_observations{ObservationSpec{}};
  int dense_cap = 4096;

  /// Cross-field checks; throws ValidationError naming the key.
  void validate() const;
  /// Assimilation settings with the seed folded into both initial specs.
  TwinExperimentConfig twin() const;
  bool operator==(const RunConfig& other) const;
};

/// Parses config text. Errors carry "line N: key: message".
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);
/// Canonical text with every key, in a fixed order; parse(echo(c)) == c.
std::string echo_config(const RunConfig& cfg);

std::string format_observation(const ObservationSpec& spec);
ObservationSpec parse_observation(const std::string& text);

}  // namespace hydronudge
