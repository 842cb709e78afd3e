#include "hydronudge/runner.hpp"

#include <cstdio>
#include <iomanip>
#include <sstream>

#include <nlohmann/json.hpp>

#include "hydronudge/assimilation.hpp"
#include "hydronudge/io.hpp"
#include "hydronudge/snapshot.hpp"
#include "hydronudge/spectral_analysis.hpp"
#include "hydronudge/transform.hpp"
#include "hydronudge/verification.hpp"

namespace hydronudge {

namespace {

nlohmann::ordered_json fit_json(const DecayFit& f) {
  nlohmann::ordered_json j;
  j["norm"] = f.norm_name;
  j["rate"] = f.rate;
  j["intercept"] = f.intercept;
  j["t_a"] = f.t_a;
  j["t_b"] = f.t_b;
  j["r2"] = f.r2;
  j["samples"] = f.samples;
  return j;
}

void simulate(const RunConfig& cfg, OutputDirectory& out, RunOutcome& outcome) {
  const Domain d(cfg.domain);
  const DiscreteSpace space(d);
  const Forcing forcing = Forcing::from_spec(space, cfg.forcing);
  const PrimitiveSystem sys(d, forcing);
  const SpectralField v0 = named_field(space, cfg.initial.name, cfg.initial.amplitude, cfg.seed);
  RunOptions ro;
  ro.lq_exponent = cfg.lq_exponent;
  const Trajectory tr = run_simulation(space, sys, v0, cfg.stepper, ro);
  out.write("norms.csv", norms_csv(tr.norms));
  write_snapshot(out.root() / "final.hnud", cfg.domain, tr.final_time, to_physical(d, tr.final_state));
  out.add("final.hnud");
  std::ostringstream r;
  r << "final time " << tr.final_time << ", " << tr.norms.size() << " norm records\n";
  outcome.report = r.str();
  outcome.failure = tr.failure;
}

void assimilate(const RunConfig& cfg, OutputDirectory& out, RunOutcome& outcome) {
  const Domain d(cfg.domain);
  const DiscreteSpace space(d);
  const TwinExperimentResult r = run_twin_experiment(space, cfg.twin());
  out.write("truth_norms.csv", norms_csv(r.truth_norms));
  out.write("assimilated_norms.csv", norms_csv(r.assimilated_norms));
  out.write("error_norms.csv", r.error_csv());
  if (!r.direct_norms.empty()) out.write("direct_norms.csv", norms_csv(r.direct_norms));
  nlohmann::ordered_json summary;
  summary["mu"] = r.mu;
  summary["delta"] = r.delta;
  summary["difference_mismatch"] = r.difference_mismatch;
  summary["fits"] = nlohmann::ordered_json::array();
  for (const auto& f : r.fits) summary["fits"].push_back(fit_json(f));
  summary["failure"] = r.failure ? *r.failure : "";
  out.write("summary.json", summary.dump(2) + "\n");
  out.write("monitors.jsonl", r.ledger.json_lines());
  std::ostringstream reg;
  reg << "q,t,dt_norm,h2_norm\n" << std::setprecision(17);
  for (const auto& s : r.regularity)
    for (std::size_t k = 0; k < s.h2_norm.size() && k < s.dt_norm.size(); ++k)
      reg << s.q << ',' << s.h2_norm.times[k] << ',' << s.dt_norm.values[k] << ',' << s.h2_norm.values[k] << '\n';
  out.write("regularity.csv", reg.str());
  std::ostringstream rep;
  char line[160];
  for (const auto& f : r.fits) {
    std::snprintf(line, sizeof line, "%-3s rate %.6g  r2 %.6f  window [%g, %g]\n", f.norm_name.c_str(), f.rate, f.r2,
                  f.t_a, f.t_b);
    rep << line;
  }
  std::snprintf(line, sizeof line, "difference-mode mismatch %.3e\n", r.difference_mismatch);
  rep << line;
  outcome.report = rep.str();
  outcome.failure = r.failure;
}

void sweep(const RunConfig& cfg, OutputDirectory& out, RunOutcome& outcome, int threads) {
  const Domain d(cfg.domain);
  const DiscreteSpace space(d);
  const auto rows = parameter_sweep(space, cfg.twin(), cfg.sweep_mu, cfg.sweep_observations, threads);
  outcome.report = sweep_csv(rows);
  out.write("sweep.csv", outcome.report);
}

void spectrum(const RunConfig& cfg, OutputDirectory& out, RunOutcome& outcome) {
  const Domain d(cfg.domain);
  const DiscreteSpace space(d);
  const ObservationOperator obs(d, cfg.observation);
  const auto rows = spectral_gap(space, cfg.sweep_mu, {&obs}, cfg.dense_cap);
  outcome.report = gap_csv(rows);
  out.write("gap.csv", outcome.report);
}

void verify(const RunConfig& cfg, OutputDirectory& out, RunOutcome& outcome) {
  const auto checks = verify_operators(cfg.domain, cfg.seed + 11);
  outcome.report = format_checks(checks);
  std::ostringstream csv;
  csv << "check,value,tolerance,passed\n" << std::setprecision(17);
  int failed = 0;
  for (const auto& c : checks) {
    csv << '"' << c.name << "\"," << c.value << ',' << c.tolerance << ',' << (c.passed ? 1 : 0) << '\n';
    failed += c.passed ? 0 : 1;
  }
  out.write("verify_ops.csv", csv.str());
  if (failed) outcome.failure = std::to_string(failed) + " operator checks failed";
}

}  // namespace

RunOutcome execute(const RunConfig& cfg, const std::filesystem::path& root, int threads) {
  cfg.validate();
  OutputDirectory out(root);
  RunOutcome outcome;
  switch (cfg.experiment) {
    case ExperimentKind::Simulate: simulate(cfg, out, outcome); break;
    case ExperimentKind::Assimilate: assimilate(cfg, out, outcome); break;
    case ExperimentKind::Sweep: sweep(cfg, out, outcome, threads); break;
    case ExperimentKind::Spectrum: spectrum(cfg, out, outcome); break;
    case ExperimentKind::VerifyOps: verify(cfg, out, outcome); break;
  }
  out.write("config.ini", echo_config(cfg));
  outcome.manifest = out.write_manifest();
  return outcome;
}

}  // namespace hydronudge
