#include <cstdio>
#include <cstdlib>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <Eigen/Core>
#include <nlohmann/json.hpp>

#include "hydronudge/config.hpp"
#include "hydronudge/error.hpp"
#include "hydronudge/io.hpp"
#include "hydronudge/runner.hpp"

namespace hn = hydronudge;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

struct Options {
  std::string config;
  std::optional<int> threads;
  std::optional<std::string> output;
  std::optional<double> mu, delta, dt, T;
  std::vector<double> mus;
  std::string csv, column = "L2", window;
};

int resolve_threads(const Options& o) {
  if (o.threads) return *o.threads;
  if (const char* env = std::getenv("HYDRONUDGE_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n >= 1) return n;
    } catch (const std::exception&) {
    }
    throw hn::ValidationError(std::string("HYDRONUDGE_THREADS must be a positive integer, got '") + env + "'");
  }
  return 1;
}

hn::RunConfig load(const Options& o, hn::ExperimentKind kind) {
  hn::RunConfig cfg = o.config.empty() ? hn::RunConfig{} : hn::load_config(o.config);
  cfg.experiment = kind;
  if (o.output) cfg.output_dir = *o.output;
  if (o.mu) cfg.mu = *o.mu;
  if (o.dt) cfg.stepper.dt = *o.dt;
  if (o.T) cfg.stepper.T = *o.T;
  if (o.delta) {
    if (cfg.observation.kind != hn::ObservationKind::FourierLowpass)
      throw hn::ValidationError("--delta: only lowpass observations take delta; cube resolution is nudging.cx/cy/cz");
    cfg.observation.delta = *o.delta;
  }
  cfg.validate();
  return cfg;
}

nlohmann::ordered_json fit_json(const hn::DecayFit& f) {
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

int run(const Options& o, hn::ExperimentKind kind, int threads) {
  hn::RunConfig cfg = load(o, kind);
  if (!o.mus.empty()) cfg.sweep_mu = o.mus;
  else if (kind == hn::ExperimentKind::Spectrum && o.mu) cfg.sweep_mu = {*o.mu};
  cfg.validate();
  const hn::RunOutcome r = hn::execute(cfg, cfg.output_dir, threads);
  std::fputs(r.report.c_str(), stdout);
  std::printf("manifest %s\n", r.manifest.string().c_str());
  if (r.failure) {
    std::fprintf(stderr, "error: %s\n", r.failure->c_str());
    return kExitNumerical;
  }
  return 0;
}

int fit_decay(const Options& o) {
  const hn::CsvTable table = hn::parse_csv(hn::read_text_file(o.csv));
  const auto colon = o.window.find(':');
  if (colon == std::string::npos) throw hn::ValidationError("--window must read a:b");
  double a = 0.0, b = 0.0;
  try {
    a = std::stod(o.window.substr(0, colon));
    b = std::stod(o.window.substr(colon + 1));
  } catch (const std::exception&) {
    throw hn::ValidationError("--window must read a:b with numbers, got '" + o.window + "'");
  }
  hn::TimeSeries s;
  const auto t = table.column(table.header.front());
  const auto v = table.column(o.column);
  for (std::size_t k = 0; k < t.size(); ++k) s.push(t[k], v[k]);
  const hn::DecayFit f = hn::fit_decay_rate(s, a, b, o.column);
  std::printf("%s rate %.10g intercept %.10g r2 %.8f samples %d window [%g, %g]\n", f.norm_name.c_str(), f.rate,
              f.intercept, f.r2, f.samples, f.t_a, f.t_b);
  std::printf("%s\n", fit_json(f).dump().c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pseudospectral hydrostatic primitive equations with nudging data assimilation"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  int threads_flag = 0;
  app.add_option("--config", o.config, "Run configuration file")->check(CLI::ExistingFile);
  auto* threads = app.add_option("--threads", threads_flag, "Worker threads (fallback: HYDRONUDGE_THREADS)")
                      ->check(CLI::PositiveNumber);
  std::string output;
  auto* output_opt = app.add_option("--output", output, "Output directory (overrides output_dir)");

  auto overrides = [&](CLI::App* sub) {
    sub->add_option_function<double>("--mu", [&](double x) { o.mu = x; }, "Nudging strength");
    sub->add_option_function<double>("--delta", [&](double x) { o.delta = x; }, "Lowpass observation resolution");
    sub->add_option_function<double>("--dt", [&](double x) { o.dt = x; }, "Time step");
    sub->add_option_function<double>("--T", [&](double x) { o.T = x; }, "Final time");
  };
  auto* sim = app.add_subcommand("simulate", "Integrate the primitive equations");
  overrides(sim);
  auto* assim = app.add_subcommand("assimilate", "Twin experiment: truth, nudged run and difference system");
  overrides(assim);
  auto* swp = app.add_subcommand("sweep", "Twin experiments over mu and observation operators");
  overrides(swp);
  swp->add_option("--mus", o.mus, "Comma separated mu values (overrides sweep.mu)")->delimiter(',');
  auto* spec = app.add_subcommand("spectrum", "Dense spectrum of A + mu P J");
  overrides(spec);
  spec->add_option("--mus", o.mus, "Comma separated mu values")->delimiter(',');
  auto* ver = app.add_subcommand("verify-ops", "Operator property suite");
  overrides(ver);
  auto* fit = app.add_subcommand("fit-decay", "Exponential decay fit of one CSV column");
  fit->add_option("csv", o.csv, "CSV file with time in the first column")->required()->check(CLI::ExistingFile);
  fit->add_option("--col", o.column, "Column name");
  fit->add_option("--window", o.window, "Fit window a:b")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }
  if (*threads) o.threads = threads_flag;
  if (*output_opt) o.output = output;

  try {
    const int n = resolve_threads(o);
    Eigen::setNbThreads(n);
    if (*sim) return run(o, hn::ExperimentKind::Simulate, n);
    if (*assim) return run(o, hn::ExperimentKind::Assimilate, n);
    if (*swp) return run(o, hn::ExperimentKind::Sweep, n);
    if (*spec) return run(o, hn::ExperimentKind::Spectrum, n);
    if (*ver) return run(o, hn::ExperimentKind::VerifyOps, n);
    if (*fit) return fit_decay(o);
  } catch (const hn::ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitValidation;
  } catch (const hn::NumericalError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
