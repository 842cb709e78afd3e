#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "hydronudge/assimilation.hpp"
#include "hydronudge/error.hpp"

using namespace hydronudge;

namespace {

DomainSpec small() {
  DomainSpec s;
  s.nx = 8;
  s.ny = 8;
  s.nz = 9;
  return s;
}

TwinExperimentConfig short_twin() {
  TwinExperimentConfig cfg;
  cfg.truth = {"taylor-green-layer", 1.0, 0};
  cfg.assimilated = {"random", 0.5, 3};
  cfg.forcing = ForcingSpec{"decaying-modes", 1.0, 2.0};
  cfg.mu = 20.0;
  cfg.observation = ObservationSpec{ObservationKind::CubeAverage, 4, 4, 2};
  cfg.stepper.dt = 2e-3;
  cfg.stepper.T = 0.4;
  cfg.stepper.output_every = 5;
  return cfg;
}

}  // namespace

TEST_CASE("decay fit recovers an exact exponential") {
  TimeSeries s;
  for (int k = 0; k <= 100; ++k) s.push(0.05 * k, 3.0 * std::exp(-2.0 * 0.05 * k));
  const DecayFit f = fit_decay_rate(s, 1.0, 4.0, "L2");
  CHECK(f.rate == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(f.intercept == doctest::Approx(std::log(3.0)).epsilon(1e-12));
  CHECK(f.r2 == doctest::Approx(1.0));
  CHECK(f.samples == 61);
  CHECK(f.t_a == doctest::Approx(1.0));
  CHECK(f.norm_name == "L2");
}

TEST_CASE("decay fit agrees with a least-squares oracle on noisy data") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> noise(0.0, 0.05);
  TimeSeries s;
  std::vector<double> t, y;
  for (int k = 0; k <= 80; ++k) {
    const double tk = 0.1 * k;
    s.push(tk, std::exp(-0.7 * tk + noise(rng)));
    if (tk >= 2.0 && tk <= 6.0 + 1e-12) {
      t.push_back(tk);
      y.push_back(std::log(s.values.back()));
    }
  }
  Eigen::MatrixXd a(t.size(), 2);
  Eigen::VectorXd b(t.size());
  for (std::size_t k = 0; k < t.size(); ++k) {
    a(k, 0) = 1.0;
    a(k, 1) = t[k];
    b(k) = y[k];
  }
  const Eigen::Vector2d coef = a.colPivHouseholderQr().solve(b);
  const DecayFit f = fit_decay_rate(s, 2.0, 6.0 + 1e-12);
  CHECK(f.rate == doctest::Approx(-coef(1)).epsilon(1e-10));
  CHECK(f.intercept == doctest::Approx(coef(0)).epsilon(1e-10));
  const Eigen::VectorXd resid = b - a * coef;
  const double r2 = 1.0 - resid.squaredNorm() / (b.array() - b.mean()).matrix().squaredNorm();
  CHECK(f.r2 == doctest::Approx(r2).epsilon(1e-10));
  CHECK(f.r2 < 0.999);
}

TEST_CASE("decay fit errors") {
  TimeSeries s;
  for (int k = 0; k < 5; ++k) s.push(k, std::exp(-double(k)));
  CHECK_THROWS_AS(fit_decay_rate(s, 0.0, 4.0), ValidationError);
  CHECK_THROWS_AS(fit_decay_rate(s, 3.0, 1.0), ValidationError);
  TimeSeries floor;
  for (int k = 0; k < 40; ++k) floor.push(k, k < 5 ? std::exp(-10.0 * k) : 0.0);
  CHECK_THROWS_AS(fit_decay_rate(floor, 0.0, 40.0), ValidationError);
}

TEST_CASE("ledger flags are sticky and serialise as JSON lines") {
  MonitorLedger ledger;
  ledger.add({0.0, "energy", "L2_squared", 1.0, 2.0, false, false});
  ledger.add({0.1, "energy", "L2_squared", 3.0, 2.0, true, false});
  ledger.add({0.2, "energy", "L2_squared", 1.0, 2.0, false, false});
  ledger.add({0.2, "h1_h2", "dz_l2", 1.0, 2.0, false, false});
  ledger.constants.emplace_back("energy.c", 4.0);
  CHECK(ledger.entries[2].flag);
  CHECK_FALSE(ledger.entries[3].flag);
  CHECK(ledger.any_violation("energy"));
  CHECK_FALSE(ledger.any_violation("h1_h2"));
  CHECK(ledger.constant("energy.c") == 4.0);
  CHECK_FALSE(ledger.constant("energy.C"));
  std::istringstream lines(ledger.json_lines());
  std::string line;
  int n = 0;
  while (std::getline(lines, line)) {
    const auto j = nlohmann::json::parse(line);
    if (n == 1) {
      CHECK(j["monitor"] == "energy");
      CHECK(j["violated"] == true);
    }
    ++n;
  }
  CHECK(n == 5);
}

TEST_CASE("energy monitor on synthetic histories") {
  TwinExperimentConfig cfg;
  std::vector<ErrorSample> samples;
  for (int k = 0; k <= 100; ++k) {
    ErrorSample e;
    e.norms.t = 0.01 * k;
    e.norms.l2 = std::exp(-3.0 * e.norms.t);
    e.forcing_grad = std::exp(-e.norms.t);
    samples.push_back(e);
  }
  MonitorLedger ok;
  energy_monitor(cfg, 0.5, samples, 3.0, ok);
  CHECK(ok.constant("energy.c") == doctest::Approx(6.0));
  CHECK(*ok.constant("energy.C") < 1e-10);
  CHECK_FALSE(ok.any_violation());
  // A late bump the calibrated constants cannot cover.
  samples[90].norms.l2 *= 3.0;
  MonitorLedger bad;
  energy_monitor(cfg, 0.5, samples, 3.0, bad);
  CHECK(bad.any_violation("energy"));
}

TEST_CASE("h3 budget flags accelerating growth") {
  std::vector<double> t, lap, grad;
  for (int k = 0; k <= 40; ++k) {
    t.push_back(0.1 * k);
    lap.push_back(1.0);
    grad.push_back(std::exp(-t.back()));
  }
  MonitorLedger calm;
  h3_budget_monitor(t, lap, grad, calm);
  CHECK_FALSE(calm.any_violation());
  CHECK(calm.constant("h3_budget.total") == doctest::Approx(1.0 - std::exp(-4.0)).epsilon(1e-3));
  for (std::size_t k = 0; k < t.size(); ++k) grad[k] = std::exp(t[k]);
  MonitorLedger growing;
  h3_budget_monitor(t, lap, grad, growing);
  CHECK(growing.any_violation("h3_budget"));
}

TEST_CASE("twin experiment: difference mode, replay and monitors") {
  const Domain d(small());
  const DiscreteSpace space(d);
  TwinExperimentConfig cfg = short_twin();
  cfg.keep_assimilated_states = true;
  RecordedObservations rec;
  const TwinExperimentResult r = run_twin_experiment(space, cfg, &rec);
  CHECK_FALSE(r.failure);
  CHECK(r.error.size() == 41);
  CHECK(r.direct_norms.size() == r.error.size());
  CHECK(r.difference_mismatch < 1e-9);
  CHECK(r.error.back().norms.l2 < 0.05 * r.error.front().norms.l2);
  CHECK(rec.size() == 201);
  CHECK(r.regularity.size() == 2);
  CHECK(r.regularity[0].dt_norm.size() == r.error.size());
  CHECK(r.ledger.constant("energy.c"));
  const auto replay = run_nudged_from_observations(space, cfg, rec);
  REQUIRE(replay.size() == r.assimilated_states.size());
  for (std::size_t k = 0; k < replay.size(); ++k) CHECK((replay[k] - r.assimilated_states[k]).max_abs() == 0.0);
  const double m = maximal_regularity_functional(r, NormSpec::critical(2.0, 2.0), 1.0);
  CHECK(std::isfinite(m));
  CHECK(m > 0.0);
  CHECK_THROWS_AS(maximal_regularity_functional(r, NormSpec::critical(3.0, 3.0), 1.0), ValidationError);
  TwinExperimentResult shortened;
  shortened.regularity.resize(1);
  for (int k = 0; k < 2; ++k) {
    shortened.regularity[0].dt_norm.push(k, 1.0);
    shortened.regularity[0].h2_norm.push(k, 1.0);
  }
  CHECK_THROWS_AS(maximal_regularity_functional(shortened, NormSpec::critical(2.0, 2.0), 1.0), ValidationError);
}

TEST_CASE("state-only mode skips the difference run") {
  const Domain d(small());
  const DiscreteSpace space(d);
  TwinExperimentConfig cfg = short_twin();
  cfg.difference_mode = DifferenceMode::State;
  const TwinExperimentResult r = run_twin_experiment(space, cfg);
  CHECK(r.direct_norms.empty());
  CHECK(r.difference_mismatch == 0.0);
}

TEST_CASE("nudging guard") {
  const Domain d(small());
  const DiscreteSpace space(d);
  TwinExperimentConfig cfg = short_twin();
  cfg.mu = 1e5;
  CHECK_THROWS_AS(run_twin_experiment(space, cfg), GuardViolation);
  const ObservationOperator id = ObservationOperator::identity(d);
  CHECK(nudging_guard_value(space, id, 1e5, 1e-3) == 0.0);
}

TEST_CASE("config validation") {
  TwinExperimentConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.mu = -1.0;
  CHECK_THROWS_AS(cfg.validate(), ValidationError);
  cfg = {};
  cfg.monitors.insert("vorticity");
  CHECK_THROWS_AS(cfg.validate(), ValidationError);
  CHECK(difference_mode_from_string("direct") == DifferenceMode::Direct);
  CHECK_THROWS_AS(difference_mode_from_string("twin"), ValidationError);
}

TEST_CASE("sweep is independent of the thread count") {
  const Domain d(small());
  const DiscreteSpace space(d);
  TwinExperimentConfig cfg = short_twin();
  cfg.stepper.T = 0.2;
  const std::vector<ObservationSpec> obs{ObservationSpec{ObservationKind::CubeAverage, 4, 4, 2},
                                         ObservationSpec{ObservationKind::CubeAverage, 8, 8, 8}};
  const auto one = parameter_sweep(space, cfg, {0.0, 20.0}, obs, 1);
  const auto two = parameter_sweep(space, cfg, {0.0, 20.0}, obs, 2);
  CHECK(sweep_csv(one) == sweep_csv(two));
  CHECK(sweep_csv(one).rfind("mu,delta,rate_L2,rate_H1,r2,max_H2,flags\n", 0) == 0);
  REQUIRE(one.size() == 4);
  CHECK(one[1].rate_l2 > one[0].rate_l2);
  CHECK(one[3].flags.rfind("failed:", 0) == 0);
}
