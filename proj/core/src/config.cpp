#include "hydronudge/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "hydronudge/error.hpp"

namespace hydronudge {

std::string to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::Simulate: return "simulate";
    case ExperimentKind::Assimilate: return "assimilate";
    case ExperimentKind::Sweep: return "sweep";
    case ExperimentKind::Spectrum: return "spectrum";
    case ExperimentKind::VerifyOps: return "verify-ops";
  }
  return "unknown";
}

ExperimentKind experiment_kind_from_string(const std::string& name) {
  for (auto k : {ExperimentKind::Simulate, ExperimentKind::Assimilate, ExperimentKind::Sweep, ExperimentKind::Spectrum,
                 ExperimentKind::VerifyOps})
    if (to_string(k) == name) return k;
  throw ValidationError("unknown experiment '" + name + "'");
}

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(trim(item));
  if (!s.empty() && s.back() == sep) out.push_back("");
  return out;
}

std::string format_double(double x) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

double parse_double(const std::string& s) {
  double x = 0.0;
  const auto r = std::from_chars(s.data(), s.data() + s.size(), x);
  if (r.ec != std::errc() || r.ptr != s.data() + s.size()) throw ValidationError("expected a number, got '" + s + "'");
  return x;
}

template <class Int>
Int parse_integer(const std::string& s) {
  Int x = 0;
  const auto r = std::from_chars(s.data(), s.data() + s.size(), x);
  if (r.ec != std::errc() || r.ptr != s.data() + s.size()) throw ValidationError("expected an integer, got '" + s + "'");
  return x;
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t k = 0; k < items.size(); ++k) out += (k ? ", " : "") + items[k];
  return out;
}

struct Key {
  std::string name;
  std::function<std::string(const RunConfig&)> get;
  std::function<void(RunConfig&, const std::string&)> set;
};

Key real(std::string name, double RunConfig::*member) {
  return {std::move(name), [=](const RunConfig& c) { return format_double(c.*member); },
          [=](RunConfig& c, const std::string& v) { c.*member = parse_double(v); }};
}

template <class Get>
Key real_ref(std::string name, Get ref) {
  return {std::move(name), [=](const RunConfig& c) { return format_double(ref(const_cast<RunConfig&>(c))); },
          [=](RunConfig& c, const std::string& v) { ref(c) = parse_double(v); }};
}

template <class Get>
Key int_ref(std::string name, Get ref) {
  return {std::move(name), [=](const RunConfig& c) { return std::to_string(ref(const_cast<RunConfig&>(c))); },
          [=](RunConfig& c, const std::string& v) { ref(c) = parse_integer<int>(v); }};
}

template <class Get>
Key text_ref(std::string name, Get ref) {
  return {std::move(name), [=](const RunConfig& c) { return ref(const_cast<RunConfig&>(c)); },
          [=](RunConfig& c, const std::string& v) { ref(c) = v; }};
}

const std::vector<Key>& registry() {
  static const std::vector<Key> keys = [] {
    std::vector<Key> k;
    k.push_back({"experiment", [](const RunConfig& c) { return to_string(c.experiment); },
                 [](RunConfig& c, const std::string& v) { c.experiment = experiment_kind_from_string(v); }});
    k.push_back({"seed", [](const RunConfig& c) { return std::to_string(c.seed); },
                 [](RunConfig& c, const std::string& v) { c.seed = parse_integer<std::uint64_t>(v); }});
    k.push_back(text_ref("output_dir", [](RunConfig& c) -> std::string& { return c.output_dir; }));

    k.push_back(real_ref("domain.l", [](RunConfig& c) -> double& { return c.domain.l; }));
    k.push_back(real_ref("domain.lx", [](RunConfig& c) -> double& { return c.domain.lx; }));
    k.push_back(real_ref("domain.ly", [](RunConfig& c) -> double& { return c.domain.ly; }));
    k.push_back(int_ref("domain.nx", [](RunConfig& c) -> int& { return c.domain.nx; }));
    k.push_back(int_ref("domain.ny", [](RunConfig& c) -> int& { return c.domain.ny; }));
    k.push_back(int_ref("domain.nz", [](RunConfig& c) -> int& { return c.domain.nz; }));
    k.push_back(real_ref("domain.dealias", [](RunConfig& c) -> double& { return c.domain.dealias; }));

    k.push_back({"stepper.scheme", [](const RunConfig& c) { return to_string(c.stepper.scheme); },
                 [](RunConfig& c, const std::string& v) { c.stepper.scheme = scheme_from_string(v); }});
    k.push_back(real_ref("stepper.dt", [](RunConfig& c) -> double& { return c.stepper.dt; }));
    k.push_back(real_ref("stepper.T", [](RunConfig& c) -> double& { return c.stepper.T; }));
    k.push_back(int_ref("stepper.output_every", [](RunConfig& c) -> int& { return c.stepper.output_every; }));
    k.push_back(real_ref("stepper.cfl_guard", [](RunConfig& c) -> double& { return c.stepper.cfl_guard; }));

    k.push_back(real("nudging.mu", &RunConfig::mu));
    k.push_back({"nudging.kind", [](const RunConfig& c) { return to_string(c.observation.kind); },
                 [](RunConfig& c, const std::string& v) { c.observation.kind = observation_kind_from_string(v); }});
    k.push_back(int_ref("nudging.cx", [](RunConfig& c) -> int& { return c.observation.cx; }));
    k.push_back(int_ref("nudging.cy", [](RunConfig& c) -> int& { return c.observation.cy; }));
    k.push_back(int_ref("nudging.cz", [](RunConfig& c) -> int& { return c.observation.cz; }));
    k.push_back(real_ref("nudging.delta", [](RunConfig& c) -> double& { return c.observation.delta; }));

    k.push_back(text_ref("forcing.name", [](RunConfig& c) -> std::string& { return c.forcing.name; }));
    k.push_back(real_ref("forcing.amplitude", [](RunConfig& c) -> double& { return c.forcing.amplitude; }));
    k.push_back(real_ref("forcing.gamma0", [](RunConfig& c) -> double& { return c.forcing.gamma0; }));
    k.push_back(text_ref("forcing.pattern", [](RunConfig& c) -> std::string& { return c.forcing.pattern; }));

    k.push_back(text_ref("initial.name", [](RunConfig& c) -> std::string& { return c.initial.name; }));
    k.push_back(real_ref("initial.amplitude", [](RunConfig& c) -> double& { return c.initial.amplitude; }));
    k.push_back(text_ref("assimilated.name", [](RunConfig& c) -> std::string& { return c.assimilated.name; }));
    k.push_back(real_ref("assimilated.amplitude", [](RunConfig& c) -> double& { return c.assimilated.amplitude; }));

    k.push_back({"assimilation.difference_mode", [](const RunConfig& c) { return to_string(c.difference_mode); },
                 [](RunConfig& c, const std::string& v) { c.difference_mode = difference_mode_from_string(v); }});
    k.push_back(real("assimilation.fit_start", &RunConfig::fit_start));
    k.push_back(real("assimilation.calibration_end", &RunConfig::calibration_end));
    k.push_back(real("assimilation.energy_tolerance", &RunConfig::energy_tolerance));
    k.push_back(real("assimilation.growth_ceiling", &RunConfig::growth_ceiling));
    k.push_back({"assimilation.monitors", [](const RunConfig& c) { return join(c.monitors); },
                 [](RunConfig& c, const std::string& v) {
                   c.monitors.clear();
                   for (auto& m : split(v, ','))
                     if (!m.empty()) c.monitors.push_back(m);
                 }});
    k.push_back(real("assimilation.lq_exponent", &RunConfig::lq_exponent));

    k.push_back({"sweep.mu",
                 [](const RunConfig& c) {
                   std::vector<std::string> items;
                   for (double m : c.sweep_mu) items.push_back(format_double(m));
                   return join(items);
                 },
                 [](RunConfig& c, const std::string& v) {
                   c.sweep_mu.clear();
                   for (auto& m : split(v, ',')) c.sweep_mu.push_back(parse_double(m));
                 }});
    k.push_back({"sweep.observations",
                 [](const RunConfig& c) {
                   std::vector<std::string> items;
                   for (const auto& o : c.sweep_observations) items.push_back(format_observation(o));
                   return join(items);
                 },
                 [](RunConfig& c, const std::string& v) {
                   c.sweep_observations.clear();
                   for (auto& o : split(v, ',')) c.sweep_observations.push_back(parse_observation(o));
                 }});
    k.push_back(int_ref("spectrum.dense_cap", [](RunConfig& c) -> int& { return c.dense_cap; }));
    return k;
  }();
  return keys;
}

const Key* find_key(const std::string& name) {
  for (const auto& k : registry())
    if (k.name == name) return &k;
  return nullptr;
}

// Checks that may be attributed to a single key.
void check_key(const RunConfig& c, const std::string& key) {
  auto fail = [&](const std::string& msg) { throw ValidationError(key + ": " + msg); };
  if (key == "domain.l" && !(c.domain.l > 0.0)) fail("must be > 0");
  if ((key == "domain.lx" || key == "domain.ly") && !(key == "domain.lx" ? c.domain.lx > 0.0 : c.domain.ly > 0.0))
    fail("must be > 0");
  if ((key == "domain.nx" || key == "domain.ny")) {
    const int n = key == "domain.nx" ? c.domain.nx : c.domain.ny;
    if (n < 4 || n % 2) fail("must be an even integer >= 4");
  }
  if (key == "domain.nz" && c.domain.nz < 4) fail("must be >= 4");
  if (key == "domain.dealias" && !(c.domain.dealias > 0.0 && c.domain.dealias <= 1.0)) fail("must lie in (0, 1]");
  if (key == "stepper.dt" && !(c.stepper.dt > 0.0)) fail("must be > 0");
  if (key == "stepper.T" && !(c.stepper.T > 0.0)) fail("must be > 0");
  if (key == "stepper.output_every" && c.stepper.output_every < 1) fail("must be >= 1");
  if (key == "stepper.cfl_guard" && !(c.stepper.cfl_guard > 0.0)) fail("must be > 0");
  if (key == "nudging.mu" && !(c.mu >= 0.0 && std::isfinite(c.mu))) fail("must be >= 0 (mu > 0 nudges, mu = 0 is the unnudged baseline)");
  if ((key == "nudging.cx" || key == "nudging.cy" || key == "nudging.cz") &&
      std::min({c.observation.cx, c.observation.cy, c.observation.cz}) < 1)
    fail("cell counts must be >= 1");
  if (key == "nudging.delta" && !(c.observation.delta > 0.0)) fail("must be > 0");
  if (key == "forcing.name" && c.forcing.name != "zero" && c.forcing.name != "decaying-modes")
    fail("expected zero or decaying-modes");
  if (key == "forcing.gamma0" && !(c.forcing.gamma0 >= 0.0)) fail("must be >= 0");
  if (key == "forcing.pattern" && !is_named_field(c.forcing.pattern)) fail("unknown field '" + c.forcing.pattern + "'");
  if (key == "initial.name" && !is_named_field(c.initial.name)) fail("unknown field '" + c.initial.name + "'");
  if (key == "assimilated.name" && !is_named_field(c.assimilated.name)) fail("unknown field '" + c.assimilated.name + "'");
  if (key == "assimilation.fit_start" && !(c.fit_start >= 0.0 && c.fit_start < 1.0)) fail("must lie in [0, 1)");
  if (key == "assimilation.calibration_end" && !(c.calibration_end > 0.0 && c.calibration_end <= 1.0))
    fail("must lie in (0, 1]");
  if (key == "assimilation.energy_tolerance" && !(c.energy_tolerance >= 1.0)) fail("must be >= 1");
  if (key == "assimilation.growth_ceiling" && !(c.growth_ceiling > 0.0)) fail("must be > 0");
  if (key == "assimilation.monitors")
    for (const auto& m : c.monitors)
      if (m != "energy" && m != "h1_h2" && m != "h3_budget") fail("unknown monitor '" + m + "'");
  if (key == "assimilation.lq_exponent" && !(c.lq_exponent >= 1.0)) fail("must be >= 1");
  if (key == "sweep.mu") {
    if (c.sweep_mu.empty()) fail("must list at least one value");
    for (double m : c.sweep_mu)
      if (!(m >= 0.0)) fail("values must be >= 0");
  }
  if (key == "sweep.observations" && c.sweep_observations.empty()) fail("must list at least one observation");
  if (key == "spectrum.dense_cap" && c.dense_cap < 1) fail("must be >= 1");
}

}  // namespace

std::string format_observation(const ObservationSpec& spec) {
  switch (spec.kind) {
    case ObservationKind::CubeAverage:
      return "cube:" + std::to_string(spec.cx) + "x" + std::to_string(spec.cy) + "x" + std::to_string(spec.cz);
    case ObservationKind::FourierLowpass: return "lowpass:" + format_double(spec.delta);
    case ObservationKind::Identity: return "identity";
  }
  return "unknown";
}

ObservationSpec parse_observation(const std::string& text) {
  ObservationSpec spec;
  const auto colon = text.find(':');
  const std::string kind = trim(text.substr(0, colon));
  const std::string arg = colon == std::string::npos ? "" : trim(text.substr(colon + 1));
  spec.kind = observation_kind_from_string(kind);
  if (spec.kind == ObservationKind::CubeAverage) {
    const auto parts = split(arg, 'x');
    if (parts.size() != 3) throw ValidationError("cube observation must read cube:CXxCYxCZ, got '" + text + "'");
    spec.cx = parse_integer<int>(parts[0]);
    spec.cy = parse_integer<int>(parts[1]);
    spec.cz = parse_integer<int>(parts[2]);
    if (std::min({spec.cx, spec.cy, spec.cz}) < 1) throw ValidationError("cell counts must be >= 1");
  } else if (spec.kind == ObservationKind::FourierLowpass) {
    spec.delta = parse_double(arg);
    if (!(spec.delta > 0.0)) throw ValidationError("lowpass delta must be > 0");
  } else if (!arg.empty()) {
    throw ValidationError("identity observation takes no argument");
  }
  return spec;
}

void RunConfig::validate() const {
  for (const auto& k : registry()) check_key(*this, k.name);
}

TwinExperimentConfig RunConfig::twin() const {
  TwinExperimentConfig t;
  t.truth = initial;
  t.truth.seed = seed;
  t.assimilated = assimilated;
  t.assimilated.seed = seed + 1;
  t.forcing = forcing;
  t.mu = mu;
  t.observation = observation;
  t.stepper = stepper;
  t.difference_mode = difference_mode;
  t.fit_start = fit_start;
  t.calibration_end = calibration_end;
  t.energy_tolerance = energy_tolerance;
  t.growth_ceiling = growth_ceiling;
  t.monitors = std::set<std::string>(monitors.begin(), monitors.end());
  t.lq_exponent = lq_exponent;
  return t;
}

bool RunConfig::operator==(const RunConfig& other) const {
  for (const auto& k : registry())
    if (k.get(*this) != k.get(other)) return false;
  return true;
}

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line, section;
  std::map<std::string, int> seen;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw ValidationError("line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail("malformed section header '" + line + "'");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) fail("empty section name");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail("expected key = value, got '" + line + "'");
    const std::string name = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (name.empty()) fail("missing key before '='");
    const std::string key = section.empty() ? name : section + "." + name;
    const Key* k = find_key(key);
    if (!k) fail(key + ": unknown key");
    if (auto it = seen.find(key); it != seen.end())
      fail(key + ": duplicate key (first set on line " + std::to_string(it->second) + ")");
    seen[key] = lineno;
    try {
      k->set(cfg, value);
      check_key(cfg, key);
    } catch (const ValidationError& e) {
      const std::string what = e.what();
      fail(what.rfind(key + ":", 0) == 0 ? what : key + ": " + what);
    }
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string echo_config(const RunConfig& cfg) {
  std::ostringstream out;
  std::string section;
  for (const auto& k : registry()) {
    const auto dot = k.name.find('.');
    const std::string s = dot == std::string::npos ? "" : k.name.substr(0, dot);
    const std::string name = dot == std::string::npos ? k.name : k.name.substr(dot + 1);
    if (s != section) {
      out << "\n[" << s << "]\n";
      section = s;
    }
    out << name << " = " << k.get(cfg) << '\n';
  }
  return out.str();
}

}  // namespace hydronudge
