#include "hydronudge/dynamics.hpp"

#include <cmath>

#include "hydronudge/error.hpp"
#include "hydronudge/norms.hpp"
#include "hydronudge/operators.hpp"
#include "hydronudge/transform.hpp"

namespace hydronudge {

SpectralField advect(const Domain& domain, const SpectralField& a, const SpectralField& b) {
  if (a.components() != 2) throw ShapeError("advecting velocity must have 2 components");
  const PhysicalField ua = to_padded(domain, a);
  const PhysicalField wa = to_padded(domain, vertical_velocity(domain, a));
  const PhysicalField bx = to_padded(domain, derivative_x(domain, b));
  const PhysicalField by = to_padded(domain, derivative_y(domain, b));
  const PhysicalField bz = to_padded(domain, derivative_z(domain, b));
  PhysicalField prod(bx.shape());
  const std::size_t n = std::size_t(prod.nx()) * prod.ny() * prod.nz();
  const auto u1 = ua.component(0), u2 = ua.component(1), w = wa.component(0);
  for (int c = 0; c < b.components(); ++c) {
    const auto dx = bx.component(c), dy = by.component(c), dz = bz.component(c);
    auto out = prod.component(c);
    for (std::size_t p = 0; p < n; ++p) out[p] = u1[p] * dx[p] + u2[p] * dy[p] + w[p] * dz[p];
  }
  SpectralField result = from_padded(domain, prod);
  apply_dealias(domain, result);
  return result;
}

SpectralField convection(const Domain& domain, const SpectralField& v) { return advect(domain, v, v); }

namespace {

double profile(int m, double z, double l) { return std::cos((m + 0.5) * std::numbers::pi * z / l); }

SpectralField sampled(const Domain& d, const std::function<std::array<double, 2>(double, double, double)>& fn) {
  PhysicalField f(2, d.nx(), d.ny(), d.nz());
  for (int i = 0; i < d.nx(); ++i)
    for (int j = 0; j < d.ny(); ++j)
      for (int k = 0; k < d.nz(); ++k) {
        const auto v = fn(d.x(i), d.y(j), d.z(k));
        f(0, i, j, k) = v[0];
        f(1, i, j, k) = v[1];
      }
  return to_spectral(d, f);
}

void scale_in_place(SpectralField& f, double a) { f *= a; }

}  // namespace

bool is_named_field(const std::string& name) {
  return name == "zero" || name == "taylor-green-layer" || name == "single-mode" || name == "random";
}

SpectralField named_field(const DiscreteSpace& space, const std::string& name, double amplitude,
                          std::uint64_t seed) {
  const Domain& d = space.domain();
  const double l = d.depth();
  const double ax = 2.0 * std::numbers::pi / d.spec().lx, ay = 2.0 * std::numbers::pi / d.spec().ly;
  SpectralField raw;
  if (name == "zero") {
    return SpectralField(2, d.nx(), d.ny(), d.nz());
  } else if (name == "taylor-green-layer") {
    raw = sampled(d, [&](double x, double y, double z) {
      const double g = profile(0, z, l);
      return std::array<double, 2>{std::sin(ax * x) * std::cos(ay * y) * g,
                                   -(ay / ax) * std::cos(ax * x) * std::sin(ay * y) * g};
    });
  } else if (name == "single-mode") {
    raw = sampled(d, [&](double, double y, double z) {
      return std::array<double, 2>{std::cos(ay * y) * profile(0, z, l), 0.0};
    });
  } else if (name == "random") {
    raw = space.project(smooth_random_field(d, 2, seed));
    const double n = l2_norm(d, raw);
    if (n > 0.0) scale_in_place(raw, 1.0 / n);
  } else {
    throw ValidationError("unknown field '" + name + "'");
  }
  SpectralField out = space.project(raw);
  scale_in_place(out, amplitude);
  return out;
}

void ForcingSpec::validate() const {
  if (name != "zero" && name != "decaying-modes")
    throw ValidationError("unknown forcing '" + name + "' (expected zero or decaying-modes)");
  if (!(gamma0 >= 0.0)) throw ValidationError("forcing gamma0 must be >= 0");
  if (!std::isfinite(amplitude)) throw ValidationError("forcing amplitude must be finite");
  if (!is_named_field(pattern)) throw ValidationError("unknown forcing pattern '" + pattern + "'");
}

Forcing Forcing::zero(const Domain& domain) {
  const FieldShape shape{2, domain.nx(), domain.ny(), domain.nz()};
  return Forcing("zero", 0.0, [shape](double) { return SpectralField(shape); }, true);
}

Forcing Forcing::from_spec(const DiscreteSpace& space, const ForcingSpec& spec) {
  spec.validate();
  if (spec.name == "zero" || spec.amplitude == 0.0) {
    Forcing f = zero(space.domain());
    f.gamma0_ = spec.gamma0;
    return f;
  }
  const SpectralField base = named_field(space, spec.pattern, spec.amplitude, 17);
  const double g = spec.gamma0;
  return Forcing(spec.name, g, [base, g](double t) { return std::exp(-g * t) * base; });
}

ManufacturedSolution::ManufacturedSolution(const DiscreteSpace& space, double amplitude)
    : space_(&space),
      a_(named_field(space, "taylor-green-layer", amplitude)),
      b_(named_field(space, "random", amplitude, 3)) {}

SpectralField ManufacturedSolution::state(double t) const { return std::cos(t) * a_ + std::sin(t) * b_; }

SpectralField ManufacturedSolution::time_derivative(double t) const {
  return -std::sin(t) * a_ + std::cos(t) * b_;
}

Forcing ManufacturedSolution::forcing() const {
  const ManufacturedSolution self = *this;
  return Forcing("manufactured", 0.0, [self](double t) {
    const Domain& d = self.space_->domain();
    const SpectralField v = self.state(t);
    SpectralField f = self.time_derivative(t);
    f += apply_stokes(d, v);
    f += hydrostatic_projection(d, convection(d, v));
    return f;
  });
}

TruthCache::TruthCache(const ObservationOperator& obs, const Forcing& forcing) : obs_(&obs), forcing_(&forcing) {}

void TruthCache::record(double t, const SpectralField& v) { samples_[t] = Sample{v, obs_->apply(v)}; }

void TruthCache::discard_before(double t) { samples_.erase(samples_.begin(), samples_.lower_bound(t)); }

const TruthCache::Sample& TruthCache::lookup(double t) const {
  auto it = samples_.find(t);
  if (it != samples_.end()) return it->second;
  const double tol = 1e-12 * std::max(1.0, std::abs(t));
  it = samples_.lower_bound(t - tol);
  if (it != samples_.end() && std::abs(it->first - t) <= tol) return it->second;
  throw ValidationError("missing truth snapshot at t = " + std::to_string(t));
}

SpectralField TruthCache::state(double t) const { return lookup(t).state; }
SpectralField TruthCache::observed_state(double t) const { return lookup(t).observed; }
SpectralField TruthCache::observed_forcing(double t) const { return obs_->apply((*forcing_)(t)); }

void RecordedObservations::record(double t, SpectralField observed_state, SpectralField observed_forcing) {
  if (!times_.empty() && !(t > times_.back())) throw ValidationError("observation times must increase");
  times_.push_back(t);
  states_.push_back(std::move(observed_state));
  forcings_.push_back(std::move(observed_forcing));
}

SpectralField RecordedObservations::interpolate(const std::vector<SpectralField>& values, double t) const {
  if (times_.empty()) throw ValidationError("no recorded observations");
  auto it = std::lower_bound(times_.begin(), times_.end(), t);
  if (it != times_.end() && *it == t) return values[std::size_t(it - times_.begin())];
  if (it == times_.begin() || it == times_.end())
    throw ValidationError("time " + std::to_string(t) + " outside the recorded observation window");
  const std::size_t hi = std::size_t(it - times_.begin()), lo = hi - 1;
  const double t0 = times_[lo], t1 = times_[hi], h = t1 - t0;
  auto slope = [&](std::size_t k) {
    const std::size_t a = k == 0 ? 0 : k - 1;
    const std::size_t b = std::min(k + 1, times_.size() - 1);
    return (1.0 / (times_[b] - times_[a])) * (values[b] - values[a]);
  };
  const double s = (t - t0) / h;
  const double h00 = (1 + 2 * s) * (1 - s) * (1 - s), h10 = s * (1 - s) * (1 - s);
  const double h01 = s * s * (3 - 2 * s), h11 = s * s * (s - 1);
  SpectralField out = h00 * values[lo];
  out.axpy(h01, values[hi]);
  out.axpy(h10 * h, slope(lo));
  out.axpy(h11 * h, slope(hi));
  return out;
}

SpectralField RecordedObservations::observed_state(double t) const { return interpolate(states_, t); }
SpectralField RecordedObservations::observed_forcing(double t) const { return interpolate(forcings_, t); }

std::string to_string(SystemKind kind) {
  switch (kind) {
    case SystemKind::Primitive: return "primitive";
    case SystemKind::Nudged: return "nudged";
    case SystemKind::Difference: return "difference";
  }
  return "unknown";
}

SpectralField System::explicit_part(const SpectralField& v, double t) const {
  SpectralField e = remainder(v, t);
  if (shift() != 0.0) e.axpy(shift(), v);
  return e;
}

SpectralField System::rhs(const SpectralField& v, double t) const {
  SpectralField r = remainder(v, t);
  r -= apply_stokes(*domain_, v);
  return r;
}

namespace {

// P of a field that may carry masked modes, dealiased afterwards.
SpectralField projected(const Domain& d, const SpectralField& f) {
  SpectralField p = hydrostatic_projection(d, f);
  apply_dealias(d, p);
  return p;
}

}  // namespace

SpectralField PrimitiveSystem::remainder(const SpectralField& v, double t) const {
  const Domain& d = *domain_;
  SpectralField r = convection(d, v);
  r *= -1.0;
  if (!forcing_->identically_zero()) r += (*forcing_)(t);
  return projected(d, r);
}

SpectralField NudgedSystem::remainder(const SpectralField& v, double t) const {
  const Domain& d = *domain_;
  SpectralField r = convection(d, v);
  r *= -1.0;
  r += truth_->observed_forcing(t);
  if (mu_ != 0.0) {
    SpectralField gap = truth_->observed_state(t);
    gap -= obs_->apply(v);
    r.axpy(mu_, gap);
  }
  return projected(d, r);
}

SpectralField DifferenceSystem::remainder(const SpectralField& V, double t) const {
  const Domain& d = *domain_;
  const SpectralField v = truth_->state(t);
  SpectralField nl = advect(d, v, V);
  nl += advect(d, V, v);
  nl -= advect(d, V, V);
  SpectralField r = -1.0 * nl;
  if (!forcing_->identically_zero()) {
    const SpectralField f = (*forcing_)(t);
    r += f;
    r -= obs_->apply(f);
  }
  if (mu_ != 0.0) r.axpy(-mu_, obs_->apply(V));
  return projected(d, r);
}

SpectralField primitive_rhs(const Domain& domain, const SpectralField& v, const Forcing& f, double t) {
  return PrimitiveSystem(domain, f).rhs(v, t);
}

SpectralField nudged_rhs(const Domain& domain, const SpectralField& vt, const ObservationSource& truth,
                         const ObservationOperator& obs, double mu, double t) {
  return NudgedSystem(domain, truth, obs, mu).rhs(vt, t);
}

SpectralField difference_rhs(const Domain& domain, const SpectralField& dv, const TruthSource& truth,
                             const ObservationOperator& obs, double mu, const Forcing& f, double t) {
  return DifferenceSystem(domain, truth, obs, mu, f).rhs(dv, t);
}

}  // namespace hydronudge
