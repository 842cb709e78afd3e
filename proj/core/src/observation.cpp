#include "hydronudge/observation.hpp"

#include <cmath>
#include <random>

#include "hydronudge/error.hpp"
#include "hydronudge/norms.hpp"
#include "hydronudge/transform.hpp"

namespace hydronudge {

std::string to_string(ObservationKind kind) {
  switch (kind) {
    case ObservationKind::CubeAverage: return "cube";
    case ObservationKind::FourierLowpass: return "lowpass";
    case ObservationKind::Identity: return "identity";
  }
  return "unknown";
}

ObservationKind observation_kind_from_string(const std::string& name) {
  if (name == "cube") return ObservationKind::CubeAverage;
  if (name == "lowpass") return ObservationKind::FourierLowpass;
  if (name == "identity") return ObservationKind::Identity;
  throw ValidationError("unknown observation kind '" + name + "' (expected cube, lowpass or identity)");
}

ObservationOperator::ObservationOperator(const Domain& domain, const ObservationSpec& spec)
    : domain_(&domain), spec_(spec) {
  const auto& ds = domain.spec();
  const double diameter = std::sqrt(ds.lx * ds.lx + ds.ly * ds.ly + ds.l * ds.l);
  switch (spec.kind) {
    case ObservationKind::CubeAverage: {
      if (spec.cx < 1 || spec.cy < 1 || spec.cz < 1) throw ValidationError("cell counts must be >= 1");
      if (ds.nx % spec.cx || ds.ny % spec.cy)
        throw ValidationError("horizontal cell counts must divide the grid size");
      const double hx = ds.lx / spec.cx, hy = ds.ly / spec.cy, hz = ds.l / spec.cz;
      delta_ = std::sqrt(hx * hx + hy * hy + hz * hz);
      cell_z_.resize(ds.nz);
      cell_wz_.assign(spec.cz, 0.0);
      const auto& w = domain.cheb().weights();
      for (int k = 0; k < ds.nz; ++k) {
        const int c = std::min(spec.cz - 1, int(std::floor((domain.z(k) + ds.l) / hz)));
        cell_z_[k] = c;
        cell_wz_[c] += w(k);
      }
      for (double s : cell_wz_)
        if (!(s > 0.0)) throw ValidationError("a vertical observation cell contains no grid level");
      break;
    }
    case ObservationKind::FourierLowpass:
      if (!(spec.delta > 0.0)) throw ValidationError("lowpass delta must be positive");
      delta_ = spec.delta;
      break;
    case ObservationKind::Identity:
      delta_ = 0.0;
      break;
  }
  if (delta_ > diameter * (1.0 + 1e-12))
    throw ValidationError("observation resolution exceeds the domain extent");
}

ObservationOperator ObservationOperator::cube(const Domain& domain, int cx, int cy, int cz) {
  ObservationSpec s;
  s.kind = ObservationKind::CubeAverage;
  s.cx = cx;
  s.cy = cy;
  s.cz = cz;
  return ObservationOperator(domain, s);
}

ObservationOperator ObservationOperator::lowpass(const Domain& domain, double delta) {
  ObservationSpec s;
  s.kind = ObservationKind::FourierLowpass;
  s.delta = delta;
  return ObservationOperator(domain, s);
}

ObservationOperator ObservationOperator::identity(const Domain& domain) {
  ObservationSpec s;
  s.kind = ObservationKind::Identity;
  return ObservationOperator(domain, s);
}

PhysicalField ObservationOperator::apply(const PhysicalField& f) const {
  const Domain& d = *domain_;
  if (f.nx() != d.nx() || f.ny() != d.ny() || f.nz() != d.nz()) throw ShapeError("observation input shape");
  switch (spec_.kind) {
    case ObservationKind::Identity: return f;
    case ObservationKind::FourierLowpass: return to_physical(d, apply(to_spectral(d, f)));
    case ObservationKind::CubeAverage: break;
  }
  const int sx = d.nx() / spec_.cx, sy = d.ny() / spec_.cy;
  const auto& w = d.cheb().weights();
  PhysicalField out(f.shape());
  std::vector<double> sums(std::size_t(spec_.cx) * spec_.cy * spec_.cz);
  for (int c = 0; c < f.components(); ++c) {
    std::fill(sums.begin(), sums.end(), 0.0);
    auto cell = [&](int i, int j, int k) {
      return (std::size_t(i / sx) * spec_.cy + j / sy) * spec_.cz + cell_z_[k];
    };
    for (int i = 0; i < f.nx(); ++i)
      for (int j = 0; j < f.ny(); ++j)
        for (int k = 0; k < f.nz(); ++k) sums[cell(i, j, k)] += w(k) * f(c, i, j, k);
    for (int i = 0; i < f.nx(); ++i)
      for (int j = 0; j < f.ny(); ++j)
        for (int k = 0; k < f.nz(); ++k)
          out(c, i, j, k) = sums[cell(i, j, k)] / (double(sx) * sy * cell_wz_[cell_z_[k]]);
  }
  return out;
}

SpectralField ObservationOperator::apply(const SpectralField& f) const {
  const Domain& d = *domain_;
  switch (spec_.kind) {
    case ObservationKind::Identity: return f;
    case ObservationKind::CubeAverage: return to_spectral(d, apply(to_physical(d, f)));
    case ObservationKind::FourierLowpass: break;
  }
  SpectralField out = f;
  const double cutoff = 1.0 / delta_ * (1.0 + 1e-12);
  for (int i = 0; i < f.nx(); ++i)
    for (int j = 0; j < f.ny(); ++j) {
      const double kx = 2.0 * std::numbers::pi * Domain::signed_index(i, d.nx()) / d.spec().lx;
      const double ky = 2.0 * std::numbers::pi * Domain::signed_index(j, d.ny()) / d.spec().ly;
      if (std::sqrt(kx * kx + ky * ky) <= cutoff) continue;
      for (int c = 0; c < f.components(); ++c)
        for (auto& v : out.column(c, i, j)) v = 0.0;
    }
  return out;
}

SpectralField ObservationOperator::apply_complex(const SpectralField& f) const {
  if (spec_.kind != ObservationKind::CubeAverage) return apply(f);
  auto parts = hermitian_split(f);
  SpectralField re = apply(parts[0]);
  const SpectralField im = apply(parts[1]);
  for (std::size_t n = 0; n < re.size(); ++n) re.data()[n] += Complex(0.0, 1.0) * im.data()[n];
  return re;
}

void NudgingParams::validate() const {
  if (!(mu >= 0.0) || !std::isfinite(mu)) throw ValidationError("mu must be >= 0");
  if (!(delta >= 0.0) || !std::isfinite(delta)) throw ValidationError("delta must be >= 0");
}

ObservationConstants estimate_observation_constants(const ObservationOperator& op,
                                                    const std::vector<SpectralField>& samples, double q) {
  if (samples.size() < 10) throw ValidationError("at least 10 samples are required");
  const Domain& d = op.domain();
  ObservationConstants out;
  for (const auto& f : samples) {
    const PhysicalField phys = to_physical(d, f);
    const PhysicalField jf = op.apply(phys);
    const double nf = lebesgue_norm(d, phys, q);
    if (nf > 0.0) out.c_bound = std::max(out.c_bound, lebesgue_norm(d, jf, q) / nf);
    const double grad = gradient_norm(d, f, q);
    if (!(grad > 0.0) || op.delta() == 0.0) continue;
    const double err = lebesgue_norm(d, jf - phys, q);
    out.c_approx = std::max(out.c_approx, err / (op.delta() * grad));
    ++out.used;
  }
  return out;
}

SpectralField smooth_random_field(const Domain& domain, int components, std::uint64_t seed, int kmax,
                                  int mmax) {
  std::mt19937_64 rng(seed);
  auto uniform = [&rng] { return double(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0; };
  SpectralField c(components, domain.nx(), domain.ny(), domain.nz());
  const int mtop = std::min(mmax, domain.nz());
  for (int comp = 0; comp < components; ++comp)
    for (int a = 0; a <= kmax; ++a)
      for (int b = -kmax; b <= kmax; ++b) {
        if (a == 0 && b < 0) continue;
        for (int m = 0; m < mmax; ++m) {
          const double amp = 1.0 / ((1.0 + a * a + b * b) * (1.0 + m) * (1.0 + m));
          const double alpha = amp * uniform(), beta = amp * uniform();
          const int i = (a + domain.nx()) % domain.nx(), j = (b + domain.ny()) % domain.ny();
          const int mi = mirror_index(i, domain.nx()), mj = mirror_index(j, domain.ny());
          if (m >= mtop || !domain.kept(i, j) || 2 * a >= domain.nx() || 2 * std::abs(b) >= domain.ny()) continue;
          if (a == 0 && b == 0) {
            c(comp, i, j, m) += alpha;
            continue;
          }
          const Complex s(0.0, -0.5 * beta);
          c(comp, i, j, m) += 0.5 * alpha + s;
          c(comp, mi, mj, m) += 0.5 * alpha - s;
        }
      }
  return c;
}

}  // namespace hydronudge
