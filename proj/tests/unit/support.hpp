#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "hydronudge/domain.hpp"
#include "hydronudge/field.hpp"

namespace support {

using hydronudge::Domain;
using hydronudge::PhysicalField;

inline PhysicalField sample(const Domain& d, int comps, const std::function<double(int, double, double, double)>& f) {
  PhysicalField p(comps, d.nx(), d.ny(), d.nz());
  for (int c = 0; c < comps; ++c)
    for (int i = 0; i < d.nx(); ++i)
      for (int j = 0; j < d.ny(); ++j)
        for (int k = 0; k < d.nz(); ++k) p(c, i, j, k) = f(c, d.x(i), d.y(j), d.z(k));
  return p;
}

/// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration on P_n.
inline void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5)), dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    x[i] = z;
    w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
}

/// Chebyshev polynomial T_m(xi) by the cosine formula.
inline double chebyshev(int m, double xi) {
  if (xi >= 1.0) return 1.0;
  if (xi <= -1.0) return (m % 2) ? -1.0 : 1.0;
  return std::cos(m * std::acos(xi));
}

}  // namespace support
