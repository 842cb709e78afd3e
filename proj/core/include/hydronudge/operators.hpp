#pragma once

#include "hydronudge/domain.hpp"
#include "hydronudge/field.hpp"

namespace hydronudge {

/// (1/l) * integral over the depth, returned as a vertically constant field
/// with nz coefficients (only the T_0 coefficient is nonzero).
SpectralField vertical_average(const Domain& domain, const SpectralField& v);

/// w(x', z) = - int_{-l}^{z} div_H v dz'. The result is a scalar field with
/// nz + 1 Chebyshev coefficients, so w(-l) = 0 holds exactly.
SpectralField vertical_velocity(const Domain& domain, const SpectralField& v);

/// div_H of a 2-component field.
SpectralField horizontal_divergence(const Domain& domain, const SpectralField& v);

/// Hydrostatic Helmholtz projection: removes the horizontal gradient part of
/// the vertical average, mode by mode.
SpectralField hydrostatic_projection(const Domain& domain, const SpectralField& f);

/// max over modes of |k . mean(f)_k|, the residual of div_H mean(f) = 0.
double mean_divergence_residual(const Domain& domain, const SpectralField& f);

/// A v = P(-Laplacian v).
SpectralField apply_stokes(const Domain& domain, const SpectralField& v);

/// Enforces v(-l) = 0 and dz v(0) = 0 by rewriting the two highest Chebyshev
/// coefficients of every column.
SpectralField project_bc(const Domain& domain, const SpectralField& v);

/// Largest violation of the two boundary conditions over all columns.
double bc_residual(const Domain& domain, const SpectralField& v);

}  // namespace hydronudge
