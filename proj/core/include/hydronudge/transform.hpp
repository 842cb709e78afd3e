#pragma once

#include <array>
#include <span>

#include <Eigen/Dense>

#include "hydronudge/domain.hpp"
#include "hydronudge/field.hpp"

namespace hydronudge {

/// Grid values -> Fourier x Chebyshev coefficients (exact interpolation).
SpectralField to_spectral(const Domain& domain, const PhysicalField& f);

/// Coefficients -> grid values. Accepts nz or nz + 1 vertical coefficients.
PhysicalField to_physical(const Domain& domain, const SpectralField& c);

/// Largest imaginary part produced by the inverse transform of c; zero up to
/// round-off for coefficient sets of real fields.
double imaginary_residue(const Domain& domain, const SpectralField& c);

/// Values on the (nx, ny, padded_nz) product grid.
PhysicalField to_padded(const Domain& domain, const SpectralField& c);
/// Product-grid values -> nz coefficients by L2 projection onto degree < nz.
SpectralField from_padded(const Domain& domain, const PhysicalField& padded);

SpectralField derivative_x(const Domain& domain, const SpectralField& c);
SpectralField derivative_y(const Domain& domain, const SpectralField& c);
SpectralField derivative_z(const Domain& domain, const SpectralField& c);
/// Full 3D Laplacian of every component.
SpectralField laplacian(const Domain& domain, const SpectralField& c);

/// Zeroes the horizontal modes removed by the dealias rule.
void apply_dealias(const Domain& domain, SpectralField& c);
/// Energy fraction carried by masked modes (0 when dealiased).
double masked_energy(const Domain& domain, const SpectralField& c);

/// Index of the mode -k for array index i along an axis of length n.
inline int mirror_index(int i, int n) { return i == 0 ? 0 : n - i; }

/// Splits arbitrary coefficients c = re + i * im where re and im are the
/// coefficient sets of real fields. Used to apply real-linear grid operators
/// to complex coordinate vectors.
std::array<SpectralField, 2> hermitian_split(const SpectralField& c);

/// out = a * in for a real matrix acting on complex column vectors.
void apply_real(const Eigen::MatrixXd& a, std::span<const Complex> in, std::span<Complex> out);

}  // namespace hydronudge
