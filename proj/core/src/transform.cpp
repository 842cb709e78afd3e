#include "hydronudge/transform.hpp"

#include <vector>

#include "hydronudge/error.hpp"

namespace hydronudge {

void apply_real(const Eigen::MatrixXd& a, std::span<const Complex> in, std::span<Complex> out) {
  const Eigen::Index rows = a.rows(), cols = a.cols();
  for (Eigen::Index r = 0; r < rows; ++r) out[r] = 0.0;
  for (Eigen::Index c = 0; c < cols; ++c) {
    const Complex v = in[c];
    if (v == Complex{}) continue;
    const double* col = a.data() + c * rows;
    for (Eigen::Index r = 0; r < rows; ++r) out[r] += col[r] * v;
  }
}

namespace {

void require_horizontal(const Domain& d, const FieldShape& s) {
  if (s.nx != d.nx() || s.ny != d.ny()) throw ShapeError("horizontal extent does not match the domain");
}

// Coefficients -> complex nodal values on the points described by `eval`.
SpectralField synthesize(const Domain& domain, const SpectralField& c, const Eigen::MatrixXd& eval) {
  const int levels = int(eval.rows());
  SpectralField out(c.components(), c.nx(), c.ny(), levels);
  for (int comp = 0; comp < c.components(); ++comp) {
    for (int i = 0; i < c.nx(); ++i)
      for (int j = 0; j < c.ny(); ++j) apply_real(eval, c.column(comp, i, j), out.column(comp, i, j));
    domain.fft_backward(out.component(comp).data(), levels);
  }
  return out;
}

SpectralField real_to_complex(const PhysicalField& f) {
  SpectralField out(f.shape());
  for (std::size_t n = 0; n < f.size(); ++n) out.data()[n] = f.data()[n];
  return out;
}

}  // namespace

SpectralField to_spectral(const Domain& domain, const PhysicalField& f) {
  require_horizontal(domain, f.shape());
  if (f.nz() != domain.nz()) throw ShapeError("vertical extent does not match the domain");
  SpectralField nodal = real_to_complex(f);
  SpectralField out(f.shape());
  const double scale = 1.0 / (double(domain.nx()) * domain.ny());
  for (int comp = 0; comp < f.components(); ++comp) {
    domain.fft_forward(nodal.component(comp).data(), domain.nz());
    for (int i = 0; i < f.nx(); ++i)
      for (int j = 0; j < f.ny(); ++j) {
        auto col = out.column(comp, i, j);
        apply_real(domain.cheb().analysis(), nodal.column(comp, i, j), col);
        for (auto& v : col) v *= scale;
      }
  }
  return out;
}

PhysicalField to_physical(const Domain& domain, const SpectralField& c) {
  require_horizontal(domain, c.shape());
  Eigen::MatrixXd eval;
  if (c.nz() == domain.nz())
    eval = domain.cheb().eval();
  else if (c.nz() == domain.nz() + 1)
    eval = domain.cheb().evaluation_at(domain.cheb().nodes(), c.nz());
  else
    throw ShapeError("unsupported vertical coefficient count");
  const SpectralField nodal = synthesize(domain, c, eval);
  PhysicalField out(nodal.shape());
  for (std::size_t n = 0; n < out.size(); ++n) out.data()[n] = nodal.data()[n].real();
  return out;
}

double imaginary_residue(const Domain& domain, const SpectralField& c) {
  require_horizontal(domain, c.shape());
  const Eigen::MatrixXd eval = domain.cheb().evaluation_at(domain.cheb().nodes(), c.nz());
  const SpectralField nodal = synthesize(domain, c, eval);
  double m = 0.0;
  for (const auto& v : nodal.values()) m = std::max(m, std::abs(v.imag()));
  return m;
}

PhysicalField to_padded(const Domain& domain, const SpectralField& c) {
  require_horizontal(domain, c.shape());
  const SpectralField nodal = synthesize(domain, c, domain.padded_eval(c.nz()));
  PhysicalField out(nodal.shape());
  for (std::size_t n = 0; n < out.size(); ++n) out.data()[n] = nodal.data()[n].real();
  return out;
}

SpectralField from_padded(const Domain& domain, const PhysicalField& padded) {
  require_horizontal(domain, padded.shape());
  if (padded.nz() != domain.padded_nz()) throw ShapeError("expected values on the padded grid");
  SpectralField nodal = real_to_complex(padded);
  SpectralField out(padded.components(), padded.nx(), padded.ny(), domain.nz());
  const double scale = 1.0 / (double(domain.nx()) * domain.ny());
  for (int comp = 0; comp < padded.components(); ++comp) {
    domain.fft_forward(nodal.component(comp).data(), domain.padded_nz());
    for (int i = 0; i < padded.nx(); ++i)
      for (int j = 0; j < padded.ny(); ++j) {
        auto col = out.column(comp, i, j);
        apply_real(domain.padded_projection(), nodal.column(comp, i, j), col);
        for (auto& v : col) v *= scale;
      }
  }
  return out;
}

SpectralField derivative_x(const Domain& domain, const SpectralField& c) {
  require_horizontal(domain, c.shape());
  SpectralField out(c.shape());
  for (int comp = 0; comp < c.components(); ++comp)
    for (int i = 0; i < c.nx(); ++i) {
      const Complex ik(0.0, domain.kx(i));
      for (int j = 0; j < c.ny(); ++j)
        for (int m = 0; m < c.nz(); ++m) out(comp, i, j, m) = ik * c(comp, i, j, m);
    }
  return out;
}

SpectralField derivative_y(const Domain& domain, const SpectralField& c) {
  require_horizontal(domain, c.shape());
  SpectralField out(c.shape());
  for (int comp = 0; comp < c.components(); ++comp)
    for (int i = 0; i < c.nx(); ++i)
      for (int j = 0; j < c.ny(); ++j) {
        const Complex ik(0.0, domain.ky(j));
        for (int m = 0; m < c.nz(); ++m) out(comp, i, j, m) = ik * c(comp, i, j, m);
      }
  return out;
}

SpectralField derivative_z(const Domain& domain, const SpectralField& c) {
  require_horizontal(domain, c.shape());
  if (c.nz() != domain.nz() && c.nz() != domain.nz() + 1)
    throw ShapeError("unsupported vertical coefficient count");
  const Eigen::MatrixXd d = c.nz() == domain.nz() ? domain.cheb().derivative()
                                                  : ChebyshevBasis::derivative_matrix(c.nz(), domain.depth());
  SpectralField out(c.shape());
  for (int comp = 0; comp < c.components(); ++comp)
    for (int i = 0; i < c.nx(); ++i)
      for (int j = 0; j < c.ny(); ++j) apply_real(d, c.column(comp, i, j), out.column(comp, i, j));
  return out;
}

SpectralField laplacian(const Domain& domain, const SpectralField& c) {
  require_horizontal(domain, c.shape());
  if (c.nz() != domain.nz()) throw ShapeError("laplacian expects nz coefficients");
  const Eigen::MatrixXd d2 = domain.cheb().derivative() * domain.cheb().derivative();
  SpectralField out(c.shape());
  for (int comp = 0; comp < c.components(); ++comp)
    for (int i = 0; i < c.nx(); ++i)
      for (int j = 0; j < c.ny(); ++j) {
        auto col = out.column(comp, i, j);
        apply_real(d2, c.column(comp, i, j), col);
        const double k2 = domain.k2(i, j);
        const auto in = c.column(comp, i, j);
        for (int m = 0; m < c.nz(); ++m) col[m] -= k2 * in[m];
      }
  return out;
}

void apply_dealias(const Domain& domain, SpectralField& c) {
  require_horizontal(domain, c.shape());
  for (int comp = 0; comp < c.components(); ++comp)
    for (int i = 0; i < c.nx(); ++i)
      for (int j = 0; j < c.ny(); ++j)
        if (!domain.kept(i, j))
          for (auto& v : c.column(comp, i, j)) v = 0.0;
}

double masked_energy(const Domain& domain, const SpectralField& c) {
  double masked = 0.0, total = 0.0;
  for (int comp = 0; comp < c.components(); ++comp)
    for (int i = 0; i < c.nx(); ++i)
      for (int j = 0; j < c.ny(); ++j)
        for (const auto& v : c.column(comp, i, j)) {
          total += std::norm(v);
          if (!domain.kept(i, j)) masked += std::norm(v);
        }
  return total > 0.0 ? masked / total : 0.0;
}

std::array<SpectralField, 2> hermitian_split(const SpectralField& c) {
  SpectralField re(c.shape()), im(c.shape());
  for (int comp = 0; comp < c.components(); ++comp)
    for (int i = 0; i < c.nx(); ++i)
      for (int j = 0; j < c.ny(); ++j) {
        const int mi = mirror_index(i, c.nx()), mj = mirror_index(j, c.ny());
        for (int m = 0; m < c.nz(); ++m) {
          const Complex a = c(comp, i, j, m);
          const Complex b = std::conj(c(comp, mi, mj, m));
          re(comp, i, j, m) = 0.5 * (a + b);
          im(comp, i, j, m) = Complex(0.0, -0.5) * (a - b);
        }
      }
  return {std::move(re), std::move(im)};
}

}  // namespace hydronudge
