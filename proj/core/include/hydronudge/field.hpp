#pragma once

#include <algorithm>
#include <complex>
#include <span>
#include <vector>

namespace hydronudge {

using Complex = std::complex<double>;

/// Extents of a field tensor (components, nx, ny, nz) with nz fastest.
struct FieldShape {
  int components = 0;
  int nx = 0;
  int ny = 0;
  int nz = 0;

  std::size_t size() const { return std::size_t(components) * nx * ny * nz; }
  bool operator==(const FieldShape&) const = default;
};

/// Dense row-major tensor with the (component, i, j, k) layout shared by the
/// physical and spectral representations.
template <typename T>
class FieldTensor {
 public:
  FieldTensor() = default;
  FieldTensor(int components, int nx, int ny, int nz)
      : shape_{components, nx, ny, nz}, data_(shape_.size(), T{}) {}
  explicit FieldTensor(FieldShape shape) : shape_(shape), data_(shape.size(), T{}) {}

  const FieldShape& shape() const { return shape_; }
  int components() const { return shape_.components; }
  int nx() const { return shape_.nx; }
  int ny() const { return shape_.ny; }
  int nz() const { return shape_.nz; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  std::size_t index(int c, int i, int j, int k) const {
    return ((std::size_t(c) * shape_.nx + i) * shape_.ny + j) * shape_.nz + k;
  }
  T& operator()(int c, int i, int j, int k) { return data_[index(c, i, j, k)]; }
  const T& operator()(int c, int i, int j, int k) const { return data_[index(c, i, j, k)]; }

  /// Contiguous vertical column (length nz) at (c, i, j).
  std::span<T> column(int c, int i, int j) { return {data_.data() + index(c, i, j, 0), std::size_t(shape_.nz)}; }
  std::span<const T> column(int c, int i, int j) const {
    return {data_.data() + index(c, i, j, 0), std::size_t(shape_.nz)};
  }
  /// Contiguous block of one component, layout (nx, ny, nz).
  std::span<T> component(int c) {
    const std::size_t n = std::size_t(shape_.nx) * shape_.ny * shape_.nz;
    return {data_.data() + c * n, n};
  }
  std::span<const T> component(int c) const {
    const std::size_t n = std::size_t(shape_.nx) * shape_.ny * shape_.nz;
    return {data_.data() + c * n, n};
  }

  std::span<T> values() { return data_; }
  std::span<const T> values() const { return data_; }
  T* data() { return data_.data(); }
  const T* data() const { return data_.data(); }

  FieldTensor& operator+=(const FieldTensor& o);
  FieldTensor& operator-=(const FieldTensor& o);
  FieldTensor& operator*=(double a);
  /// this += a * o
  FieldTensor& axpy(double a, const FieldTensor& o);
  void fill(T v) { std::fill(data_.begin(), data_.end(), v); }

  bool all_finite() const;
  /// Largest absolute entry.
  double max_abs() const;

  friend FieldTensor operator+(FieldTensor a, const FieldTensor& b) { return a += b; }
  friend FieldTensor operator-(FieldTensor a, const FieldTensor& b) { return a -= b; }
  friend FieldTensor operator*(double s, FieldTensor a) { return a *= s; }
  friend FieldTensor operator*(FieldTensor a, double s) { return a *= s; }

 private:
  void require_same_shape(const FieldTensor& o) const;

  FieldShape shape_;
  std::vector<T> data_;
};

/// Real values on the collocation grid: horizontally equispaced, vertically
/// Chebyshev-Gauss-Lobatto points of [-l, 0].
using PhysicalField = FieldTensor<double>;

/// Fourier (horizontal) x Chebyshev (vertical) coefficients. The represented
/// field is sum_k sum_m c(k, m) exp(i k.x') T_m(2 z / l + 1). The vertical
/// extent is usually nz; vertical antiderivatives carry nz + 1 coefficients.
using SpectralField = FieldTensor<Complex>;

extern template class FieldTensor<double>;
extern template class FieldTensor<Complex>;

}  // namespace hydronudge
