#include "hydronudge/field.hpp"

#include <algorithm>
#include <cmath>

#include "hydronudge/error.hpp"

namespace hydronudge {

template <typename T>
void FieldTensor<T>::require_same_shape(const FieldTensor& o) const {
  if (!(shape_ == o.shape_)) throw ShapeError("field shape mismatch");
}

template <typename T>
FieldTensor<T>& FieldTensor<T>::operator+=(const FieldTensor& o) {
  require_same_shape(o);
  for (std::size_t n = 0; n < data_.size(); ++n) data_[n] += o.data_[n];
  return *this;
}

template <typename T>
FieldTensor<T>& FieldTensor<T>::operator-=(const FieldTensor& o) {
  require_same_shape(o);
  for (std::size_t n = 0; n < data_.size(); ++n) data_[n] -= o.data_[n];
  return *this;
}

template <typename T>
FieldTensor<T>& FieldTensor<T>::operator*=(double a) {
  for (auto& v : data_) v *= a;
  return *this;
}

template <typename T>
FieldTensor<T>& FieldTensor<T>::axpy(double a, const FieldTensor& o) {
  require_same_shape(o);
  for (std::size_t n = 0; n < data_.size(); ++n) data_[n] += a * o.data_[n];
  return *this;
}

template <typename T>
bool FieldTensor<T>::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](const T& v) {
    if constexpr (std::is_same_v<T, double>)
      return std::isfinite(v);
    else
      return std::isfinite(v.real()) && std::isfinite(v.imag());
  });
}

template <typename T>
double FieldTensor<T>::max_abs() const {
  double m = 0.0;
  for (const auto& v : data_) m = std::max(m, double(std::abs(v)));
  return m;
}

template class FieldTensor<double>;
template class FieldTensor<Complex>;

}  // namespace hydronudge
