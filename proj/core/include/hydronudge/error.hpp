#pragma once

#include <stdexcept>
#include <string>

namespace hydronudge {

/// Root of the library's exception hierarchy.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad parameters, configuration or field shapes.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class ShapeError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Non-finite data, blow-up, or a violated stability guard.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class GuardViolation : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace hydronudge
