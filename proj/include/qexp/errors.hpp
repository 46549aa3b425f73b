#pragma once

#include <stdexcept>
#include <string>

namespace qexp {

/// Base class of every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands built over incompatible symbol tables, malformed shapes.
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// Division by zero, poles hit during substitution or evaluation.
class ArithmeticError : public Error {
 public:
  using Error::Error;
};

/// Series with a zero constant term cannot be inverted.
class NonInvertibleError : public ArithmeticError {
 public:
  using ArithmeticError::ArithmeticError;
};

/// Lower-triangular matrix without a unit diagonal.
class SingularityError : public ArithmeticError {
 public:
  using ArithmeticError::ArithmeticError;
};

/// Requested index exceeds the truncation order.
class OrderError : public Error {
 public:
  using Error::Error;
};

/// Numeric point outside the convergence region of an identity.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Malformed expression literal.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace qexp
