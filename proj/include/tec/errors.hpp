#pragma once

#include <stdexcept>
#include <string>

namespace tec {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Incompatible tensor shapes (contraction mismatch, non-square input, ...).
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// A function was asked to act outside its domain, e.g. log of a
/// nonpositive eigenvalue.
class DomainError : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Dense operator would exceed the configured size cap.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Hypotheses of a bound are not met, so the bound is not claimed.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class QuadratureError : public Error {
 public:
  using Error::Error;
};

/// Malformed configuration or input file; message carries the location.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace tec
