#pragma once

#include <stdexcept>
#include <string>

namespace partialop {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad sizes, non-finite entries, out-of-range parameters.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Requested exponent pair has no implemented induced norm.
class UnsupportedNorm : public Error {
 public:
  using Error::Error;
};

/// Neumann precondition ||x|| * ||a^-1|| < 1 is not met.
class ContractionViolation : public Error {
 public:
  using Error::Error;
};

class SingularOperator : public Error {
 public:
  using Error::Error;
};

class InvalidExponent : public Error {
 public:
  using Error::Error;
};

/// A Dirac atom does not sit on a node of the sampling grid.
class GridMismatch : public Error {
 public:
  using Error::Error;
};

/// The operator is not resolved at the requested point.
class SpectralPoint : public Error {
 public:
  using Error::Error;
};

/// Argument lies outside the domain of the partial operator.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A user-supplied operator evaluator failed.
class EvaluationError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace partialop
