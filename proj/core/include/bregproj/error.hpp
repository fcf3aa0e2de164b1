#pragma once

#include <stdexcept>
#include <string>

namespace bregproj {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes or dimensions do not match.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Malformed input: NaN/Inf data, non-Hermitian matrices, bad parameters.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// The operation is not defined for this kind of object.
class UnsupportedOperation : public Error {
 public:
  using Error::Error;
};

/// A documented precondition was violated (boundary point, empty witness...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Point lies outside the domain of a map.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Constraint set and domain do not intersect.
class InfeasibleError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

}  // namespace bregproj
