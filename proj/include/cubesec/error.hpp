#pragma once

#include <stdexcept>
#include <string>

namespace cubesec {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Dimension argument rejected (e.g. n < 2 for a diagonal section).
class DimensionError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Result would not be representable (exact-integer range, exp overflow).
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// Richardson extrapolation inputs did not converge monotonically.
class ExtrapolationError : public Error {
 public:
  using Error::Error;
};

/// A root search was given a bracket without a sign change.
class BracketError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A file could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace cubesec
