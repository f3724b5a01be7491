// Error types shared by the library.
#pragma once

#include <stdexcept>
#include <string>

namespace hopflift {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
};

/// A height exceeded the configured cutoff. We never truncate silently.
class CutoffExceeded : public Error {
 public:
  CutoffExceeded(int height, int cutoff)
      : Error("height " + std::to_string(height) + " exceeds cutoff " +
              std::to_string(cutoff)) {}
};

class DomainMismatch : public Error {
 public:
  using Error::Error;
};

/// A functional was asked to be nonzero on a degree that is not G-invariant.
class InvarianceViolation : public Error {
 public:
  using Error::Error;
};

/// Input violates a documented precondition (bad index, wrong family, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace hopflift
