#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace statdiff {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed expression or distribution spec text. `offset` is the byte
// offset of the first offending character.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t offset)
      : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

// "^" followed by a non-integer literal, e.g. "x^0.5".
class NonIntegerExponent : public SyntaxError {
 public:
  using SyntaxError::SyntaxError;
};

// Evaluation outside a function's natural domain (ln of a nonpositive
// value, sqrt of a negative, division by zero) or a series recurrence
// whose constant term makes the expansion undefined.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Adaptive integration could not reach the requested tolerance.
class QuadratureFailure : public Error {
 public:
  using Error::Error;
};

// A bound's gate condition failed a grid check.
class HypothesisFailure : public Error {
 public:
  using Error::Error;
};

// An integrand or sample evaluated to inf/NaN.
class NonFinite : public Error {
 public:
  using Error::Error;
};

// A distribution definition violates its invariants.
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace statdiff
