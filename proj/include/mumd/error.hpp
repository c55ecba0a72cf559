#pragma once

#include <stdexcept>
#include <string>

namespace mumd {

// Base for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller supplied something outside an operation's preconditions
// (dimension mismatch, parameter out of range, malformed payload).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A supplied object failed a structural check it was required to pass
// (e.g. bases handed to the MUB lift are not mutually unbiased).
class VerificationError : public Error {
 public:
  using Error::Error;
};

// Construction parameter makes some POVM element non-positive.
class PositivityError : public ValidationError {
 public:
  PositivityError(const std::string& what, double min_eigenvalue, int n, int b)
      : ValidationError(what), min_eigenvalue_(min_eigenvalue), n_(n), b_(b) {}

  double min_eigenvalue() const noexcept { return min_eigenvalue_; }
  int n() const noexcept { return n_; }
  int b() const noexcept { return b_; }

 private:
  double min_eigenvalue_;
  int n_;
  int b_;
};

// MUB construction requested for a dimension with no supported construction.
class UnsupportedDimensionError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Numerical drift that breaks an internal invariant (non-negligible
// imaginary part of a real observable, negative probabilities).
class InvariantError : public Error {
 public:
  using Error::Error;
};

}  // namespace mumd
