#pragma once

#include <stdexcept>
#include <string>

namespace crtrans {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UniverseMismatch : public Error {
 public:
  UniverseMismatch() : Error("polynomials belong to different variable universes") {}
  explicit UniverseMismatch(const std::string& what) : Error(what) {}
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A precondition of an analysis operation does not hold (e.g. generic rank
// smaller than n+1 where full rank is required).
class PreconditionViolated : public Error {
 public:
  using Error::Error;
};

// Raised when a soundness cross-check fails. Seeing one means a bug.
class InternalConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace crtrans
