#pragma once

#include <stdexcept>
#include <string>

namespace steerkit {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input violates a documented precondition (shape, Hermiticity, normalization).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Input is well-formed but lies outside the domain of the operation,
/// e.g. a QSE requested for a state whose Alice marginal is pure.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The SDP solver did not certify an optimum.
class SolverError : public Error {
 public:
  using Error::Error;
};

}  // namespace steerkit
