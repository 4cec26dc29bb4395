#pragma once

#include <stdexcept>
#include <string>

namespace flyby {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A value violates a documented precondition or type invariant.
class DomainError : public Error {
 public:
  using Error::Error;
};

// The state is not on a hyperbolic (e > 1) conic.
class NotHyperbolicError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Angular momentum is exactly along the polar axis, so the node longitude of
// the polar chart is undefined.
class NodeUndefinedError : public DomainError {
 public:
  using DomainError::DomainError;
};

// An iterative solver stopped before meeting its tolerance.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double last_residual)
      : Error(what + " (last residual " + std::to_string(last_residual) + ")"),
        last_residual_(last_residual) {}

  double last_residual() const noexcept { return last_residual_; }

 private:
  double last_residual_;
};

// Numerical integration failed (step-size underflow, domain exit).
class IntegrationError : public Error {
 public:
  IntegrationError(const std::string& what, double time)
      : Error(what + " at t = " + std::to_string(time) + " s"), time_(time) {}

  double time() const noexcept { return time_; }

 private:
  double time_;
};

}  // namespace flyby
