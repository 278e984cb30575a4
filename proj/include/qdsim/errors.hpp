#pragma once

#include <stdexcept>
#include <string>

namespace qdsim {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Input violates a type invariant (non-Hermitian matrix, negative decay rate, ...).
struct ValidationError : Error {
  using Error::Error;
};

/// The trace-constrained steady-state system has no unique solution.
struct DegenerateSteadyStateError : Error {
  using Error::Error;
};

/// Relaxation reached the time horizon before the residual dropped below tolerance.
struct NonConvergenceError : Error {
  NonConvergenceError(const std::string& what, double final_residual)
      : Error(what), residual(final_residual) {}
  double residual;
};

/// Fixed-step integration left the physical region; usually dt is too large.
struct InstabilityError : Error {
  using Error::Error;
};

/// An observable was requested outside the range covered by a sweep.
struct DomainError : Error {
  using Error::Error;
};

}  // namespace qdsim
