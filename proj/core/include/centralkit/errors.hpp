#pragma once

#include <stdexcept>
#include <string>

namespace centralkit {

/// Raised when a run cannot continue: inadmissible states, CFL violations,
/// non-finite values or detected instability. Precondition violations on
/// arguments use std::invalid_argument instead.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class AdmissibilityError : public SolverError {
 public:
  using SolverError::SolverError;
};

class CflError : public SolverError {
 public:
  using SolverError::SolverError;
};

class InstabilityError : public SolverError {
 public:
  using SolverError::SolverError;
};

}  // namespace centralkit
