#pragma once

#include <stdexcept>
#include <string>

namespace qwalk {

// Bad input: parameters outside their admissible range, malformed config.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A numerical guard tripped (window too small, tails not resolved, ...).
class NumericalGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class WindowGuardError : public NumericalGuardError {
 public:
  using NumericalGuardError::NumericalGuardError;
};

class TailToleranceError : public NumericalGuardError {
 public:
  using NumericalGuardError::NumericalGuardError;
};

class FilterAnnihilationError : public NumericalGuardError {
 public:
  using NumericalGuardError::NumericalGuardError;
};

}  // namespace qwalk
