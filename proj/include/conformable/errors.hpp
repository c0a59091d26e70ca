#pragma once

#include <stdexcept>
#include <string>

namespace conformable {

// Argument outside the mathematical domain of an operation (negative time,
// evaluation outside an interval, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A FunctionHandle lacks a derivative the operation needs.
class CapabilityError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Iterative or floating-point procedure failed (non-convergence, non-finite
// values, step-size underflow).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid configuration: bad grid sizes, unknown keys, mismatched grids.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace conformable
