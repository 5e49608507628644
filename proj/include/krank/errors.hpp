#pragma once

#include <stdexcept>
#include <string>

namespace krank {

/// Invalid configuration or arguments (maps to exit status 1 in the CLI).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A lookup past the end of a precomputed table.
class BoundsError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Arguments outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Exhaustive work requested beyond the configured budget.
class BudgetError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Working precision too low to certify a result.
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace krank
