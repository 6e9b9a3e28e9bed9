#pragma once

#include <stdexcept>
#include <string>

namespace blockrad {

// Invalid argument ranges (negative orders, dimensions out of range, ...).
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// Interval arguments that violate nesting requirements.
struct IntervalError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Zero-localizing cutoffs whose supports overlap, touch 0, or meet a critical point of P.
struct DeltaTooLarge : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Work requested beyond a configured evaluation budget.
struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Refinement did not settle within tolerance.
struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A grid does not cover a radius that an operation needs.
struct CoverageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input not band-limited relative to the frequency grid.
struct TruncationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Grid too coarse for a requested feature size.
struct ResolutionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Symbol fails assumption checks.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace blockrad
