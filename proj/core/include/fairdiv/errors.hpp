#pragma once

#include <stdexcept>
#include <string>

namespace fairdiv {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed input document; the message names the offending field.
struct ParseError : Error {
  using Error::Error;
};

/// Caller violated a precondition (bad index, dimension mismatch, ...).
struct UsageError : Error {
  using Error::Error;
};

/// An exhaustive enumeration would exceed the configured budget.
struct BudgetError : Error {
  using Error::Error;
};

/// An internal invariant of the truthful-equivalent construction failed.
/// This signals a verification failure, never a silently wrong answer.
struct ConstructionError : Error {
  ConstructionError(int round, const std::string& what)
      : Error("round " + std::to_string(round) + ": " + what), round(round) {}
  int round;
};

}  // namespace fairdiv
