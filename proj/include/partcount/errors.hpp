#pragma once

#include <stdexcept>

namespace partcount {

/// Input text or instance data violates the format or an instance invariant.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A floating-point count estimate landed too far from an integer.
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A computation would exceed a configured memory or qubit budget.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace partcount
