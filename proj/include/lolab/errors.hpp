#pragma once

#include <stdexcept>
#include <string>

namespace lolab {

/// Raised when an exact computation would exceed a configured enumeration budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an operation's input violates its stated precondition.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace lolab
