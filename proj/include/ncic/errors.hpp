#pragma once

#include <stdexcept>
#include <string>

namespace ncic {

/// Thrown when an enumeration, search, or table materialization would exceed
/// its configured budget. Budgets are hard limits; nothing is silently
/// truncated or sampled.
class BudgetExceededError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Thrown when an input file or JSON document cannot be interpreted.
class ParseError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace ncic
