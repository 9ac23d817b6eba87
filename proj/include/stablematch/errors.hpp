#pragma once

#include <stdexcept>

namespace stablematch {

/// Thrown when an exhaustive procedure would exceed its enumeration cap.
/// Distinct from a negative answer: the question was not decided.
class BudgetExceededError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace stablematch
