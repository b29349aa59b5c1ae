#pragma once

#include <stdexcept>
#include <string>

namespace seghull {

// Raised when a caller breaks an operation's precondition (length mismatch,
// out-of-range state, malformed segment flags, invalid permutation map).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class EmptyInputError : public std::runtime_error {
 public:
  EmptyInputError() : std::runtime_error("empty input: at least one point is required") {}
};

// Input that the requested hull dimension cannot handle (e.g. coplanar points
// given to the 3D driver, or oracle inputs outside its supported range).
class DegenerateInputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace seghull
