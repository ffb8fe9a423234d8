#pragma once

#include <stdexcept>

namespace stefan {

// Invalid user input or a call outside a documented precondition.
struct ValidationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// An iteration failed to converge, or a property the theory guarantees
// failed to hold numerically.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace stefan
