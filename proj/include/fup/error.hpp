#pragma once

#include <stdexcept>
#include <string>

namespace fup {

/// A parameter violates an operation's precondition.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A set or index would exceed the supported integer width (M^k < 2^53).
class CapacityError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

}  // namespace fup
