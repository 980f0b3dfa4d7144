#pragma once

#include <stdexcept>
#include <string>

namespace chsplit {

/// Raised when an input violates an operation's precondition.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The modified energy has a non-finite term at this resolution and step size.
class EnergyUndefined : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace chsplit
