#pragma once

#include <stdexcept>
#include <string>

namespace eiscong {

/// Raised when caller-supplied input violates an operation's contract.
/// The CLI maps this to exit code 1.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a computation cannot proceed for numerical or algorithmic
/// reasons (insufficient precision, unsupported degree, ...).
class ComputationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require(bool cond, const std::string& message) {
  if (!cond) throw PreconditionError(message);
}

}  // namespace eiscong
