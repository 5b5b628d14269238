#pragma once

#include <stdexcept>
#include <string>

namespace bregman {

/// Malformed input: dimension mismatch, out-of-range parameter, bad file.
class InputError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A documented precondition on the mathematical content of an argument failed
/// (for example, a vector that is not a valid subgradient).
class PreconditionError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// An iterative numerical kernel could not deliver the accuracy it promises.
class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace bregman
