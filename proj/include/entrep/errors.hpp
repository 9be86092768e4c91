#pragma once

#include <stdexcept>
#include <string>

namespace entrep {

// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed or out-of-contract input (bad shape, non-finite entries, ...).
struct InvalidInputError : Error {
  using Error::Error;
};

// Operand fails a positivity requirement beyond tolerance.
struct NotPsdError : Error {
  using Error::Error;
};

// Requested work exceeds the configured desk-scale limits.
struct ResourceLimitError : Error {
  using Error::Error;
};

// Game does not satisfy the structural predicate required by an operation.
struct GameClassError : Error {
  using Error::Error;
};

// Strategy kind not supported by an operation (e.g. non-projective input).
struct UnsupportedStrategyError : Error {
  using Error::Error;
};

}  // namespace entrep
