#pragma once

#include <stdexcept>
#include <string>

namespace prl {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A computation would need values beyond the configured global bound.
class BoundExceededError : public Error {
 public:
  using Error::Error;
};

// A checkpoint file is malformed or fails re-verification.
class CorruptCheckpointError : public Error {
 public:
  using Error::Error;
};

// A scan exhausted its budget before the result provably stabilized.
class CutoffNotReachedError : public Error {
 public:
  using Error::Error;
};

// Invalid configuration or request parameters.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// An intermediate value does not fit in 64 bits.
class OverflowError : public Error {
 public:
  using Error::Error;
};

}  // namespace prl
