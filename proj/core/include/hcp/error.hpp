#pragma once

#include <stdexcept>
#include <string>

namespace hcp {

// Bad input to an operation: malformed matrices, out-of-range nodes, bad specs.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An exponential or exhaustive routine was asked to go past its size limit.
class CapacityExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InsufficientData : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Serialized data (model files, archive lines, edge lists) could not be parsed.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hcp
