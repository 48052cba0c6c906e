#pragma once

#include <stdexcept>

namespace dsum {

// Precondition violations on API arguments (bad sizes, malformed keys).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed text or serialized input.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Checked integer arithmetic wrapped around.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

// An oracle or builder was asked for an instance beyond its size limit.
class ScaleGuardError : public std::length_error {
 public:
  using std::length_error::length_error;
};

}  // namespace dsum
