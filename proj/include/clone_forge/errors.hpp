#pragma once

#include <stdexcept>
#include <string>

namespace cf {

/// A stage, index or arity lies outside the range where a value is defined.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Domain/codomain or arity mismatch between composed pieces.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed input data or a violated type invariant at load time.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cf
