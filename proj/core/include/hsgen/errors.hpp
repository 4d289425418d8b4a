#pragma once

#include <stdexcept>
#include <string>

namespace hsgen {

// Operand shapes do not fit together.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A value is out of its admissible domain (NaN, negative norm, unknown name).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A problem instance violates one of its data invariants
// (non-Hermitian T block, non-positive U norm, ...).
class InvariantError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or unreadable file on disk.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hsgen
