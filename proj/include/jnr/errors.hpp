#pragma once

#include <stdexcept>
#include <string>

namespace jnr {

/// Malformed or inconsistent caller input (dimension mismatch, broken
/// Hermiticity, invalid probability vector, ...).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical routine failed to meet its own contract (non-convergence,
/// cross-check mismatch between two independent routes).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace jnr
