#pragma once

#include <stdexcept>
#include <string>

namespace fejer {

// Raised when an iterative numerical procedure fails to reach its target
// (root finder non-convergence, inconsistent closed forms). Precondition
// violations use std::invalid_argument instead.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace fejer
