#pragma once

#include <stdexcept>
#include <string>

namespace sks {

// Domain violations use std::domain_error and overflow uses std::overflow_error.
// The two types below cover failure modes the standard hierarchy has no name for.

/// Adaptive quadrature could not meet its tolerance within the refinement limit.
class NonConvergenceError : public std::runtime_error {
 public:
  explicit NonConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

/// A lattice computation would exceed its size cap.
class ResourceLimitError : public std::runtime_error {
 public:
  explicit ResourceLimitError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace sks
