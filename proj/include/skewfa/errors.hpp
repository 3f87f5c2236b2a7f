#pragma once

#include <stdexcept>
#include <string>

namespace skewfa {

/// Shape or parameter-consistency violation.
class ShapeError : public std::invalid_argument {
 public:
  explicit ShapeError(const std::string& what) : std::invalid_argument(what) {}
};

/// A matrix that must be symmetric positive definite failed to factorize.
class DecompositionError : public std::runtime_error {
 public:
  explicit DecompositionError(const std::string& what) : std::runtime_error(what) {}
};

/// Truncation region carries essentially no probability mass; signals
/// numerically unidentifiable skewness to the caller.
class DegenerateTruncationError : public std::runtime_error {
 public:
  explicit DegenerateTruncationError(const std::string& what)
      : std::runtime_error(what) {}
};

/// A mixture component lost all responsibility mass during fitting.
class EmptyComponentError : public std::runtime_error {
 public:
  explicit EmptyComponentError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace skewfa
