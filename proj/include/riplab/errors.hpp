#ifndef RIPLAB_ERRORS_HPP
#define RIPLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace riplab {

// Matrix has no usable content for the requested operation (zero matrix,
// empty dimensions, vanishing norm).
class DegenerateError : public std::runtime_error {
 public:
  explicit DegenerateError(const std::string& what) : std::runtime_error(what) {}
};

// Eigensolver failed to converge, or a decomposition residual exceeded its bound.
class SpectralError : public std::runtime_error {
 public:
  SpectralError(const std::string& what, double residual)
      : std::runtime_error(what + " (residual " + std::to_string(residual) + ")"),
        residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

// An unconditional theorem failed beyond tolerance. Indicates a bug, never
// a property of the input.
class TheoremViolation : public std::logic_error {
 public:
  explicit TheoremViolation(const std::string& what) : std::logic_error(what) {}
};

// Requested enumeration exceeds the configured budget.
class BudgetError : public std::runtime_error {
 public:
  explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace riplab

#endif  // RIPLAB_ERRORS_HPP
