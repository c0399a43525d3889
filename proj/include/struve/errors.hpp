#pragma once

#include <stdexcept>
#include <string>

namespace struve {

/// A precondition on an argument was violated. The message names the
/// violated condition.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// A bound exists only on a restricted parameter range and the request falls
/// outside it (for example gamma >= 1/D for the damped upper bounds).
class NotApplicableError : public DomainError {
public:
  using DomainError::DomainError;
};

/// The result is not representable in binary64 (use the scaled variant).
class OverflowError : public std::overflow_error {
public:
  using std::overflow_error::overflow_error;
};

/// An iterative method stopped before meeting its tolerance. Carries the best
/// estimate available and its error bound.
class ConvergenceError : public std::runtime_error {
public:
  ConvergenceError(const std::string& what, double best_estimate, double error_bound)
      : std::runtime_error(what), best_estimate_(best_estimate), error_bound_(error_bound) {}

  double best_estimate() const noexcept { return best_estimate_; }
  double error_bound() const noexcept { return error_bound_; }

private:
  double best_estimate_;
  double error_bound_;
};

}  // namespace struve
