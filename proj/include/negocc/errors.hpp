#pragma once

#include <stdexcept>
#include <string>

namespace negocc {

// Input outside the mathematical domain of an operation. The message names
// the violated constraint.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A closed form has a log of zero (or a vanishing denominator) at the
// requested point.
class SingularityError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Skewness/kurtosis requested for a point-mass distribution.
class DegenerateMomentsError : public DomainError {
 public:
  using DomainError::DomainError;
};

// An oracle (weighted-geometric or Stirling form) was asked for an instance
// outside the range where its extended-precision arithmetic can be trusted.
class OracleRangeError : public std::range_error {
 public:
  using std::range_error::range_error;
};

// An iterative special-function evaluation did not converge.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Estimated work exceeds the configured budget.
class ResourceError : public std::runtime_error {
 public:
  ResourceError(const std::string& what, double estimate, double budget)
      : std::runtime_error(what), estimate_(estimate), budget_(budget) {}

  double estimate() const noexcept { return estimate_; }
  double budget() const noexcept { return budget_; }

 private:
  double estimate_;
  double budget_;
};

}  // namespace negocc
