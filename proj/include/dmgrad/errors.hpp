#pragma once

#include <stdexcept>
#include <string>

namespace dmgrad {

/// A physical precondition was violated (negative mass, zero frequency, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A numerical procedure failed to reach its tolerance or found an
/// ill-posed problem (non-unimodal objective, bracketing failure).
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what, double achieved = 0.0)
      : std::runtime_error(what), achieved_(achieved) {}

  /// Achieved tolerance or offending value, when meaningful.
  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

}  // namespace dmgrad
