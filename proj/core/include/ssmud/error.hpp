#pragma once

#include <stdexcept>
#include <string>

namespace ssmud {

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// An iterative method (series, quadrature, search) failed to reach its
// tolerance. Never thrown for results that merely lose a few digits.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A root search was handed an interval with no sign change.
class BracketError : public std::runtime_error {
 public:
  BracketError(const std::string& what, double gLo, double gHi)
      : std::runtime_error(what), gLo_(gLo), gHi_(gHi) {}

  double gLo() const noexcept { return gLo_; }
  double gHi() const noexcept { return gHi_; }

 private:
  double gLo_;
  double gHi_;
};

}  // namespace ssmud
