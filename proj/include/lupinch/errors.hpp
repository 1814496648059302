#pragma once

#include <stdexcept>
#include <string>

namespace lupinch {

/// Raised when an argument violates an operation's precondition.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an iterative method hits its iteration cap.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what, double residual = 0.0)
      : std::runtime_error(what), residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

inline constexpr double kDefaultTol = 1e-10;

}  // namespace lupinch
