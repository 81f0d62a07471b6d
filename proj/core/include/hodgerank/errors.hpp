#pragma once

#include <stdexcept>
#include <string>

namespace hodgerank {

/// Malformed or precondition-violating input (bad labels, negative weights,
/// size caps exceeded, ...). Callers map this to an "input error" exit status.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An iterative or LP solve did not reach its target within the budget.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, int iterations, double residual)
      : std::runtime_error(what), iterations_(iterations), residual_(residual) {}

  int iterations() const noexcept { return iterations_; }
  double residual() const noexcept { return residual_; }

 private:
  int iterations_;
  double residual_;
};

}  // namespace hodgerank
