#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace sinezeros {

/// Violated precondition on user-supplied data (bad window, zero amplitude, ...).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical procedure could not deliver its postcondition.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Iterative refinement ran out of steps; carries the best iterate seen.
class ConvergenceError : public NumericalError {
 public:
  ConvergenceError(const std::string& what, std::complex<double> best)
      : NumericalError(what), best_(best) {}

  std::complex<double> best_iterate() const { return best_; }

 private:
  std::complex<double> best_;
};

/// Zero counting or enumeration disagreed with the expected 2m+1 population.
class EnumerationError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace sinezeros
