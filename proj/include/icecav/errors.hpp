// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace icecav {

/// Base for every failure raised by a numerical routine. The CLI maps it to exit code 3.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument outside the mathematical domain of the routine (negative Bessel argument, point
/// outside the cavity, ...).
class DomainError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Root isolation or an iterative expansion did not converge within its limits.
class ConvergenceError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// A propagator denominator fell below the resonance guard.
class ResonanceError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// The time grid does not resolve the fastest oscillation involved.
class GridResolutionError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Malformed or non-physical configuration. The CLI maps it to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace icecav
