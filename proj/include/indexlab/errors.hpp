// errors.hpp — exception types shared across the index laboratory.

#pragma once

#include <stdexcept>
#include <string>

namespace indexlab {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A symbol (or operator) required to be invertible is not, to the working tolerance.
struct NotInvertible : Error {
  using Error::Error;
};

// Requested truncation degree cannot meet the residual target.
struct DegreeTooSmall : Error {
  using Error::Error;
};

// Argument-increment quadrature saw a single-step jump > pi/2 (undersampled).
struct QuadratureUnstable : Error {
  using Error::Error;
};

// Straight-line homotopy margin ||psi - phi|| < 1/||phi^-1|| failed.
struct MarginViolated : Error {
  using Error::Error;
};

// Finite section smaller than the symbol bandwidth.
struct TruncationTooSmall : Error {
  using Error::Error;
};

// Operands live over different labeled bases.
struct BasisMismatch : Error {
  using Error::Error;
};

// Escalation ladder exhausted without a stable kernel/cokernel pair.
struct NoConvergence : Error {
  using Error::Error;
};

// Claimed inverse fails ||u u_inv - 1|| <= tol.
struct NotInverse : Error {
  using Error::Error;
};

// A bound the paper proves was violated numerically (an implementation bug, not new math).
struct BoundViolated : Error {
  using Error::Error;
};

// Sector decomposition check failed; message carries the offending block norm.
struct SplitViolated : Error {
  using Error::Error;
};

// Neither sign assignment of the FFT multiplier reproduces the eigenrelations.
struct ConventionLockFailure : Error {
  using Error::Error;
};

struct QuadratureBudgetExceeded : Error {
  using Error::Error;
};

struct GridTooSmall : Error {
  using Error::Error;
};

struct EigenFailure : Error {
  using Error::Error;
};

struct IllConditioned : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

}  // namespace indexlab
