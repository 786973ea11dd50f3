#pragma once

#include <stdexcept>
#include <string>

namespace qpencil {

// Mismatched qubit counts, vector lengths, or matrix shapes.
struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Input violates a documented precondition (non-Hermitian matrix,
// unnormalized data, label constraints, ...).
struct ValidityError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Requested size exceeds a hard cap (dense conversion, eigensolver).
struct CapacityError : std::length_error {
  using std::length_error::length_error;
};

// An algorithm failed to produce a usable result (singular solve,
// non-convergence, not-positive-definite factorization).
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Rayleigh-quotient denominator fell below the guard threshold.
struct DegenerateDenominatorError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace qpencil
