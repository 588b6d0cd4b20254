#pragma once

#include <stdexcept>
#include <string>

namespace qpost {

/// Base class for every error this library throws.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Operands with incompatible or unsupported dimensions.
struct DimensionError : Error {
  using Error::Error;
};

/// A required overlap fell at or below its threshold (e.g. orthogonal
/// pre/post-selection, or a singular basis-pair in a reconstruction).
struct OrthogonalityError : Error {
  using Error::Error;
};

/// A set of kets that was required to be an orthonormal basis is not one.
struct BasisError : Error {
  using Error::Error;
};

/// Numerical-contract violation: non-Hermitian input where Hermitian was
/// required, invalid density operator, imaginary residue above tolerance,
/// negative eigenvalue of a PSD operand, and the like.
struct NumericError : Error {
  using Error::Error;
};

/// Malformed input text (state files, projector specs).
struct ParseError : Error {
  using Error::Error;
};

}  // namespace qpost
