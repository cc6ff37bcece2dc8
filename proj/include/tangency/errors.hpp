#pragma once

#include <stdexcept>
#include <string>

namespace tangency {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller violated a documented precondition (bad input, wrong field, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Arithmetic between scalars or polynomials over different fields.
class FieldMismatch : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class ParseError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// Inverting a non-unit: zero scalar, or a series with zero constant term.
class NonUnitError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class SingularPointError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class VerticalTangentError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// A point is a bad point of a curve (some jet denominator vanishes there).
class BadPointError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// Division by an integer that vanishes in the characteristic (i! = 0 in F_p).
class CharacteristicObstruction : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// The jet sequence degenerates on the curve (identically vanishing slope or
/// denominator), the characteristic-two pathology.
class DegenerateJets : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// Series truncation too short to certify a result; the caller may raise it.
class TruncationInsufficient : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class RetryBudgetExhausted : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class NoVanishingPolynomial : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// A brute-force scan would exceed the configured field-size bound.
class ScanBoundExceeded : public Error {
 public:
  using Error::Error;
};

/// An internal invariant failed: a Bezout violation, a monitor breach, or an
/// exact identity that did not hold.
class InvariantBreach : public Error {
 public:
  using Error::Error;
};

}  // namespace tangency
