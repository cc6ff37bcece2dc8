#pragma once

#include <vector>

#include "tangency/curve.hpp"

namespace tangency {

/// Base-field common zeros of two polynomials without a common factor.
struct CommonPoints {
  std::vector<Point2> points;  // sorted
  /// Intersections (counted with multiplicity in the eliminant) that could
  /// not be located over Q: irrational or non-real coordinates, or integers
  /// too large to factor. Always 0 over finite fields.
  int unresolved = 0;
};

/// Throws PreconditionError when a and b share a non-constant factor, and
/// ScanBoundExceeded for finite fields larger than 2^20.
CommonPoints common_points(const BivarPoly& a, const BivarPoly& b);

/// Common base-field points of P and dP/dy: the singular and vertical-tangent
/// points of a curve.
CommonPoints vertical_or_singular_points(const PlaneCurve& c);

}  // namespace tangency
