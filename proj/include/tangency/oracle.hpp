#pragma once

#include <cstdint>
#include <vector>

#include "tangency/counting.hpp"

namespace tangency {

/// Brute-force directed tangencies over a small finite field: every point of
/// the plane, every curve evaluated term by term, tangent directions found
/// by testing all q + 1 projective directions against the gradient. Single
/// threaded. Throws ScanBoundExceeded when q > 256 or n > 512.
CountReport oracle_tangencies_fp(const std::vector<PlaneCurve>& curves);

/// dim k[x, y] / (P, P', monomials of degree N) at the origin after moving
/// p there, by naive Gaussian elimination. Throws TruncationInsufficient
/// when N < D D' + 1 or the dimension changes between N and N + 1.
int oracle_multiplicity_quotient(const BivarPoly& a, const BivarPoly& b, const Point2& p, int truncation);

}  // namespace tangency
