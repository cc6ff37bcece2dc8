#pragma once

#include <optional>
#include <vector>

#include "tangency/curve.hpp"
#include "tangency/gcd.hpp"
#include "tangency/series.hpp"

namespace tangency {

/// f_1 = P_x / P_y and f_{i+1} = Delta(f_i), each in lowest terms.
struct JetSequence {
  BivarPoly source;
  std::vector<RationalFunc> f;  // f[0] is f_1

  const RationalFunc& at(int i) const { return f.at(i - 1); }
  int jmax() const { return static_cast<int>(f.size()); }
};

/// Delta(f) = f_x - f1 f_y, reduced.
RationalFunc delta_apply(const RationalFunc& f, const RationalFunc& f1);

/// Throws DegenerateJets when dP/dy vanishes identically.
JetSequence jet_sequence(const PlaneCurve& c, int jmax);

/// The branch y = y0 + phi(x - x0) of a smooth point with non-vertical
/// tangent; phi has zero constant term.
struct HenselBranch {
  Point2 base;
  TruncatedSeries phi;

  /// a_1 ... a_N.
  std::vector<Scalar> coefficients() const;
};

/// Newton iteration with precision doubling from phi = 0. Throws
/// SingularPointError, VerticalTangentError, or PreconditionError when the
/// point is off the curve.
HenselBranch hensel_phi(const PlaneCurve& c, const Point2& p0, int order);

/// f_i(p0). Throws BadPointError when some G_j (j <= i) vanishes at p0 and
/// CharacteristicObstruction when i! = 0 in the field.
Scalar g_eval(const PlaneCurve& c, const Point2& p0, int i);
/// Same, reusing a precomputed sequence with jmax >= i.
Scalar g_eval(const JetSequence& jets, const Point2& p0, int i);

/// Intersection multiplicity, or the infinite marker for proportional curves.
struct Multiplicity {
  bool infinite = false;
  int value = 0;

  bool operator==(const Multiplicity&) const = default;
};

/// val_x(phi - phi') at a common smooth point with non-vertical tangents.
/// `order` defaults to D D' + 1; a smaller value throws
/// TruncationInsufficient. Full vanishing for non-proportional curves throws
/// InvariantBreach (Bezout).
Multiplicity intersection_multiplicity(const PlaneCurve& a, const PlaneCurve& b, const Point2& p,
                                       std::optional<int> order = std::nullopt);

struct BezoutReport {
  bool ok = false;
  int sum = 0;      // multiplicities, singular points counted as 1
  int bound = 0;    // deg P * deg P'
  int flagged = 0;  // singular common points (lower bound 1 each)
  int unresolved = 0;
  bool common_component = false;
};

/// Sums multiplicities over the base-field common points and compares with
/// deg P * deg P'. Vertical tangents are handled by a local shear.
BezoutReport bezout_check(const PlaneCurve& a, const PlaneCurve& b);

/// kHorizontal marks a zero of dP/dx, the bad points of the orthogonal lift.
enum BadReason : unsigned { kSingular = 1u, kVertical = 2u, kDenominator = 4u, kHorizontal = 8u };

struct BadPoint {
  Point2 point;
  unsigned reasons = 0;
  /// Smallest j <= jmax with G_j(point) = 0, or 0.
  int first_denominator = 0;
};

struct BadPointSet {
  std::vector<BadPoint> points;  // sorted by point
  int unresolved = 0;            // over Q: candidates outside the base field

  bool contains(const Point2& p) const;
};

/// Base-field points of the curve that are singular, have a vertical tangent,
/// or lie on some Z(G_j) with j <= jmax. Throws DegenerateJets when dP/dy
/// vanishes identically, or when dP/dx does on a curve of degree >= 2 (all
/// f_j vanish identically).
BadPointSet classify_good_points(const PlaneCurve& c, int jmax);

}  // namespace tangency
