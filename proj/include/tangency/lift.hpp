#pragma once

#include <array>
#include <string>
#include <vector>

#include "tangency/jets.hpp"

namespace tangency {

struct SpacePoint {
  Scalar x, y, z;

  std::array<Scalar, 3> arr() const { return {x, y, z}; }
  Point2 plane() const { return {x, y}; }
  bool operator==(const SpacePoint& o) const { return x == o.x && y == o.y && z == o.z; }
  bool operator<(const SpacePoint& o) const {
    if (const auto c = x.canonical_cmp(o.x); c != 0) return c < 0;
    if (const auto c = y.canonical_cmp(o.y); c != 0) return c < 0;
    return z < o.z;
  }
  std::string to_string() const {
    return "(" + x.to_string() + ", " + y.to_string() + ", " + z.to_string() + ")";
  }
};

/// beta_s (tangency of order s) or the orthogonal lift.
struct LiftKind {
  bool orthogonal = false;
  int s = 1;

  static LiftKind tangency(int s) { return {false, s}; }
  static LiftKind perpendicular() { return {true, 1}; }
  bool operator==(const LiftKind&) const = default;
  /// "s=2" or "orthogonal".
  std::string to_string() const;
};

/// The space curve {P = 0, z G - F = 0} over a plane curve, kept as its
/// defining pair together with the bad points of the source it excludes.
///
///   s = 1:       z P_y - P_x
///   s >= 2:      z G_s - F_s with f_s = F_s / G_s reduced
///   orthogonal:  z P_x + P_y
class LiftedCurve {
 public:
  const PlaneCurve& source() const { return source_; }
  LiftKind kind() const { return kind_; }
  const TrivarPoly& first() const { return first_; }
  const TrivarPoly& second() const { return second_; }
  /// Fiber function z = F / G on the good branch.
  const BivarPoly& fiber_num() const { return fnum_; }
  const BivarPoly& fiber_den() const { return fden_; }
  const BadPointSet& bad() const { return bad_; }
  /// Bezout bound deg P * deg(z G - F) on the degree of the good branch.
  int degree_bound() const { return degree_bound_; }

  bool is_good(const Point2& p) const { return source_.contains(p) && !bad_.contains(p); }
  bool contains(const SpacePoint& q) const;

 private:
  friend LiftedCurve lift_curve(const PlaneCurve& c, LiftKind kind);
  LiftedCurve(PlaneCurve source, LiftKind kind) : source_(std::move(source)), kind_(kind) {}

  PlaneCurve source_;
  LiftKind kind_;
  TrivarPoly first_, second_;
  BivarPoly fnum_, fden_;
  BadPointSet bad_;
  int degree_bound_ = 0;
};

/// Throws DegenerateJets when dP/dy (dP/dx for the orthogonal kind)
/// vanishes identically, PreconditionError for s < 1.
LiftedCurve lift_curve(const PlaneCurve& c, LiftKind kind);

/// The unique fiber point over a good point. Throws PreconditionError off
/// the curve and BadPointError at a bad point.
SpacePoint lift_point(const LiftedCurve& l, const Point2& p);

/// Kernel of the 2 x 3 Jacobian of the defining pair at q.
struct TangentSpace3 {
  SpacePoint base;
  std::vector<std::array<Scalar, 3>> basis;  // reduced echelon kernel basis

  int dimension() const { return static_cast<int>(basis.size()); }
  bool contains(const std::array<Scalar, 3>& v) const;
};

/// Throws PreconditionError when q is not on both defining polynomials.
/// A singular fiber point shows up as dimension >= 2, not as an error.
TangentSpace3 tangent_space(const LiftedCurve& l, const SpacePoint& q);

/// The tangent vector predicted from the jets at a good point p with fiber
/// point q: (1, -f_1, f_{s+1}) for beta_s, (1, -f_1, f_2 / f_1^2) for the
/// orthogonal lift. Throws BadPointError when a needed jet is undefined.
std::array<Scalar, 3> predicted_tangent(const LiftedCurve& l, const Point2& p);

/// Whether (0, 0, 1) lies in the span of the two tangent lines at q.
/// Throws PreconditionError unless q lies on both lifts and both tangent
/// spaces are lines.
bool e3_in_span(const LiftedCurve& a, const LiftedCurve& b, const SpacePoint& q);

struct TwoRichPoint {
  SpacePoint point;
  std::vector<int> lifts;  // indices into the input, ascending
};

struct TwoRichReport {
  std::vector<TwoRichPoint> points;  // sorted by point
  /// Over Q: plane intersections that could not be located.
  int unresolved = 0;
};

/// Points on the good branches of at least two distinct lifts. Lifts with
/// the same kind over proportional sources count as one curve. Finite fields
/// enumerate fibers (ScanBoundExceeded past kScanBound elements); Q
/// intersects pairwise.
TwoRichReport two_rich_points(const std::vector<LiftedCurve>& lifts);

/// Plane points p good for both beta_1(curve i) and the orthogonal lift of
/// curve j (i != j) where the two lifts meet: pi of the two-rich points of
/// {beta_1} x {orthogonal lifts}.
std::vector<Point2> orthogonal_points_via_lifts(const std::vector<PlaneCurve>& curves);

}  // namespace tangency
