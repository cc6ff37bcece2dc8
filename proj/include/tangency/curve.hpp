#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tangency/poly.hpp"

namespace tangency {

struct Point2 {
  Scalar x, y;

  std::array<Scalar, 2> arr() const { return {x, y}; }
  bool operator==(const Point2& o) const { return x == o.x && y == o.y; }
  bool operator<(const Point2& o) const {
    const auto c = x.canonical_cmp(o.x);
    return c != 0 ? c < 0 : y < o.y;
  }
  std::string to_string() const { return "(" + x.to_string() + ", " + y.to_string() + ")"; }
};

/// Projective direction (u : v), stored with its first nonzero coordinate 1.
class TangentDirection {
 public:
  /// Throws PreconditionError when u = v = 0.
  TangentDirection(const Scalar& u, const Scalar& v);

  const Scalar& u() const { return u_; }
  const Scalar& v() const { return v_; }

  /// The orthogonal direction (-v : u).
  TangentDirection perp() const { return TangentDirection(-v_, u_); }
  bool is_isotropic() const { return perp() == *this; }
  bool is_vertical() const { return u_.is_zero(); }

  bool operator==(const TangentDirection& o) const { return u_ == o.u_ && v_ == o.v_; }
  bool operator<(const TangentDirection& o) const {
    const auto c = u_.canonical_cmp(o.u_);
    return c != 0 ? c < 0 : v_ < o.v_;
  }
  std::string to_string() const { return "(" + u_.to_string() + " : " + v_.to_string() + ")"; }

 private:
  Scalar u_, v_;
};

enum class Attestation : std::uint8_t { Verified, AssertedByFamily, Asserted };

std::string to_string(Attestation a);

/// Z(P) for a nonzero, square-free P of positive degree, with cached partials.
class PlaneCurve {
 public:
  /// Validates the polynomial and records the given attestation verbatim.
  PlaneCurve(BivarPoly p, Attestation attestation);

  /// Applies the irreducibility policy to user-supplied input: conics by
  /// discriminant (odd characteristic), finite-field curves of degree <= 4 by
  /// searching for factors over the base field within a work budget, other
  /// curves accepted as Asserted with a warning. Throws PreconditionError for
  /// a curve found to be reducible.
  static PlaneCurve from_user(BivarPoly p);
  static PlaneCurve from_family(BivarPoly p) { return PlaneCurve(std::move(p), Attestation::AssertedByFamily); }

  const BivarPoly& poly() const { return p_; }
  const BivarPoly& px() const { return px_; }
  const BivarPoly& py() const { return py_; }
  const Field& field() const { return p_.field(); }
  int degree() const { return p_.degree(); }
  Attestation attestation() const { return attestation_; }
  const std::string& warning() const { return warning_; }

  bool contains(const Point2& pt) const { return p_.eval(pt.arr()).is_zero(); }

 private:
  BivarPoly p_, px_, py_;
  Attestation attestation_;
  std::string warning_;
};

/// Invertible affine map v -> M v + t.
class AffineMap {
 public:
  AffineMap(std::array<Scalar, 4> m, std::array<Scalar, 2> t);
  static AffineMap identity(const Field& f);

  const std::array<Scalar, 4>& matrix() const { return m_; }
  const std::array<Scalar, 2>& translation() const { return t_; }

  Point2 apply(const Point2& p) const;
  AffineMap inverse() const;
  /// The polynomial cutting out the image curve, P o inverse().
  BivarPoly push_forward(const BivarPoly& p) const;
  bool is_identity() const;

 private:
  std::array<Scalar, 4> m_;  // row-major
  std::array<Scalar, 2> t_;
};

/// Requires `p` on the curve (PreconditionError otherwise).
bool is_smooth_at(const PlaneCurve& c, const Point2& p);

/// Kernel of the gradient, (dP/dy : -dP/dx). Throws SingularPointError.
TangentDirection tangent_direction_at(const PlaneCurve& c, const Point2& p);

struct NormalizedArrangement {
  AffineMap map;
  std::vector<PlaneCurve> curves;
  int attempts = 0;
};

/// One linear map making every curve x-monic with dP/dy not identically
/// zero. Tries the identity first, then seeded maps [[1, t], [u, 1 + t u]]
/// (det 1), at most 32 in total. Throws CharacteristicObstruction when some
/// degree reaches the characteristic and RetryBudgetExhausted when no
/// candidate works.
NormalizedArrangement x_monic_normalize(const std::vector<PlaneCurve>& curves, std::uint64_t seed = 0);

inline constexpr std::uint64_t kScanBound = 499;

/// All base-field points of the curve, lexicographic by raw word. Finite
/// fields only; throws ScanBoundExceeded beyond `scan_bound` elements.
std::vector<Point2> curve_points_Fp(const PlaneCurve& c, std::uint64_t scan_bound = kScanBound);

/// Every element of a finite field in raw-word order.
std::vector<Scalar> field_elements(const Field& f);

}  // namespace tangency
