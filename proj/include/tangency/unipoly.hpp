#pragma once

#include <optional>
#include <vector>

#include "tangency/field.hpp"

namespace tangency {

/// Dense univariate polynomial c[0] + c[1] t + ... over a Field, with no
/// trailing zero coefficients.
class UniPoly {
 public:
  explicit UniPoly(const Field& f = Field::rational()) : field_(f) {}
  UniPoly(const Field& f, std::vector<Scalar> coeffs);

  static UniPoly constant(const Scalar& c);
  /// The monomial t.
  static UniPoly t(const Field& f);

  const Field& field() const { return field_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Scalar>& coeffs() const { return c_; }
  Scalar coeff(int i) const;
  const Scalar& lc() const;

  UniPoly operator-() const;
  UniPoly operator+(const UniPoly& o) const;
  UniPoly operator-(const UniPoly& o) const;
  UniPoly operator*(const UniPoly& o) const;
  UniPoly scaled(const Scalar& s) const;
  bool operator==(const UniPoly& o) const { return field_ == o.field_ && c_ == o.c_; }

  /// Euclidean division over the field; throws NonUnitError on division by 0.
  std::pair<UniPoly, UniPoly> divrem(const UniPoly& d) const;
  /// Throws InvariantBreach when the division leaves a remainder.
  UniPoly exact_div(const UniPoly& d) const;

  UniPoly monic() const;
  UniPoly derivative() const;
  Scalar eval(const Scalar& v) const;

 private:
  void trim();
  Field field_;
  std::vector<Scalar> c_;
};

/// Monic gcd; gcd(0, 0) = 0.
UniPoly gcd(UniPoly a, UniPoly b);

/// Distinct roots lying in the base field, sorted canonically.
///
/// Finite fields are searched exhaustively (field size at most 2^20). Over Q
/// the rational-root theorem is applied to the primitive integer form; when a
/// coefficient is too large to enumerate its divisors the result is nullopt
/// ("unresolved") rather than a possibly incomplete list.
std::optional<std::vector<Scalar>> roots_in_base_field(const UniPoly& p);

}  // namespace tangency
