#pragma once

#include <optional>
#include <vector>

#include "tangency/poly.hpp"
#include "tangency/unipoly.hpp"

namespace tangency {

/// Canonical associate: over Q integer coefficients with content 1 and a
/// positive grlex-leading coefficient; over a finite field, monic.
BivarPoly normalize_unit(const BivarPoly& p);

/// Normalized gcd in k[x, y]. Throws PreconditionError when both are zero.
BivarPoly poly_gcd(const BivarPoly& a, const BivarPoly& b);

/// a / b when b divides a; throws InvariantBreach otherwise.
BivarPoly exact_divide(const BivarPoly& a, const BivarPoly& b);

/// a / b, or nullopt when b does not divide a.
std::optional<BivarPoly> try_divide(const BivarPoly& a, const BivarPoly& b);

/// P viewed in k[x][y]: entry j is the coefficient of y^j as a polynomial in x.
std::vector<UniPoly> y_coefficients(const BivarPoly& p);

/// P(x0, y) as a polynomial in y (resp. P(x, y0) in x when var = 1).
UniPoly specialize(const BivarPoly& p, std::size_t var, const Scalar& value);

/// Res_y(a, b) as a polynomial in x, via a fraction-free determinant of the
/// Sylvester matrix. Both inputs must have positive y-degree.
UniPoly resultant_y(const BivarPoly& a, const BivarPoly& b);

/// num / den in lowest terms, den normalized to be grlex-monic.
class RationalFunc {
 public:
  explicit RationalFunc(const Field& f = Field::rational());
  /// Reduces; throws NonUnitError if den is zero.
  RationalFunc(const BivarPoly& num, const BivarPoly& den);
  /// Skips the gcd: the caller guarantees the fraction is already reduced.
  static RationalFunc from_reduced(const BivarPoly& num, const BivarPoly& den);

  const BivarPoly& num() const { return num_; }
  const BivarPoly& den() const { return den_; }
  const Field& field() const { return num_.field(); }
  bool is_zero() const { return num_.is_zero(); }

  /// Throws BadPointError when the denominator vanishes at the point.
  Scalar eval(const std::array<Scalar, 2>& pt) const;

  bool operator==(const RationalFunc& o) const { return num_ == o.num_ && den_ == o.den_; }

 private:
  void canonicalize_den();
  BivarPoly num_, den_;
};

std::string format_rational_func(const RationalFunc& f);

}  // namespace tangency
