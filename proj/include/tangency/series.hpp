#pragma once

#include <string>
#include <vector>

#include "tangency/field.hpp"
#include "tangency/poly.hpp"

namespace tangency {

/// a_0 + a_1 x + ... + a_N x^N, known modulo x^(N+1).
class TruncatedSeries {
 public:
  TruncatedSeries(const Field& f, int order);
  TruncatedSeries(const Field& f, std::vector<Scalar> coeffs, int order);

  static TruncatedSeries constant(const Scalar& c, int order);
  /// The series x.
  static TruncatedSeries x(const Field& f, int order);

  const Field& field() const { return field_; }
  int order() const { return order_; }
  const Scalar& operator[](int i) const { return a_[i]; }
  const std::vector<Scalar>& coeffs() const { return a_; }

  bool is_zero() const;
  /// Index of the first nonzero coefficient, or order()+1 when all vanish.
  int valuation() const;

  TruncatedSeries operator-() const;
  TruncatedSeries operator+(const TruncatedSeries& o) const;
  TruncatedSeries operator-(const TruncatedSeries& o) const;
  TruncatedSeries operator*(const TruncatedSeries& o) const;
  TruncatedSeries scaled(const Scalar& s) const;
  bool operator==(const TruncatedSeries& o) const { return order_ == o.order_ && a_ == o.a_; }

  /// Multiplicative inverse; throws NonUnitError when a_0 = 0.
  TruncatedSeries invert() const;
  /// Formal derivative, truncation order N - 1.
  TruncatedSeries derivative() const;
  TruncatedSeries truncated(int order) const;

 private:
  Field field_;
  std::vector<Scalar> a_;
  int order_;
};

/// P(x, s(x)) as a series, for P in k[x, y].
TruncatedSeries substitute_y(const BivarPoly& p, const TruncatedSeries& s);

/// "[a_0, a_1, ...]" using the polynomial coefficient format.
std::string format_coefficients(const std::vector<Scalar>& c);

}  // namespace tangency
