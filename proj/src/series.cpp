#include "tangency/series.hpp"

#include <algorithm>

#include "tangency/errors.hpp"

namespace tangency {

TruncatedSeries::TruncatedSeries(const Field& f, int order)
    : field_(f), a_(order + 1, Scalar::zero(f)), order_(order) {
  if (order < 0) throw PreconditionError("negative truncation order");
}

TruncatedSeries::TruncatedSeries(const Field& f, std::vector<Scalar> coeffs, int order)
    : TruncatedSeries(f, order) {
  for (std::size_t i = 0; i < coeffs.size() && i <= static_cast<std::size_t>(order); ++i) {
    if (!(coeffs[i].field() == f)) throw FieldMismatch("series coefficient field mismatch");
    a_[i] = std::move(coeffs[i]);
  }
}

TruncatedSeries TruncatedSeries::constant(const Scalar& c, int order) {
  TruncatedSeries s(c.field(), order);
  s.a_[0] = c;
  return s;
}

TruncatedSeries TruncatedSeries::x(const Field& f, int order) {
  TruncatedSeries s(f, order);
  if (order >= 1) s.a_[1] = Scalar::one(f);
  return s;
}

bool TruncatedSeries::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](const Scalar& c) { return c.is_zero(); });
}

int TruncatedSeries::valuation() const {
  for (int i = 0; i <= order_; ++i) {
    if (!a_[i].is_zero()) return i;
  }
  return order_ + 1;
}

TruncatedSeries TruncatedSeries::operator-() const {
  TruncatedSeries r(field_, order_);
  for (int i = 0; i <= order_; ++i) r.a_[i] = -a_[i];
  return r;
}

TruncatedSeries TruncatedSeries::operator+(const TruncatedSeries& o) const {
  if (!(field_ == o.field_)) throw FieldMismatch("series field mismatch");
  TruncatedSeries r(field_, std::min(order_, o.order_));
  for (int i = 0; i <= r.order_; ++i) r.a_[i] = a_[i] + o.a_[i];
  return r;
}

TruncatedSeries TruncatedSeries::operator-(const TruncatedSeries& o) const { return *this + (-o); }

TruncatedSeries TruncatedSeries::operator*(const TruncatedSeries& o) const {
  if (!(field_ == o.field_)) throw FieldMismatch("series field mismatch");
  TruncatedSeries r(field_, std::min(order_, o.order_));
  for (int i = 0; i <= r.order_; ++i) {
    if (a_[i].is_zero()) continue;
    for (int j = 0; i + j <= r.order_; ++j) r.a_[i + j] += a_[i] * o.a_[j];
  }
  return r;
}

TruncatedSeries TruncatedSeries::scaled(const Scalar& s) const {
  TruncatedSeries r(field_, order_);
  for (int i = 0; i <= order_; ++i) r.a_[i] = a_[i] * s;
  return r;
}

TruncatedSeries TruncatedSeries::invert() const {
  if (a_[0].is_zero()) throw NonUnitError("series with zero constant term is not a unit");
  TruncatedSeries r(field_, order_);
  const Scalar inv0 = a_[0].inv();
  r.a_[0] = inv0;
  for (int n = 1; n <= order_; ++n) {
    Scalar acc = Scalar::zero(field_);
    for (int k = 1; k <= n; ++k) acc += a_[k] * r.a_[n - k];
    r.a_[n] = -acc * inv0;
  }
  return r;
}

TruncatedSeries TruncatedSeries::derivative() const {
  TruncatedSeries r(field_, std::max(order_ - 1, 0));
  for (int i = 1; i <= order_; ++i) r.a_[i - 1] = a_[i] * Scalar::from_int(field_, i);
  return r;
}

TruncatedSeries TruncatedSeries::truncated(int order) const {
  return TruncatedSeries(field_, std::vector<Scalar>(a_.begin(), a_.begin() + std::min(order, order_) + 1), order);
}

TruncatedSeries substitute_y(const BivarPoly& p, const TruncatedSeries& s) {
  const Field& f = p.field();
  const int n = s.order();
  const int dy = std::max(p.degree_in(1), 0);
  std::vector<TruncatedSeries> pw{TruncatedSeries::constant(Scalar::one(f), n)};
  for (int j = 1; j <= dy; ++j) pw.push_back(pw.back() * s);
  TruncatedSeries r(f, n);
  std::vector<Scalar> acc(n + 1, Scalar::zero(f));
  for (const auto& [e, c] : p.terms()) {
    const auto& q = pw[e[1]];
    for (int k = 0; k + e[0] <= n; ++k) acc[k + e[0]] += c * q[k];
  }
  return TruncatedSeries(f, std::move(acc), n);
}

std::string format_coefficients(const std::vector<Scalar>& c) {
  std::string out = "[";
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) out += ", ";
    out += c[i].to_string();
  }
  return out + "]";
}

}  // namespace tangency
