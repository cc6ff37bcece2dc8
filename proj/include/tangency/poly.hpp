#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "tangency/errors.hpp"
#include "tangency/field.hpp"

namespace tangency {

/// Graded lexicographic order with x > y > z; `a` sorts before `b` when it is
/// the larger monomial, so a term map iterates from the leading term down.
template <std::size_t N>
struct GrlexGreater {
  bool operator()(const std::array<int, N>& a, const std::array<int, N>& b) const {
    int da = 0, db = 0;
    for (std::size_t i = 0; i < N; ++i) {
      da += a[i];
      db += b[i];
    }
    if (da != db) return da > db;
    return a > b;
  }
};

/// Sparse polynomial in N variables over a Field. Zero coefficients are never
/// stored; the zero polynomial has degree -1.
template <std::size_t N>
class Poly {
 public:
  using Exponents = std::array<int, N>;
  using TermMap = std::map<Exponents, Scalar, GrlexGreater<N>>;

  explicit Poly(const Field& f = Field::rational()) : field_(f) {}

  static Poly constant(const Scalar& c) {
    Poly p(c.field());
    p.add_term(Exponents{}, c);
    return p;
  }

  static Poly variable(const Field& f, std::size_t var) {
    Exponents e{};
    e[var] = 1;
    return monomial(e, Scalar::one(f));
  }

  static Poly monomial(const Exponents& e, const Scalar& c) {
    Poly p(c.field());
    p.add_term(e, c);
    return p;
  }

  const Field& field() const { return field_; }
  const TermMap& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  int degree() const {
    if (terms_.empty()) return -1;
    int d = 0;
    for (int e : terms_.begin()->first) d += e;
    return d;
  }

  int degree_in(std::size_t var) const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
    return d;
  }

  bool is_constant() const { return degree() <= 0; }

  Scalar coeff(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Scalar::zero(field_) : it->second;
  }

  const Exponents& leading_exponents() const {
    require_nonzero();
    return terms_.begin()->first;
  }

  const Scalar& leading_coeff() const {
    require_nonzero();
    return terms_.begin()->second;
  }

  void add_term(const Exponents& e, const Scalar& c) {
    if (!(c.field() == field_)) throw FieldMismatch("term field differs from polynomial field");
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  Poly operator-() const {
    Poly r(field_);
    for (const auto& [e, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), e, -c);
    return r;
  }

  Poly& operator+=(const Poly& o) {
    require_same_field(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }

  Poly& operator-=(const Poly& o) {
    require_same_field(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }

  friend Poly operator*(const Poly& a, const Poly& b) {
    a.require_same_field(b);
    Poly r(a.field_);
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        Exponents e;
        for (std::size_t i = 0; i < N; ++i) e[i] = ea[i] + eb[i];
        r.add_term(e, ca * cb);
      }
    }
    return r;
  }

  Poly scaled(const Scalar& s) const {
    Poly r(field_);
    if (s.is_zero()) return r;
    for (const auto& [e, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), e, c * s);
    return r;
  }

  Poly pow(unsigned k) const {
    Poly r = constant(Scalar::one(field_));
    for (unsigned i = 0; i < k; ++i) r = r * *this;
    return r;
  }

  /// Formal partial derivative in variable `var`.
  Poly partial(std::size_t var) const {
    Poly r(field_);
    for (const auto& [e, c] : terms_) {
      if (e[var] == 0) continue;
      Exponents d = e;
      d[var] -= 1;
      r.add_term(d, c * Scalar::from_int(field_, e[var]));
    }
    return r;
  }

  Scalar eval(const std::array<Scalar, N>& pt) const {
    for (const auto& s : pt) {
      if (!(s.field() == field_)) throw FieldMismatch("evaluation point field differs from polynomial field");
    }
    std::array<std::vector<Scalar>, N> powers;
    for (std::size_t i = 0; i < N; ++i) {
      const int d = std::max(degree_in(i), 0);
      powers[i].reserve(d + 1);
      powers[i].push_back(Scalar::one(field_));
      for (int k = 1; k <= d; ++k) powers[i].push_back(powers[i].back() * pt[i]);
    }
    Scalar acc = Scalar::zero(field_);
    for (const auto& [e, c] : terms_) {
      Scalar t = c;
      for (std::size_t i = 0; i < N; ++i) {
        if (e[i]) t *= powers[i][e[i]];
      }
      acc += t;
    }
    return acc;
  }

  /// Divides by the leading coefficient.
  Poly monic() const {
    if (is_zero()) return *this;
    return scaled(leading_coeff().inv());
  }

  bool operator==(const Poly& o) const { return field_ == o.field_ && terms_ == o.terms_; }

 private:
  void require_nonzero() const {
    if (terms_.empty()) throw PreconditionError("leading term of the zero polynomial");
  }
  void require_same_field(const Poly& o) const {
    if (!(field_ == o.field_)) throw FieldMismatch("polynomial field mismatch");
  }

  Field field_;
  TermMap terms_;
};

using BivarPoly = Poly<2>;
using TrivarPoly = Poly<3>;

/// Parses the `c*x^i*y^j*z^m` text format. Rationals are written `a/b`;
/// GF(2^k) elements outside {0, 1} are written `[w]` with w the bit pattern.
template <std::size_t N>
Poly<N> parse_poly(const std::string& text, const Field& field);

/// Inverse of parse_poly: terms in descending grlex order, `^1` and `1*`
/// elided, e.g. `x - 2*y - y^2`.
template <std::size_t N>
std::string format_poly(const Poly<N>& p);

/// Embeds P(x, y) into k[x, y, z].
TrivarPoly to_trivar(const BivarPoly& p);

/// P(x + dx, y + dy).
BivarPoly translate(const BivarPoly& p, const Scalar& dx, const Scalar& dy);

/// Substitutes x <- a*x + b*y + c and y <- d*x + e*y + f.
BivarPoly substitute_linear(const BivarPoly& p, const std::array<Scalar, 6>& coeffs);

/// True when b = c * a for some nonzero scalar c.
template <std::size_t N>
bool proportional(const Poly<N>& a, const Poly<N>& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  if (a.term_count() != b.term_count()) return false;
  const Scalar ratio = b.leading_coeff() / a.leading_coeff();
  return a.scaled(ratio) == b;
}

}  // namespace tangency
