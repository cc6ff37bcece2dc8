#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <variant>

#include <gmpxx.h>

namespace tangency {

enum class FieldKind : std::uint8_t { Rational, Prime, Char2Ext };

/// Descriptor of the base field: Q, F_p (p < 2^61) or GF(2^k) for k <= 8.
///
/// Finite-field elements are stored as raw 64-bit words: residues in [0, p)
/// for F_p, bit patterns over the basis 1, a, a^2, ... for GF(2^k). The raw
/// word of an element doubles as its enumeration index in [0, q).
class Field {
 public:
  Field() = default;  // Q

  static Field rational() { return Field(); }
  static Field prime(std::uint64_t p);
  static Field char2_ext(unsigned k);

  FieldKind kind() const { return kind_; }
  bool is_rational() const { return kind_ == FieldKind::Rational; }
  bool is_finite() const { return kind_ != FieldKind::Rational; }
  /// 0 for Q.
  std::uint64_t characteristic() const;
  /// Number of elements; 0 for Q.
  std::uint64_t size() const;
  unsigned ext_degree() const { return ext_degree_; }
  std::uint64_t modulus() const { return modulus_; }

  /// "Q", "F_5", "F_2^4".
  std::string name() const;

  // Raw finite-field operations. Inputs must already be reduced.
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t neg(std::uint64_t a) const;
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t inv(std::uint64_t a) const;
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;
  std::uint64_t from_int(std::int64_t v) const;

  bool operator==(const Field&) const = default;

 private:
  FieldKind kind_ = FieldKind::Rational;
  std::uint64_t modulus_ = 0;  // p, or the reduction polynomial of GF(2^k)
  unsigned ext_degree_ = 0;
};

bool is_prime_u64(std::uint64_t n);

/// An exact element of Q, F_p or GF(2^k).
///
/// Values never change after construction. Arithmetic between scalars of
/// different fields throws FieldMismatch instead of coercing.
class Scalar {
 public:
  /// Rational zero.
  Scalar() : value_(mpq_class(0)) {}

  static Scalar zero(const Field& f);
  static Scalar one(const Field& f);
  static Scalar from_int(const Field& f, std::int64_t v);
  static Scalar from_rational(const mpq_class& q);
  /// Rational a/b, or the image of a/b in a finite field.
  static Scalar from_fraction(const Field& f, std::int64_t a, std::int64_t b);
  /// Finite field element from its raw word (reduced modulo p for F_p).
  static Scalar from_raw(const Field& f, std::uint64_t raw);

  const Field& field() const { return field_; }
  bool is_zero() const;
  bool is_one() const;

  std::uint64_t raw() const;                // finite fields only
  const mpq_class& rational() const;        // Q only

  Scalar operator-() const;
  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

  /// Throws NonUnitError on zero.
  Scalar inv() const;
  Scalar pow(std::uint64_t e) const;

  /// Equal field and equal value.
  bool operator==(const Scalar& o) const;

  /// Canonical total order within one field: rationals by value, finite
  /// fields by raw word. Used for direction canonicalization and sorting.
  std::strong_ordering canonical_cmp(const Scalar& o) const;
  bool operator<(const Scalar& o) const { return canonical_cmp(o) < 0; }

  /// Text form used by the polynomial format: "-3/4", "7", "[5]" for
  /// GF(2^k) elements outside the prime subfield.
  std::string to_string() const;

  /// True for negative rationals; finite fields have no sign.
  bool is_negative() const;

 private:
  Scalar(const Field& f, std::uint64_t raw) : field_(f), value_(raw) {}
  explicit Scalar(mpq_class q) : value_(std::move(q)) {}
  void require_same_field(const Scalar& o) const;

  Field field_;
  std::variant<std::uint64_t, mpq_class> value_;
};

/// n! as a field element.
Scalar factorial(const Field& f, unsigned n);

}  // namespace tangency
