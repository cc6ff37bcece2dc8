#include "tangency/field.hpp"

#include <array>

#include "tangency/errors.hpp"

namespace tangency {

namespace {

constexpr std::uint64_t kMaxPrime = std::uint64_t{1} << 61;

// Irreducible reduction polynomials for GF(2^k), k = 1..8.
constexpr std::array<std::uint64_t, 9> kChar2Moduli = {
    0, 0b11, 0b111, 0b1011, 0b10011, 0b100101, 0b1000011, 0b10000011, 0b100011011};

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

std::uint64_t gf2_mul(std::uint64_t a, std::uint64_t b, std::uint64_t poly, unsigned k) {
  std::uint64_t r = 0;
  while (b) {
    if (b & 1) r ^= a;
    b >>= 1;
    a <<= 1;
    if (a >> k & 1) a ^= poly;
  }
  return r;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t sp : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % sp == 0) return n == sp;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

Field Field::prime(std::uint64_t p) {
  if (p >= kMaxPrime) throw PreconditionError("prime modulus must be below 2^61");
  if (!is_prime_u64(p)) throw PreconditionError("modulus " + std::to_string(p) + " is not prime");
  Field f;
  f.kind_ = FieldKind::Prime;
  f.modulus_ = p;
  f.ext_degree_ = 1;
  return f;
}

Field Field::char2_ext(unsigned k) {
  if (k < 1 || k > 8) throw PreconditionError("GF(2^k) supported for 1 <= k <= 8");
  Field f;
  f.kind_ = FieldKind::Char2Ext;
  f.modulus_ = kChar2Moduli[k];
  f.ext_degree_ = k;
  return f;
}

std::uint64_t Field::characteristic() const {
  switch (kind_) {
    case FieldKind::Rational: return 0;
    case FieldKind::Prime: return modulus_;
    case FieldKind::Char2Ext: return 2;
  }
  return 0;
}

std::uint64_t Field::size() const {
  switch (kind_) {
    case FieldKind::Rational: return 0;
    case FieldKind::Prime: return modulus_;
    case FieldKind::Char2Ext: return std::uint64_t{1} << ext_degree_;
  }
  return 0;
}

std::string Field::name() const {
  switch (kind_) {
    case FieldKind::Rational: return "Q";
    case FieldKind::Prime: return "F_" + std::to_string(modulus_);
    case FieldKind::Char2Ext: return "F_2^" + std::to_string(ext_degree_);
  }
  return "?";
}

std::uint64_t Field::add(std::uint64_t a, std::uint64_t b) const {
  if (kind_ == FieldKind::Char2Ext) return a ^ b;
  std::uint64_t s = a + b;
  return s >= modulus_ ? s - modulus_ : s;
}

std::uint64_t Field::sub(std::uint64_t a, std::uint64_t b) const {
  if (kind_ == FieldKind::Char2Ext) return a ^ b;
  return a >= b ? a - b : a + modulus_ - b;
}

std::uint64_t Field::neg(std::uint64_t a) const {
  if (kind_ == FieldKind::Char2Ext) return a;
  return a == 0 ? 0 : modulus_ - a;
}

std::uint64_t Field::mul(std::uint64_t a, std::uint64_t b) const {
  if (kind_ == FieldKind::Char2Ext) return gf2_mul(a, b, modulus_, ext_degree_);
  return mulmod(a, b, modulus_);
}

std::uint64_t Field::pow(std::uint64_t a, std::uint64_t e) const {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

std::uint64_t Field::inv(std::uint64_t a) const {
  if (a == 0) throw NonUnitError("inverse of zero in " + name());
  return pow(a, size() - 2);
}

std::uint64_t Field::from_int(std::int64_t v) const {
  if (kind_ == FieldKind::Char2Ext) return static_cast<std::uint64_t>(v) & 1;
  const auto m = static_cast<__int128>(modulus_);
  __int128 r = static_cast<__int128>(v) % m;
  if (r < 0) r += m;
  return static_cast<std::uint64_t>(r);
}

// ---------------------------------------------------------------------------

Scalar Scalar::zero(const Field& f) {
  return f.is_rational() ? Scalar(mpq_class(0)) : Scalar(f, 0);
}

Scalar Scalar::one(const Field& f) {
  return f.is_rational() ? Scalar(mpq_class(1)) : Scalar(f, 1);
}

Scalar Scalar::from_int(const Field& f, std::int64_t v) {
  if (f.is_rational()) return Scalar(mpq_class(static_cast<long>(v)));
  return Scalar(f, f.from_int(v));
}

Scalar Scalar::from_rational(const mpq_class& q) {
  mpq_class c(q);
  c.canonicalize();
  return Scalar(std::move(c));
}

Scalar Scalar::from_fraction(const Field& f, std::int64_t a, std::int64_t b) {
  if (b == 0) throw NonUnitError("zero denominator");
  if (f.is_rational()) {
    mpq_class q(static_cast<long>(a), static_cast<long>(b));
    q.canonicalize();
    return Scalar(std::move(q));
  }
  return from_int(f, a) / from_int(f, b);
}

Scalar Scalar::from_raw(const Field& f, std::uint64_t raw) {
  if (!f.is_finite()) throw PreconditionError("raw words exist only for finite fields");
  if (f.kind() == FieldKind::Prime) return Scalar(f, raw % f.modulus());
  if (raw >= f.size()) throw PreconditionError("raw word outside GF(2^k)");
  return Scalar(f, raw);
}

bool Scalar::is_zero() const {
  if (field_.is_rational()) return sgn(std::get<mpq_class>(value_)) == 0;
  return std::get<std::uint64_t>(value_) == 0;
}

bool Scalar::is_one() const {
  if (field_.is_rational()) return std::get<mpq_class>(value_) == 1;
  return std::get<std::uint64_t>(value_) == 1;
}

bool Scalar::is_negative() const {
  return field_.is_rational() && sgn(std::get<mpq_class>(value_)) < 0;
}

std::uint64_t Scalar::raw() const {
  if (!field_.is_finite()) throw PreconditionError("raw() on a rational scalar");
  return std::get<std::uint64_t>(value_);
}

const mpq_class& Scalar::rational() const {
  if (!field_.is_rational()) throw PreconditionError("rational() on a finite-field scalar");
  return std::get<mpq_class>(value_);
}

void Scalar::require_same_field(const Scalar& o) const {
  if (!(field_ == o.field_)) {
    throw FieldMismatch("scalar field mismatch: " + field_.name() + " vs " + o.field_.name());
  }
}

Scalar Scalar::operator-() const {
  if (field_.is_rational()) return Scalar(mpq_class(-std::get<mpq_class>(value_)));
  return Scalar(field_, field_.neg(std::get<std::uint64_t>(value_)));
}

Scalar Scalar::operator+(const Scalar& o) const {
  require_same_field(o);
  if (field_.is_rational()) return Scalar(mpq_class(std::get<mpq_class>(value_) + std::get<mpq_class>(o.value_)));
  return Scalar(field_, field_.add(std::get<std::uint64_t>(value_), std::get<std::uint64_t>(o.value_)));
}

Scalar Scalar::operator-(const Scalar& o) const {
  require_same_field(o);
  if (field_.is_rational()) return Scalar(mpq_class(std::get<mpq_class>(value_) - std::get<mpq_class>(o.value_)));
  return Scalar(field_, field_.sub(std::get<std::uint64_t>(value_), std::get<std::uint64_t>(o.value_)));
}

Scalar Scalar::operator*(const Scalar& o) const {
  require_same_field(o);
  if (field_.is_rational()) return Scalar(mpq_class(std::get<mpq_class>(value_) * std::get<mpq_class>(o.value_)));
  return Scalar(field_, field_.mul(std::get<std::uint64_t>(value_), std::get<std::uint64_t>(o.value_)));
}

Scalar Scalar::operator/(const Scalar& o) const {
  require_same_field(o);
  return *this * o.inv();
}

Scalar Scalar::inv() const {
  if (is_zero()) throw NonUnitError("inverse of zero");
  if (field_.is_rational()) return Scalar(mpq_class(1 / std::get<mpq_class>(value_)));
  return Scalar(field_, field_.inv(std::get<std::uint64_t>(value_)));
}

Scalar Scalar::pow(std::uint64_t e) const {
  Scalar r = one(field_);
  Scalar b = *this;
  while (e) {
    if (e & 1) r *= b;
    e >>= 1;
    if (e) b *= b;
  }
  return r;
}

bool Scalar::operator==(const Scalar& o) const {
  if (!(field_ == o.field_)) return false;
  if (field_.is_rational()) return std::get<mpq_class>(value_) == std::get<mpq_class>(o.value_);
  return std::get<std::uint64_t>(value_) == std::get<std::uint64_t>(o.value_);
}

std::strong_ordering Scalar::canonical_cmp(const Scalar& o) const {
  require_same_field(o);
  if (field_.is_rational()) {
    const int c = cmp(std::get<mpq_class>(value_), std::get<mpq_class>(o.value_));
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }
  return std::get<std::uint64_t>(value_) <=> std::get<std::uint64_t>(o.value_);
}

std::string Scalar::to_string() const {
  switch (field_.kind()) {
    case FieldKind::Rational: return std::get<mpq_class>(value_).get_str();
    case FieldKind::Prime: return std::to_string(std::get<std::uint64_t>(value_));
    case FieldKind::Char2Ext: {
      const auto v = std::get<std::uint64_t>(value_);
      if (v <= 1) return std::to_string(v);
      return "[" + std::to_string(v) + "]";
    }
  }
  return "?";
}

Scalar factorial(const Field& f, unsigned n) {
  Scalar r = Scalar::one(f);
  for (unsigned i = 2; i <= n; ++i) r *= Scalar::from_int(f, i);
  return r;
}

}  // namespace tangency
