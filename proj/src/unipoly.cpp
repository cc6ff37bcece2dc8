#include "tangency/unipoly.hpp"

#include <algorithm>

#include "tangency/errors.hpp"

namespace tangency {

UniPoly::UniPoly(const Field& f, std::vector<Scalar> coeffs) : field_(f), c_(std::move(coeffs)) {
  for (const auto& c : c_) {
    if (!(c.field() == field_)) throw FieldMismatch("UniPoly coefficient field mismatch");
  }
  trim();
}

UniPoly UniPoly::constant(const Scalar& c) { return UniPoly(c.field(), {c}); }

UniPoly UniPoly::t(const Field& f) { return UniPoly(f, {Scalar::zero(f), Scalar::one(f)}); }

void UniPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Scalar UniPoly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return Scalar::zero(field_);
  return c_[i];
}

const Scalar& UniPoly::lc() const {
  if (c_.empty()) throw PreconditionError("leading coefficient of the zero polynomial");
  return c_.back();
}

UniPoly UniPoly::operator-() const {
  UniPoly r(field_);
  r.c_.reserve(c_.size());
  for (const auto& c : c_) r.c_.push_back(-c);
  return r;
}

UniPoly UniPoly::operator+(const UniPoly& o) const {
  if (!(field_ == o.field_)) throw FieldMismatch("UniPoly field mismatch");
  UniPoly r(field_);
  const std::size_t n = std::max(c_.size(), o.c_.size());
  r.c_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) r.c_.push_back(coeff(i) + o.coeff(i));
  r.trim();
  return r;
}

UniPoly UniPoly::operator-(const UniPoly& o) const { return *this + (-o); }

UniPoly UniPoly::operator*(const UniPoly& o) const {
  if (!(field_ == o.field_)) throw FieldMismatch("UniPoly field mismatch");
  UniPoly r(field_);
  if (is_zero() || o.is_zero()) return r;
  r.c_.assign(c_.size() + o.c_.size() - 1, Scalar::zero(field_));
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) r.c_[i + j] += c_[i] * o.c_[j];
  }
  r.trim();
  return r;
}

UniPoly UniPoly::scaled(const Scalar& s) const {
  UniPoly r(field_);
  if (s.is_zero()) return r;
  r.c_.reserve(c_.size());
  for (const auto& c : c_) r.c_.push_back(c * s);
  return r;
}

std::pair<UniPoly, UniPoly> UniPoly::divrem(const UniPoly& d) const {
  if (d.is_zero()) throw NonUnitError("polynomial division by zero");
  UniPoly q(field_), r = *this;
  if (r.degree() < d.degree()) return {q, r};
  const Scalar inv_lc = d.lc().inv();
  q.c_.assign(r.degree() - d.degree() + 1, Scalar::zero(field_));
  while (!r.is_zero() && r.degree() >= d.degree()) {
    const int shift = r.degree() - d.degree();
    const Scalar f = r.lc() * inv_lc;
    q.c_[shift] = f;
    for (int i = 0; i <= d.degree(); ++i) r.c_[i + shift] -= f * d.c_[i];
    r.trim();
  }
  q.trim();
  return {q, r};
}

UniPoly UniPoly::exact_div(const UniPoly& d) const {
  auto [q, r] = divrem(d);
  if (!r.is_zero()) throw InvariantBreach("inexact univariate division");
  return q;
}

UniPoly UniPoly::monic() const {
  if (is_zero()) return *this;
  return scaled(lc().inv());
}

UniPoly UniPoly::derivative() const {
  UniPoly r(field_);
  for (std::size_t i = 1; i < c_.size(); ++i) r.c_.push_back(c_[i] * Scalar::from_int(field_, static_cast<std::int64_t>(i)));
  r.trim();
  return r;
}

Scalar UniPoly::eval(const Scalar& v) const {
  Scalar acc = Scalar::zero(field_);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * v + *it;
  return acc;
}

UniPoly gcd(UniPoly a, UniPoly b) {
  while (!b.is_zero()) {
    UniPoly r = a.divrem(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

namespace {

constexpr unsigned long kTrialDivisionLimit = 1000000;
constexpr std::size_t kMaxRootCandidates = 400000;

// Positive divisors of |n| (n != 0), or nullopt when |n| cannot be factored
// by trial division plus a primality test on the cofactor.
std::optional<std::vector<mpz_class>> divisors(const mpz_class& n) {
  mpz_class m = abs(n);
  std::vector<std::pair<mpz_class, int>> factors;
  for (unsigned long d = 2; d <= kTrialDivisionLimit && m > 1; ++d) {
    if (mpz_divisible_ui_p(m.get_mpz_t(), d)) {
      int e = 0;
      while (mpz_divisible_ui_p(m.get_mpz_t(), d)) {
        m /= d;
        ++e;
      }
      factors.emplace_back(mpz_class(d), e);
    }
    if (mpz_class(d) * d > m) break;
  }
  if (m > 1) {
    if (m > mpz_class(kTrialDivisionLimit) * kTrialDivisionLimit && mpz_probab_prime_p(m.get_mpz_t(), 30) == 0) {
      return std::nullopt;
    }
    factors.emplace_back(m, 1);
  }
  std::vector<mpz_class> divs{1};
  for (const auto& [p, e] : factors) {
    const std::size_t base = divs.size();
    mpz_class pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
    }
    if (divs.size() > kMaxRootCandidates) return std::nullopt;
  }
  return divs;
}

// Primitive integer coefficients of a rational polynomial.
std::vector<mpz_class> integer_form(const UniPoly& p) {
  mpz_class lcm_den = 1;
  for (const auto& c : p.coeffs()) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.rational().get_den_mpz_t());
  std::vector<mpz_class> a;
  mpz_class g = 0;
  for (const auto& c : p.coeffs()) {
    mpq_class v = c.rational() * lcm_den;
    a.push_back(v.get_num());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.back().get_mpz_t());
  }
  if (g != 0) {
    for (auto& v : a) v /= g;
  }
  return a;
}

// s^n * p(r/s) for integer coefficients a.
mpz_class homogeneous_eval(const std::vector<mpz_class>& a, const mpz_class& r, const mpz_class& s) {
  mpz_class acc = 0, spow = 1;
  // Horner on the homogenized form: sum a_i r^i s^(n-i).
  std::vector<mpz_class> spows(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    spows[i] = spow;
    spow *= s;
  }
  mpz_class rpow = 1;
  const std::size_t n = a.size() - 1;
  for (std::size_t i = 0; i <= n; ++i) {
    acc += a[i] * rpow * spows[n - i];
    rpow *= r;
  }
  return acc;
}

std::optional<std::vector<Scalar>> rational_roots(const UniPoly& p) {
  std::vector<Scalar> roots;
  if (p.degree() <= 0) return roots;
  std::vector<mpz_class> a = integer_form(p);
  // Factor out t^k.
  std::size_t low = 0;
  while (low < a.size() && a[low] == 0) ++low;
  if (low > 0) {
    roots.push_back(Scalar::zero(Field::rational()));
    a.erase(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(low));
  }
  const std::size_t n = a.size() - 1;
  if (n == 0) return roots;
  if (n == 1) {
    roots.push_back(Scalar::from_rational(mpq_class(-a[0], a[1])));
  } else if (n == 2) {
    const mpz_class disc = a[1] * a[1] - 4 * a[2] * a[0];
    if (disc >= 0 && mpz_perfect_square_p(disc.get_mpz_t())) {
      const mpz_class sq = sqrt(disc);
      roots.push_back(Scalar::from_rational(mpq_class(-a[1] + sq, 2 * a[2])));
      if (sq != 0) roots.push_back(Scalar::from_rational(mpq_class(-a[1] - sq, 2 * a[2])));
    }
  } else {
    auto num_divs = divisors(a[0]);
    auto den_divs = divisors(a[n]);
    if (!num_divs || !den_divs) return std::nullopt;
    if (num_divs->size() * den_divs->size() > kMaxRootCandidates) return std::nullopt;
    for (const auto& r : *num_divs) {
      for (const auto& s : *den_divs) {
        if (gcd(r, s) != 1) continue;
        for (int sign : {1, -1}) {
          const mpz_class rr = sign * r;
          if (homogeneous_eval(a, rr, s) == 0) roots.push_back(Scalar::from_rational(mpq_class(rr, s)));
        }
      }
    }
  }
  return roots;
}

}  // namespace

std::optional<std::vector<Scalar>> roots_in_base_field(const UniPoly& p) {
  if (p.is_zero()) throw PreconditionError("roots of the zero polynomial");
  std::vector<Scalar> roots;
  const Field& f = p.field();
  if (f.is_finite()) {
    if (f.size() > (std::uint64_t{1} << 20)) throw ScanBoundExceeded("root search over a field larger than 2^20");
    if (p.degree() <= 0) return roots;
    for (std::uint64_t w = 0; w < f.size(); ++w) {
      const Scalar v = Scalar::from_raw(f, w);
      if (p.eval(v).is_zero()) roots.push_back(v);
    }
    return roots;
  }
  auto r = rational_roots(p);
  if (!r) return std::nullopt;
  std::sort(r->begin(), r->end());
  r->erase(std::unique(r->begin(), r->end()), r->end());
  return r;
}

}  // namespace tangency
