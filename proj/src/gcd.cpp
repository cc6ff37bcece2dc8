#include "tangency/gcd.hpp"

#include <utility>

namespace tangency {

namespace {

using YPoly = std::vector<UniPoly>;  // coefficient of y^j at index j

void trim(YPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

BivarPoly from_y_coefficients(const YPoly& p, const Field& f) {
  BivarPoly r(f);
  for (std::size_t j = 0; j < p.size(); ++j) {
    const auto& c = p[j].coeffs();
    for (std::size_t i = 0; i < c.size(); ++i) r.add_term({static_cast<int>(i), static_cast<int>(j)}, c[i]);
  }
  return r;
}

UniPoly content(const YPoly& p, const Field& f) {
  UniPoly g(f);
  for (const auto& c : p) {
    g = gcd(g, c);
    if (g.degree() == 0) break;
  }
  return g;
}

YPoly primitive_part(const YPoly& p, const UniPoly& c) {
  YPoly r;
  r.reserve(p.size());
  for (const auto& coef : p) r.push_back(coef.exact_div(c));
  return r;
}

// Sparse pseudo-remainder of a by b in k[x][y]; the result is only used up
// to a k[x] factor.
YPoly pseudo_remainder(YPoly a, const YPoly& b) {
  const std::size_t n = b.size() - 1;
  const UniPoly& lcb = b.back();
  while (!a.empty() && a.size() - 1 >= n) {
    const std::size_t shift = a.size() - 1 - n;
    const UniPoly lead = a.back();
    for (auto& c : a) c = c * lcb;
    for (std::size_t j = 0; j <= n; ++j) a[j + shift] = a[j + shift] - lead * b[j];
    trim(a);
  }
  return a;
}

}  // namespace

std::vector<UniPoly> y_coefficients(const BivarPoly& p) {
  const Field& f = p.field();
  const int dy = p.degree_in(1);
  const int dx = p.degree_in(0);
  if (dy < 0) return {};
  std::vector<std::vector<Scalar>> dense(dy + 1, std::vector<Scalar>(dx + 1, Scalar::zero(f)));
  for (const auto& [e, c] : p.terms()) dense[e[1]][e[0]] = c;
  YPoly r;
  r.reserve(dense.size());
  for (auto& row : dense) r.emplace_back(f, std::move(row));
  return r;
}

BivarPoly normalize_unit(const BivarPoly& p) {
  if (p.is_zero()) return p;
  const Field& f = p.field();
  if (f.is_finite()) return p.monic();
  mpz_class den = 1, num = 0;
  for (const auto& [e, c] : p.terms()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.rational().get_den_mpz_t());
  for (const auto& [e, c] : p.terms()) {
    const mpz_class v = mpq_class(c.rational() * den).get_num();
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), v.get_mpz_t());
  }
  mpq_class scale(den, num);
  if (p.leading_coeff().is_negative()) scale = -scale;
  return p.scaled(Scalar::from_rational(scale));
}

BivarPoly poly_gcd(const BivarPoly& a, const BivarPoly& b) {
  if (!(a.field() == b.field())) throw FieldMismatch("poly_gcd field mismatch");
  if (a.is_zero() && b.is_zero()) throw PreconditionError("gcd of two zero polynomials");
  const Field& f = a.field();
  if (a.is_zero()) return normalize_unit(b);
  if (b.is_zero()) return normalize_unit(a);
  YPoly pa = y_coefficients(a), pb = y_coefficients(b);
  if (pa.size() < pb.size()) std::swap(pa, pb);
  const UniPoly ca = content(pa, f), cb = content(pb, f);
  const UniPoly c = gcd(ca, cb);
  pa = primitive_part(pa, ca);
  pb = primitive_part(pb, cb);
  while (pb.size() > 1) {
    YPoly r = pseudo_remainder(pa, pb);
    pa = std::move(pb);
    if (r.empty()) {
      pb.clear();
      break;
    }
    pb = primitive_part(r, content(r, f));
  }
  // pb empty: pa is the primitive gcd. pb a nonzero constant in y: coprime.
  YPoly g = pb.empty() ? pa : YPoly{UniPoly::constant(Scalar::one(f))};
  for (auto& coef : g) coef = coef * c;
  return normalize_unit(from_y_coefficients(g, f));
}

std::optional<BivarPoly> try_divide(const BivarPoly& a, const BivarPoly& b) {
  if (b.is_zero()) throw NonUnitError("division by the zero polynomial");
  const Field& f = a.field();
  BivarPoly q(f), r = a;
  const auto& lb = b.leading_exponents();
  const Scalar inv_lc = b.leading_coeff().inv();
  while (!r.is_zero()) {
    const auto& lr = r.leading_exponents();
    if (lr[0] < lb[0] || lr[1] < lb[1]) return std::nullopt;
    const BivarPoly t = BivarPoly::monomial({lr[0] - lb[0], lr[1] - lb[1]}, r.leading_coeff() * inv_lc);
    q += t;
    r -= t * b;
  }
  return q;
}

BivarPoly exact_divide(const BivarPoly& a, const BivarPoly& b) {
  auto q = try_divide(a, b);
  if (!q) throw InvariantBreach("inexact bivariate division");
  return *std::move(q);
}

UniPoly specialize(const BivarPoly& p, std::size_t var, const Scalar& value) {
  const Field& f = p.field();
  const std::size_t other = 1 - var;
  const int d = std::max(p.degree_in(other), 0);
  std::vector<Scalar> c(d + 1, Scalar::zero(f));
  const int dv = std::max(p.degree_in(var), 0);
  std::vector<Scalar> pw{Scalar::one(f)};
  for (int i = 1; i <= dv; ++i) pw.push_back(pw.back() * value);
  for (const auto& [e, coef] : p.terms()) c[e[other]] += coef * pw[e[var]];
  return UniPoly(f, std::move(c));
}

UniPoly resultant_y(const BivarPoly& a, const BivarPoly& b) {
  if (!(a.field() == b.field())) throw FieldMismatch("resultant field mismatch");
  const Field& f = a.field();
  const YPoly pa = y_coefficients(a), pb = y_coefficients(b);
  if (pa.size() < 2 || pb.size() < 2) throw PreconditionError("resultant_y needs positive y-degree");
  const std::size_t m = pa.size() - 1, n = pb.size() - 1, size = m + n;
  std::vector<std::vector<UniPoly>> mat(size, std::vector<UniPoly>(size, UniPoly(f)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k <= m; ++k) mat[i][i + k] = pa[m - k];
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = 0; k <= n; ++k) mat[n + i][i + k] = pb[n - k];
  }
  bool negate = false;
  UniPoly prev = UniPoly::constant(Scalar::one(f));
  for (std::size_t k = 0; k + 1 < size; ++k) {
    if (mat[k][k].is_zero()) {
      std::size_t swap_row = k + 1;
      while (swap_row < size && mat[swap_row][k].is_zero()) ++swap_row;
      if (swap_row == size) return UniPoly(f);
      std::swap(mat[k], mat[swap_row]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < size; ++i) {
      for (std::size_t j = k + 1; j < size; ++j) {
        mat[i][j] = (mat[i][j] * mat[k][k] - mat[i][k] * mat[k][j]).exact_div(prev);
      }
      mat[i][k] = UniPoly(f);
    }
    prev = mat[k][k];
  }
  UniPoly det = mat[size - 1][size - 1];
  return negate ? -det : det;
}

RationalFunc::RationalFunc(const Field& f) : num_(f), den_(BivarPoly::constant(Scalar::one(f))) {}

RationalFunc::RationalFunc(const BivarPoly& num, const BivarPoly& den) : num_(num), den_(den) {
  if (den.is_zero()) throw NonUnitError("rational function with zero denominator");
  if (!(num.field() == den.field())) throw FieldMismatch("rational function field mismatch");
  if (num_.is_zero()) {
    den_ = BivarPoly::constant(Scalar::one(den.field()));
    return;
  }
  const BivarPoly g = poly_gcd(num_, den_);
  if (g.degree() > 0) {
    num_ = exact_divide(num_, g);
    den_ = exact_divide(den_, g);
  }
  canonicalize_den();
}

RationalFunc RationalFunc::from_reduced(const BivarPoly& num, const BivarPoly& den) {
  if (den.is_zero()) throw NonUnitError("rational function with zero denominator");
  RationalFunc r(num.field());
  r.num_ = num;
  r.den_ = den;
  if (num.is_zero()) {
    r.den_ = BivarPoly::constant(Scalar::one(num.field()));
    return r;
  }
  r.canonicalize_den();
  return r;
}

void RationalFunc::canonicalize_den() {
  const Scalar inv = den_.leading_coeff().inv();
  num_ = num_.scaled(inv);
  den_ = den_.scaled(inv);
}

Scalar RationalFunc::eval(const std::array<Scalar, 2>& pt) const {
  const Scalar d = den_.eval(pt);
  if (d.is_zero()) throw BadPointError("denominator vanishes at the evaluation point");
  return num_.eval(pt) / d;
}

std::string format_rational_func(const RationalFunc& f) {
  if (f.den().is_constant()) return format_poly(f.num());
  return "(" + format_poly(f.num()) + ")/(" + format_poly(f.den()) + ")";
}

}  // namespace tangency
