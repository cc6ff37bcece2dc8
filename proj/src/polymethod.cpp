#include "tangency/polymethod.hpp"

#include <omp.h>

#include <algorithm>
#include <exception>
#include <limits>

#include <gmpxx.h>

namespace tangency {

namespace {

using Mono = std::array<int, 3>;

// Degree-d monomials in ascending grlex order (x > y > z).
std::vector<Mono> monomials_of_degree(int d) {
  std::vector<Mono> out;
  for (int i = 0; i <= d; ++i) {
    for (int j = 0; j <= d - i; ++j) out.push_back({i, j, d - i - j});
  }
  return out;
}

std::int64_t monomial_count(int d) {
  const std::int64_t n = d + 3;
  return n * (n - 1) * (n - 2) / 6;
}

Field common_field(const std::vector<SpacePoint>& points) {
  const Field f = points.front().x.field();
  for (const auto& p : points) {
    for (const auto& s : p.arr()) {
      if (!(s.field() == f)) throw FieldMismatch("sample points span several fields");
    }
  }
  return f;
}

struct Relation {
  std::size_t column;
  std::vector<std::uint64_t> coeffs;  // raw words over columns 0 .. column
};

// Column echelon kept in reduced form on its pivot rows, with each basis
// vector's expression in the original columns. Raw-word field operations
// only, so it serves every finite field; this is the serial reference.
class SerialEchelon {
 public:
  SerialEchelon(const Field& f, std::size_t rows) : f_(f), rows_(rows) {}

  std::vector<Relation> add(const std::vector<std::vector<std::uint64_t>>& cols) {
    std::vector<Relation> rel;
    for (const auto& v : cols) {
      const std::size_t c = ncols_++;
      std::vector<std::uint64_t> r = v, t(c + 1, 0);
      t[c] = 1;
      for (std::size_t k = 0; k < basis_.size(); ++k) {
        const std::uint64_t coef = r[pivot_[k]];
        if (coef == 0) continue;
        axpy(r, coef, basis_[k]);
        axpy(t, coef, trans_[k]);
      }
      const auto nz = std::find_if(r.begin(), r.end(), [](std::uint64_t w) { return w != 0; });
      if (nz == r.end()) {
        rel.push_back({c, std::move(t)});
        continue;
      }
      const std::size_t piv = static_cast<std::size_t>(nz - r.begin());
      const std::uint64_t inv = f_.inv(r[piv]);
      for (auto& w : r) w = f_.mul(w, inv);
      for (auto& w : t) w = f_.mul(w, inv);
      for (std::size_t k = 0; k < basis_.size(); ++k) {
        const std::uint64_t coef = basis_[k][piv];
        if (coef == 0) continue;
        axpy(basis_[k], coef, r);
        trans_[k].resize(t.size(), 0);
        axpy(trans_[k], coef, t);
      }
      basis_.push_back(std::move(r));
      trans_.push_back(std::move(t));
      pivot_.push_back(piv);
    }
    return rel;
  }

 private:
  // a -= c * b over the prefix b covers
  void axpy(std::vector<std::uint64_t>& a, std::uint64_t c, const std::vector<std::uint64_t>& b) const {
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (b[i]) a[i] = f_.sub(a[i], f_.mul(c, b[i]));
    }
  }

  Field f_;
  std::size_t rows_;
  std::size_t ncols_ = 0;
  std::vector<std::vector<std::uint64_t>> basis_, trans_;
  std::vector<std::size_t> pivot_;
};

// Same echelon over F_p, p < 2^32. Each batch of columns is reduced against
// the existing basis in parallel with 64-bit accumulation and a single
// modular reduction per entry, then inserted sequentially; old basis vectors
// are brought back to reduced form once per batch.
class LazyEchelon {
 public:
  LazyEchelon(const Field& f, std::size_t rows, int threads, int batch)
      : f_(f), p_(f.modulus()), rows_(rows), threads_(threads), batch_(std::max(batch, 1)) {
    const std::uint64_t sq = (p_ - 1) * (p_ - 1);
    flush_every_ = sq == 0 ? std::numeric_limits<std::uint64_t>::max() : std::max<std::uint64_t>(1, (std::numeric_limits<std::uint64_t>::max() - p_) / sq - 1);
  }

  std::vector<Relation> add(const std::vector<std::vector<std::uint64_t>>& cols) {
    std::vector<Relation> rel;
    for (std::size_t start = 0; start < cols.size(); start += static_cast<std::size_t>(batch_)) {
      const std::size_t end = std::min(cols.size(), start + static_cast<std::size_t>(batch_));
      insert_batch(cols, start, end, rel);
    }
    return rel;
  }

 private:
  struct Vec {
    std::vector<std::uint32_t> b, t;
    std::size_t pivot = 0;
  };

  // acc[i] += sum_k coef_k * src_k[i], reduced mod p at the end
  template <typename Coefs>
  void lazy_combine(std::vector<std::uint64_t>& acc, const Coefs& terms, bool trans_part) const {
    std::uint64_t pending = 0;
    for (const auto& [coef, vec] : terms) {
      const auto& src = trans_part ? vec->t : vec->b;
      const std::size_t off = trans_part ? rows_ : 0;
      const std::uint64_t m = coef;
      std::uint64_t* a = acc.data() + off;
      const std::uint32_t* s = src.data();
      const std::size_t len = src.size();
      for (std::size_t i = 0; i < len; ++i) a[i] += m * s[i];
      if (++pending == flush_every_) {
        for (auto& w : acc) w %= p_;
        pending = 0;
      }
    }
  }

  // v minus its projection onto the basis, and the matching transform
  Vec reduce(const std::vector<std::uint64_t>& v, std::size_t col, std::size_t width) const {
    std::vector<std::uint64_t> acc(rows_ + width, 0);
    for (std::size_t i = 0; i < rows_; ++i) acc[i] = v[i];
    std::vector<std::pair<std::uint64_t, const Vec*>> terms;
    for (const auto& bv : basis_) {
      const std::uint64_t coef = v[bv.pivot];
      if (coef != 0) terms.emplace_back(p_ - coef, &bv);
    }
    lazy_combine(acc, terms, false);
    lazy_combine(acc, terms, true);
    Vec out;
    out.b.resize(rows_);
    out.t.resize(width);
    for (std::size_t i = 0; i < rows_; ++i) out.b[i] = static_cast<std::uint32_t>(acc[i] % p_);
    for (std::size_t i = 0; i < width; ++i) out.t[i] = static_cast<std::uint32_t>(acc[rows_ + i] % p_);
    out.t[col] = 1;
    return out;
  }

  void sub_scaled(std::vector<std::uint32_t>& a, std::uint64_t c, const std::vector<std::uint32_t>& b) const {
    const std::uint64_t m = p_ - c;
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = static_cast<std::uint32_t>((a[i] + m * b[i]) % p_);
  }

  void insert_batch(const std::vector<std::vector<std::uint64_t>>& cols, std::size_t start, std::size_t end,
                    std::vector<Relation>& rel) {
    const std::size_t width = ncols_ + (end - start);
    const int count = static_cast<int>(end - start);
    std::vector<Vec> reduced(count);
    std::vector<std::exception_ptr> errors(count);
    const int threads = threads_ <= 0 ? omp_get_max_threads() : threads_;
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (int j = 0; j < count; ++j) {
      try {
        reduced[j] = reduce(cols[start + j], ncols_ + j, width);
      } catch (...) {
        errors[j] = std::current_exception();
      }
    }
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }

    std::vector<Vec> fresh;
    for (int j = 0; j < count; ++j) {
      Vec& r = reduced[j];
      for (const auto& nb : fresh) {
        const std::uint64_t coef = r.b[nb.pivot];
        if (coef == 0) continue;
        sub_scaled(r.b, coef, nb.b);
        sub_scaled(r.t, coef, nb.t);
      }
      const auto nz = std::find_if(r.b.begin(), r.b.end(), [](std::uint32_t w) { return w != 0; });
      if (nz == r.b.end()) {
        rel.push_back({ncols_ + j, std::vector<std::uint64_t>(r.t.begin(), r.t.begin() + static_cast<std::ptrdiff_t>(ncols_ + j + 1))});
        continue;
      }
      r.pivot = static_cast<std::size_t>(nz - r.b.begin());
      const std::uint64_t inv = f_.inv(r.b[r.pivot]);
      for (auto& w : r.b) w = static_cast<std::uint32_t>(w * inv % p_);
      for (auto& w : r.t) w = static_cast<std::uint32_t>(w * inv % p_);
      for (auto& nb : fresh) {
        const std::uint64_t coef = nb.b[r.pivot];
        if (coef == 0) continue;
        sub_scaled(nb.b, coef, r.b);
        sub_scaled(nb.t, coef, r.t);
      }
      fresh.push_back(std::move(r));
    }

    if (!fresh.empty()) {
      const int nold = static_cast<int>(basis_.size());
#pragma omp parallel for schedule(dynamic) num_threads(threads)
      for (int k = 0; k < nold; ++k) {
        Vec& old = basis_[k];
        std::vector<std::pair<std::uint64_t, const Vec*>> terms;
        for (const auto& nb : fresh) {
          const std::uint64_t coef = old.b[nb.pivot];
          if (coef != 0) terms.emplace_back(p_ - coef, &nb);
        }
        old.t.resize(width, 0);
        if (terms.empty()) continue;
        std::vector<std::uint64_t> acc(rows_ + width);
        for (std::size_t i = 0; i < rows_; ++i) acc[i] = old.b[i];
        for (std::size_t i = 0; i < width; ++i) acc[rows_ + i] = old.t[i];
        lazy_combine(acc, terms, false);
        lazy_combine(acc, terms, true);
        for (std::size_t i = 0; i < rows_; ++i) old.b[i] = static_cast<std::uint32_t>(acc[i] % p_);
        for (std::size_t i = 0; i < width; ++i) old.t[i] = static_cast<std::uint32_t>(acc[rows_ + i] % p_);
      }
      for (auto& nb : fresh) basis_.push_back(std::move(nb));
    }
    ncols_ = width;
  }

  Field f_;
  std::uint64_t p_;
  std::size_t rows_;
  int threads_, batch_;
  std::uint64_t flush_every_;
  std::size_t ncols_ = 0;
  std::vector<Vec> basis_;
};

VanishingFit finite_fit(const std::vector<SpacePoint>& points, const Field& f, int dmax, const FitOptions& opt) {
  const std::size_t n = points.size();
  const bool lazy = opt.threads != 1 && f.kind() == FieldKind::Prime && f.modulus() < (1ull << 32);
  SerialEchelon serial(f, n);
  LazyEchelon fast(f, n, opt.threads, opt.batch);
  // powers[v][e][i] = (coordinate v of point i)^e
  std::array<std::vector<std::vector<std::uint64_t>>, 3> powers;
  std::vector<Mono> seen;
  for (int d = 0; d <= dmax; ++d) {
    for (int v = 0; v < 3; ++v) {
      std::vector<std::uint64_t> row(n);
      for (std::size_t i = 0; i < n; ++i) {
        row[i] = d == 0 ? 1 : f.mul(powers[v][d - 1][i], points[i].arr()[v].raw());
      }
      powers[v].push_back(std::move(row));
    }
    const std::vector<Mono> monos = monomials_of_degree(d);
    std::vector<std::vector<std::uint64_t>> cols;
    for (const auto& m : monos) {
      std::vector<std::uint64_t> col(n);
      for (std::size_t i = 0; i < n; ++i) col[i] = f.mul(f.mul(powers[0][m[0]][i], powers[1][m[1]][i]), powers[2][m[2]][i]);
      cols.push_back(std::move(col));
    }
    seen.insert(seen.end(), monos.begin(), monos.end());
    const std::vector<Relation> rel = lazy ? fast.add(cols) : serial.add(cols);
    if (rel.empty()) continue;
    VanishingFit fit;
    fit.degree = d;
    fit.r = TrivarPoly(f);
    for (std::size_t c = 0; c < rel.front().coeffs.size(); ++c) fit.r.add_term(seen[c], Scalar::from_raw(f, rel.front().coeffs[c]));
    fit.samples = points;
    fit.nullity = static_cast<int>(rel.size());
    fit.minimal = true;
    return fit;
  }
  throw NoVanishingPolynomial("no polynomial of degree <= " + std::to_string(dmax) + " vanishes on " +
                              std::to_string(n) + " points");
}

// Rows scaled to integers (the kernel is unchanged), then fraction-free
// elimination with pivots taken left to right.
VanishingFit rational_fit(const std::vector<SpacePoint>& points, int dmax) {
  const Field q = Field::rational();
  std::vector<Mono> monos;
  for (int d = 0; d <= dmax; ++d) {
    const std::vector<Mono> add = monomials_of_degree(d);
    monos.insert(monos.end(), add.begin(), add.end());
    const std::size_t m = monos.size();
    std::vector<std::vector<mpz_class>> a;
    for (const auto& pt : points) {
      std::vector<mpq_class> row;
      mpz_class den = 1;
      for (const auto& e : monos) {
        mpq_class v = 1;
        for (int k = 0; k < 3; ++k) {
          for (int t = 0; t < e[k]; ++t) v *= pt.arr()[k].rational();
        }
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den_mpz_t());
        row.push_back(v);
      }
      std::vector<mpz_class> irow;
      for (const auto& v : row) irow.push_back(mpz_class(v.get_num() * (den / v.get_den())));
      a.push_back(std::move(irow));
    }
    mpz_class prev = 1;
    std::size_t rank = 0;
    std::vector<std::size_t> pivots;
    std::size_t first_free = m;
    for (std::size_t c = 0; c < m; ++c) {
      std::size_t piv = rank;
      while (piv < a.size() && a[piv][c] == 0) ++piv;
      if (piv == a.size()) {
        first_free = std::min(first_free, c);
        continue;
      }
      std::swap(a[rank], a[piv]);
      for (std::size_t i = rank + 1; i < a.size(); ++i) {
        for (std::size_t j = c + 1; j < m; ++j) {
          a[i][j] = (a[rank][c] * a[i][j] - a[i][c] * a[rank][j]);
          mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
        }
        a[i][c] = 0;
      }
      prev = a[rank][c];
      pivots.push_back(c);
      ++rank;
    }
    if (first_free == m) continue;
    // Columns before first_free are pivots of rows 0 .. first_free - 1.
    std::vector<mpq_class> x(first_free + 1);
    x[first_free] = 1;
    for (std::size_t i = first_free; i-- > 0;) {
      mpq_class s = 0;
      for (std::size_t j = i + 1; j <= first_free; ++j) s += mpq_class(a[i][j]) * x[j];
      x[i] = -s / mpq_class(a[i][i]);
    }
    VanishingFit fit;
    fit.degree = d;
    fit.r = TrivarPoly(q);
    for (std::size_t c = 0; c <= first_free; ++c) fit.r.add_term(monos[c], Scalar::from_rational(x[c]));
    fit.samples = points;
    fit.nullity = static_cast<int>(m - rank);
    fit.minimal = true;
    return fit;
  }
  throw NoVanishingPolynomial("no polynomial of degree <= " + std::to_string(dmax) + " vanishes on " +
                              std::to_string(points.size()) + " points");
}

}  // namespace

std::vector<SpacePoint> good_fiber_points(const LiftedCurve& l, std::uint64_t scan_bound) {
  std::vector<SpacePoint> out;
  for (const auto& p : curve_points_Fp(l.source(), scan_bound)) {
    if (l.is_good(p)) out.push_back(lift_point(l, p));
  }
  return out;
}

std::vector<SpacePoint> sample_lift_points(const std::vector<LiftedCurve>& lifts, int m_per_curve) {
  if (m_per_curve < 0) throw PreconditionError("negative sample size");
  std::vector<SpacePoint> out;
  if (m_per_curve == 0) return out;
  for (std::size_t k = 0; k < lifts.size(); ++k) {
    const std::vector<SpacePoint> good = good_fiber_points(lifts[k]);
    if (good.size() < static_cast<std::size_t>(m_per_curve)) {
      throw PreconditionError("lift " + std::to_string(k) + " has " + std::to_string(good.size()) +
                              " good points, fewer than " + std::to_string(m_per_curve));
    }
    for (int i = 0; i < m_per_curve; ++i) out.push_back(good[i * good.size() / m_per_curve]);
  }
  return out;
}

VanishingFit min_vanishing_poly(const std::vector<SpacePoint>& points, int dmax, const FitOptions& opt) {
  if (dmax < 0) throw PreconditionError("dmax must be nonnegative");
  if (points.empty()) {
    VanishingFit fit;
    fit.degree = 0;
    fit.r = TrivarPoly::constant(Scalar::one(Field::rational()));
    fit.nullity = 1;
    fit.minimal = true;
    return fit;
  }
  const Field f = common_field(points);
  return f.is_rational() ? rational_fit(points, dmax) : finite_fit(points, f, dmax, opt);
}

bool only_zero_vanishes(const std::vector<SpacePoint>& points, int d) {
  if (d < 0) return true;
  if (points.empty()) return false;
  common_field(points);
  std::vector<Mono> monos;
  for (int e = 0; e <= d; ++e) {
    const auto add = monomials_of_degree(e);
    monos.insert(monos.end(), add.begin(), add.end());
  }
  if (points.size() < monos.size()) return false;
  // Dense Gaussian elimination on the evaluation matrix, row by row.
  std::vector<std::vector<Scalar>> a;
  for (const auto& pt : points) {
    std::vector<Scalar> row;
    for (const auto& e : monos) row.push_back(pt.x.pow(e[0]) * pt.y.pow(e[1]) * pt.z.pow(e[2]));
    a.push_back(std::move(row));
  }
  std::size_t rank = 0;
  for (std::size_t c = 0; c < monos.size(); ++c) {
    std::size_t piv = rank;
    while (piv < a.size() && a[piv][c].is_zero()) ++piv;
    if (piv == a.size()) return false;
    std::swap(a[rank], a[piv]);
    const Scalar inv = a[rank][c].inv();
    for (std::size_t i = rank + 1; i < a.size(); ++i) {
      if (a[i][c].is_zero()) continue;
      const Scalar factor = a[i][c] * inv;
      for (std::size_t j = c; j < monos.size(); ++j) a[i][j] -= factor * a[rank][j];
    }
    ++rank;
  }
  return true;
}

int pigeonhole_degree(int n, int bound) {
  for (int d = 0;; ++d) {
    if (monomial_count(d) > static_cast<std::int64_t>(n) * (static_cast<std::int64_t>(bound) * d + 1)) return d;
  }
}

LiftFit fit_lifts(const std::vector<LiftedCurve>& lifts, int dmax, int heldout, const FitOptions& opt) {
  if (lifts.empty()) throw PreconditionError("no lifts to fit");
  int bound = 1;
  for (const auto& l : lifts) bound = std::max(bound, l.degree_bound());
  const int d = std::min(pigeonhole_degree(static_cast<int>(lifts.size()), bound), dmax);
  LiftFit out;
  out.per_curve = bound * d + 1;
  std::vector<SpacePoint> samples;
  std::vector<std::vector<SpacePoint>> held(lifts.size());
  for (std::size_t k = 0; k < lifts.size(); ++k) {
    const std::vector<SpacePoint> good = good_fiber_points(lifts[k]);
    const std::size_t m = static_cast<std::size_t>(out.per_curve);
    if (good.size() < m) {
      throw PreconditionError("lift " + std::to_string(k) + " has " + std::to_string(good.size()) +
                              " good points, fewer than " + std::to_string(m));
    }
    std::vector<bool> used(good.size(), false);
    for (std::size_t i = 0; i < m; ++i) {
      used[i * good.size() / m] = true;
      samples.push_back(good[i * good.size() / m]);
    }
    std::vector<SpacePoint> rest;
    for (std::size_t i = 0; i < good.size(); ++i) {
      if (!used[i]) rest.push_back(good[i]);
    }
    const std::size_t h = std::min(rest.size(), static_cast<std::size_t>(std::max(heldout, 0)));
    for (std::size_t i = 0; i < h; ++i) held[k].push_back(rest[i * rest.size() / h]);
  }
  out.fit = min_vanishing_poly(samples, d, opt);
  for (const auto& pts : held) {
    int vanish = 0;
    for (const auto& q : pts) vanish += out.fit.r.eval(q.arr()).is_zero() ? 1 : 0;
    out.heldout.push_back(static_cast<int>(pts.size()));
    out.heldout_vanishing.push_back(vanish);
  }
  return out;
}

bool DzReport::all_points_vanish() const {
  return std::all_of(vanishes_at.begin(), vanishes_at.end(), [](bool b) { return b; });
}

DzReport dz_vanishing_report(const TrivarPoly& r, const std::vector<LiftedCurve>& lifts,
                             const std::vector<SpacePoint>& points) {
  DzReport rep;
  rep.dz = r.partial(2);
  rep.identically_zero = rep.dz.is_zero();
  for (const auto& q : points) rep.vanishes_at.push_back(rep.identically_zero || rep.dz.eval(q.arr()).is_zero());
  for (const auto& l : lifts) {
    std::vector<SpacePoint> pts;
    if (l.source().field().is_finite()) {
      pts = good_fiber_points(l);
    } else {
      for (const auto& q : points) {
        if (l.contains(q) && l.is_good(q.plane())) pts.push_back(q);
      }
    }
    if (pts.empty()) {
      rep.lift_fraction.push_back(rep.identically_zero ? 1.0 : 0.0);
      continue;
    }
    std::size_t vanish = 0;
    for (const auto& q : pts) vanish += (rep.identically_zero || rep.dz.eval(q.arr()).is_zero()) ? 1 : 0;
    rep.lift_fraction.push_back(static_cast<double>(vanish) / static_cast<double>(pts.size()));
  }
  return rep;
}

}  // namespace tangency
