#include "tangency/oracle.hpp"

#include <algorithm>
#include <map>

namespace tangency {

namespace {

using Terms = std::map<std::pair<int, int>, Scalar>;

Terms raw_terms(const BivarPoly& p) {
  Terms t;
  for (const auto& [e, c] : p.terms()) t[{e[0], e[1]}] = c;
  return t;
}

Scalar naive_eval(const Terms& t, const Scalar& x, const Scalar& y) {
  Scalar acc = Scalar::zero(x.field());
  for (const auto& [e, c] : t) acc = acc + c * x.pow(e.first) * y.pow(e.second);
  return acc;
}

Terms naive_partial(const Terms& t, int var) {
  Terms out;
  for (const auto& [e, c] : t) {
    const int k = var == 0 ? e.first : e.second;
    if (k == 0) continue;
    const Scalar d = c * Scalar::from_int(c.field(), k);
    if (d.is_zero()) continue;
    out[var == 0 ? std::make_pair(e.first - 1, e.second) : std::make_pair(e.first, e.second - 1)] = d;
  }
  return out;
}

Scalar binomial(const Field& f, int n, int k) {
  // Pascal row, to avoid division in small characteristic.
  std::vector<Scalar> row(n + 1, Scalar::zero(f));
  row[0] = Scalar::one(f);
  for (int i = 1; i <= n; ++i) {
    for (int j = i; j >= 1; --j) row[j] = row[j] + row[j - 1];
  }
  return row[k];
}

// P(x + x0, y + y0).
Terms shifted(const Terms& t, const Scalar& x0, const Scalar& y0) {
  const Field& f = x0.field();
  Terms out;
  for (const auto& [e, c] : t) {
    for (int i = 0; i <= e.first; ++i) {
      for (int j = 0; j <= e.second; ++j) {
        const Scalar v = c * binomial(f, e.first, i) * x0.pow(e.first - i) * binomial(f, e.second, j) * y0.pow(e.second - j);
        auto [it, fresh] = out.try_emplace({i, j}, v);
        if (!fresh) it->second = it->second + v;
      }
    }
  }
  return out;
}

int naive_rank(std::vector<std::vector<Scalar>> m) {
  int rank = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && rank < static_cast<int>(m.size()); ++c) {
    int piv = -1;
    for (std::size_t r = rank; r < m.size(); ++r) {
      if (!m[r][c].is_zero()) {
        piv = static_cast<int>(r);
        break;
      }
    }
    if (piv < 0) continue;
    std::swap(m[rank], m[piv]);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (static_cast<int>(r) == rank || m[r][c].is_zero()) continue;
      const Scalar factor = m[r][c] / m[rank][c];
      for (std::size_t k = c; k < cols; ++k) m[r][k] = m[r][k] - factor * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

int quotient_dimension(const Terms& a, const Terms& b, int n, const Field& f) {
  std::map<std::pair<int, int>, int> index;
  for (int d = 0; d < n; ++d) {
    for (int i = d; i >= 0; --i) index[{i, d - i}] = static_cast<int>(index.size());
  }
  const std::size_t cols = index.size();
  std::vector<std::vector<Scalar>> rows;
  for (const Terms* g : {&a, &b}) {
    for (const auto& [m, col] : index) {
      std::vector<Scalar> row(cols, Scalar::zero(f));
      for (const auto& [e, c] : *g) {
        const std::pair<int, int> prod{e.first + m.first, e.second + m.second};
        if (prod.first + prod.second >= n) continue;
        row[index.at(prod)] = row[index.at(prod)] + c;
      }
      rows.push_back(std::move(row));
    }
  }
  return static_cast<int>(cols) - naive_rank(rows);
}

}  // namespace

CountReport oracle_tangencies_fp(const std::vector<PlaneCurve>& curves) {
  CountReport r;
  r.arrangement_id = "oracle";
  r.n = static_cast<int>(curves.size());
  if (curves.empty()) return r;
  const Field f = curves.front().poly().field();
  r.field = f;
  if (!f.is_finite()) throw PreconditionError("the tangency oracle runs over finite fields only");
  if (f.size() > 256 || curves.size() > 512) throw ScanBoundExceeded("oracle size bounds exceeded");
  struct Compiled {
    Terms p, px, py;
  };
  std::vector<Compiled> cc;
  for (const auto& c : curves) {
    Terms t = raw_terms(c.poly());
    cc.push_back({t, naive_partial(t, 0), naive_partial(t, 1)});
    r.degree = std::max(r.degree, c.poly().degree());
  }
  const std::uint64_t q = f.size();
  for (std::uint64_t xi = 0; xi < q; ++xi) {
    for (std::uint64_t yi = 0; yi < q; ++yi) {
      const Scalar x = Scalar::from_raw(f, xi), y = Scalar::from_raw(f, yi);
      // bucket q holds direction (0 : 1); bucket t holds (1 : t)
      std::vector<std::vector<int>> buckets(q + 1);
      int through = 0;
      bool singular = false;
      for (std::size_t i = 0; i < cc.size(); ++i) {
        if (!naive_eval(cc[i].p, x, y).is_zero()) continue;
        ++through;
        const Scalar gx = naive_eval(cc[i].px, x, y), gy = naive_eval(cc[i].py, x, y);
        if (gx.is_zero() && gy.is_zero()) {
          singular = true;
          continue;
        }
        for (std::uint64_t t = 0; t <= q; ++t) {
          const bool tangent = t == q ? gy.is_zero() : (gx + gy * Scalar::from_raw(f, t)).is_zero();
          if (tangent) buckets[t].push_back(static_cast<int>(i));
        }
      }
      if (through >= 2 && singular) ++r.bad_points;
      const std::size_t first = r.incidences.size();
      for (std::uint64_t t = 0; t <= q; ++t) {
        if (buckets[t].size() < 2) continue;
        const TangentDirection dir = t == q ? TangentDirection(Scalar::zero(f), Scalar::one(f))
                                            : TangentDirection(Scalar::one(f), Scalar::from_raw(f, t));
        DirectedIncidence inc{{x, y}, dir, IncidenceKind::Tangency, 2, buckets[t], {}, false};
        const std::int64_t m = inc.multiplicity();
        r.sigma += m;
        r.tangent_pairs += m * (m - 1) / 2;
        ++r.incidence_count;
        if (t == q) ++r.vertical;
        r.incidences.push_back(std::move(inc));
      }
      std::sort(r.incidences.begin() + static_cast<std::ptrdiff_t>(first), r.incidences.end(),
                [](const auto& a, const auto& b) { return a.direction < b.direction; });
    }
  }
  return r;
}

int oracle_multiplicity_quotient(const BivarPoly& a, const BivarPoly& b, const Point2& p, int truncation) {
  const Field f = a.field();
  const int need = std::max(a.degree(), 0) * std::max(b.degree(), 0) + 1;
  if (truncation < need) {
    throw TruncationInsufficient("truncation " + std::to_string(truncation) + " below D D' + 1 = " + std::to_string(need));
  }
  const Terms ta = shifted(raw_terms(a), p.x, p.y);
  const Terms tb = shifted(raw_terms(b), p.x, p.y);
  const int d1 = quotient_dimension(ta, tb, truncation, f);
  const int d2 = quotient_dimension(ta, tb, truncation + 1, f);
  if (d1 != d2) {
    throw TruncationInsufficient("quotient dimension moves from " + std::to_string(d1) + " to " + std::to_string(d2));
  }
  return d1;
}

}  // namespace tangency
