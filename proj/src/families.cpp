#include "tangency/families.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <tuple>

#include "tangency/intersect.hpp"

namespace tangency {

namespace {

// Runs the irreducibility policy; a curve it cannot certify keeps the
// family's attestation.
PlaneCurve family_curve(BivarPoly p) {
  PlaneCurve c = PlaneCurve::from_user(std::move(p));
  if (c.attestation() == Attestation::Asserted) return PlaneCurve::from_family(c.poly());
  return c;
}

BivarPoly circle(const Field& f, const Scalar& g, const Scalar& h, const Scalar& c) {
  // x^2 + y^2 + g x + h y + c
  BivarPoly p = parse_poly<2>("x^2 + y^2", f);
  p.add_term({1, 0}, g);
  p.add_term({0, 1}, h);
  p.add_term({0, 0}, c);
  return p;
}

}  // namespace

Family gen_unit_circles_fp(std::uint64_t p) {
  if (p == 2 || !is_prime_u64(p)) throw PreconditionError("unit circles need an odd prime, got " + std::to_string(p));
  if (p > kScanBound) throw ScanBoundExceeded("p = " + std::to_string(p) + " exceeds the scan bound");
  const Field f = Field::prime(p);
  Family fam{"unit-circles", {}, {}, 0, ""};
  const Scalar two = Scalar::from_int(f, 2);
  for (std::uint64_t a = 0; a < p; ++a) {
    for (std::uint64_t b = 0; b < p; ++b) {
      const Scalar sa = Scalar::from_raw(f, a), sb = Scalar::from_raw(f, b);
      fam.curves.push_back(family_curve(circle(f, -two * sa, -two * sb, sa * sa + sb * sb - Scalar::one(f))));
    }
  }
  return fam;
}

Family gen_unit_circles_subset(std::uint64_t p, int n, std::uint64_t seed) {
  if (p == 2 || !is_prime_u64(p)) throw PreconditionError("unit circles need an odd prime, got " + std::to_string(p));
  if (n < 0 || static_cast<std::uint64_t>(n) > p * p) throw PreconditionError("more circles requested than centers");
  const Field f = Field::prime(p);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> pick(0, p * p - 1);
  std::set<std::uint64_t> used;
  Family fam{"unit-circles-subset", {}, {}, 0, ""};
  const Scalar two = Scalar::from_int(f, 2);
  while (static_cast<int>(fam.curves.size()) < n) {
    const std::uint64_t c = pick(rng);
    if (!used.insert(c).second) continue;
    const Scalar sa = Scalar::from_raw(f, c / p), sb = Scalar::from_raw(f, c % p);
    fam.curves.push_back(family_curve(circle(f, -two * sa, -two * sb, sa * sa + sb * sb - Scalar::one(f))));
  }
  return fam;
}

Family gen_char2_parabolas(const Field& f, int n, std::uint64_t seed) {
  if (f.characteristic() != 2) throw PreconditionError("char-2 parabolas need characteristic 2, got " + f.name());
  if (n < 0 || static_cast<std::uint64_t>(n) >= f.size()) {
    throw PreconditionError(f.name() + " has too few nonzero elements for " + std::to_string(n) + " parabolas");
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> pick(0, f.size() - 1);
  Family fam{"char2-parabolas", {}, {}, 0, ""};
  for (int i = 0; i < n; ++i) {
    BivarPoly p = parse_poly<2>("y", f);
    p.add_term({2, 0}, Scalar::from_raw(f, static_cast<std::uint64_t>(i + 1)));
    p.add_term({0, 0}, Scalar::from_raw(f, pick(rng)));
    fam.curves.push_back(family_curve(p));
  }
  return fam;
}

Family gen_orthogonal_grid(int n, const Field& f) {
  if (n < 0 || n % 2 != 0) throw PreconditionError("grid size must be even, got " + std::to_string(n));
  const int h = n / 2;
  if (f.is_finite() && static_cast<std::uint64_t>(h) >= f.size()) {
    throw PreconditionError("a grid of " + std::to_string(n) + " lines does not fit in " + f.name());
  }
  Family fam{"grid", {}, {}, 0, ""};
  auto coord = [&](int i) {
    return f.characteristic() == 2 ? Scalar::from_raw(f, static_cast<std::uint64_t>(i)) : Scalar::from_int(f, i);
  };
  for (int i = 1; i <= h; ++i) {
    BivarPoly p = parse_poly<2>("y", f);
    p.add_term({0, 0}, -coord(i));
    fam.curves.push_back(family_curve(p));
  }
  for (int j = 1; j <= h; ++j) {
    BivarPoly p = parse_poly<2>("x", f);
    p.add_term({0, 0}, -coord(j));
    fam.curves.push_back(family_curve(p));
  }
  return fam;
}

Family gen_coaxial_pencils(int m, const Field& f) {
  if (m < 0) throw PreconditionError("pencil size must be nonnegative");
  if (f.characteristic() == 2) throw PreconditionError("coaxial pencils need odd characteristic");
  Family fam{"coaxial-pencils", {}, {}, 0, ""};
  if (m == 0) return fam;
  const Scalar one = Scalar::one(f), two = Scalar::from_int(f, 2);
  // The cross pair (lambda, mu) meets over the base field iff
  // (lambda^2 + 1)(mu^2 - 1) is a square, so both factors are taken to be
  // nonzero squares. Over Q they come from t -> (t^2 -+ 1) / 2t.
  std::vector<Scalar> lam, mu;
  if (f.is_finite()) {
    auto is_square = [&](const Scalar& v) { return !v.is_zero() && v.pow((f.size() - 1) / 2).is_one(); };
    for (std::uint64_t k = 0; k < f.size(); ++k) {
      const Scalar v = Scalar::from_raw(f, k);
      if (static_cast<int>(lam.size()) < m && is_square(v * v + one)) lam.push_back(v);
      if (static_cast<int>(mu.size()) < m && !v.is_zero() && is_square(v * v - one)) mu.push_back(v);
    }
  } else {
    for (std::int64_t t = 1; static_cast<int>(lam.size()) < m; ++t) lam.push_back(Scalar::from_fraction(f, t * t - 1, 2 * t));
    for (std::int64_t t = 2; static_cast<int>(mu.size()) < m; ++t) mu.push_back(Scalar::from_fraction(f, t * t + 1, 2 * t));
  }
  if (static_cast<int>(lam.size()) < m || static_cast<int>(mu.size()) < m) {
    throw PreconditionError(f.name() + " is too small for " + std::to_string(m) + " intersecting pencil pairs");
  }
  std::vector<BivarPoly> lp, mp;
  for (const auto& l : lam) lp.push_back(circle(f, -two * l, Scalar::zero(f), -one));
  for (const auto& u : mu) mp.push_back(circle(f, Scalar::zero(f), -two * u, one));
  for (const auto& p : lp) fam.curves.push_back(family_curve(p));
  for (const auto& p : mp) fam.curves.push_back(family_curve(p));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (common_points(lp[i], mp[j]).points.empty()) fam.non_intersecting.emplace_back(i, j);
    }
  }
  if (!fam.non_intersecting.empty()) {
    fam.note = std::to_string(fam.non_intersecting.size()) + " cross pairs have no common point over " + f.name();
  }
  return fam;
}

Family tangency_from_incidences(const std::vector<std::pair<std::int64_t, std::int64_t>>& points,
                                const std::vector<PythagoreanLine>& lines) {
  const Field q = Field::rational();
  Family fam{"incidence-tangency", {}, {}, 0, ""};
  for (const auto& [x, y] : points) {
    fam.curves.push_back(family_curve(circle(q, Scalar::from_int(q, -2 * x), Scalar::from_int(q, -2 * y),
                                             Scalar::from_int(q, x * x + y * y - 1))));
  }
  for (const auto& l : lines) {
    if (l.a * l.a + l.b * l.b != l.c * l.c || l.c <= 0) throw PreconditionError("not a Pythagorean direction");
    for (const auto& [x, y] : points) fam.base_incidences += (l.a * x + l.b * y == l.t) ? 1 : 0;
    BivarPoly p(q);
    p.add_term({1, 0}, Scalar::from_int(q, l.a));
    p.add_term({0, 1}, Scalar::from_int(q, l.b));
    p.add_term({0, 0}, Scalar::from_int(q, -(l.t + l.c)));
    fam.curves.push_back(family_curve(p));
  }
  fam.note = "circles and lines; the final inversion step is omitted";
  return fam;
}

Family gen_incidence_tangency(int n) {
  int k = 1;
  while (2 * k * k < n) ++k;
  if (n < 2 || 2 * k * k != n) throw PreconditionError("incidence construction needs n = 2 k^2, got " + std::to_string(n));
  std::vector<std::pair<std::int64_t, std::int64_t>> points;
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < 2 * k; ++j) points.emplace_back(3 * i, 3 * j);
  }
  const std::vector<std::array<std::int64_t, 3>> dirs = {
      {1, 0, 1},    {0, 1, 1},    {3, 4, 5},    {4, 3, 5},    {-3, 4, 5},  {-4, 3, 5},
      {5, 12, 13},  {12, 5, 13},  {-5, 12, 13}, {-12, 5, 13}, {8, 15, 17}, {15, 8, 17},
      {-8, 15, 17}, {-15, 8, 17}, {7, 24, 25},  {24, 7, 25},  {-7, 24, 25}, {-24, 7, 25}};
  // (richness, direction index, t) for every line through a grid point
  std::vector<std::tuple<int, std::size_t, std::int64_t>> cand;
  for (std::size_t d = 0; d < dirs.size(); ++d) {
    std::map<std::int64_t, int> rich;
    for (const auto& [x, y] : points) ++rich[dirs[d][0] * x + dirs[d][1] * y];
    for (const auto& [t, r] : rich) cand.emplace_back(r, d, t);
  }
  std::stable_sort(cand.begin(), cand.end(), [](const auto& l, const auto& r) { return std::get<0>(l) > std::get<0>(r); });
  if (static_cast<int>(cand.size()) < n) throw PreconditionError("too few lines for n = " + std::to_string(n));
  std::vector<PythagoreanLine> lines;
  for (int i = 0; i < n; ++i) {
    const auto& [r, d, t] = cand[i];
    lines.push_back({dirs[d][0], dirs[d][1], dirs[d][2], t});
  }
  Family fam = tangency_from_incidences(points, lines);
  fam.name = "incidence-tangency";
  return fam;
}

}  // namespace tangency
