#include "tangency/lift.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <set>

#include "tangency/intersect.hpp"

namespace tangency {

namespace {

using Row3 = std::array<Scalar, 3>;

// Reduced row echelon form in place; returns the pivot columns.
std::vector<int> rref(std::vector<Row3>& rows) {
  std::vector<int> pivots;
  std::size_t r = 0;
  for (int c = 0; c < 3 && r < rows.size(); ++c) {
    std::size_t k = r;
    while (k < rows.size() && rows[k][c].is_zero()) ++k;
    if (k == rows.size()) continue;
    std::swap(rows[r], rows[k]);
    const Scalar inv = rows[r][c].inv();
    for (auto& v : rows[r]) v *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c].is_zero()) continue;
      const Scalar m = rows[i][c];
      for (int j = 0; j < 3; ++j) rows[i][j] -= m * rows[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

int rank(std::vector<Row3> rows) { return static_cast<int>(rref(rows).size()); }

// Bad points of beta_s: singular and vertical points plus zeros of G_1..G_s.
BadPointSet tangency_bad_set(const PlaneCurve& c, const JetSequence& jets) {
  const CommonPoints cand = vertical_or_singular_points(c);
  BadPointSet out;
  out.unresolved = cand.unresolved;
  for (const auto& p : cand.points) {
    BadPoint bp{p, 0, 0};
    bp.reasons |= c.px().eval(p.arr()).is_zero() ? kSingular : kVertical;
    for (int j = 1; j <= jets.jmax(); ++j) {
      if (jets.at(j).den().eval(p.arr()).is_zero()) {
        bp.reasons |= kDenominator;
        bp.first_denominator = j;
        break;
      }
    }
    out.points.push_back(std::move(bp));
  }
  return out;
}

BadPointSet orthogonal_bad_set(const PlaneCurve& c) {
  const CommonPoints cand = common_points(c.poly(), c.px());
  BadPointSet out;
  out.unresolved = cand.unresolved;
  for (const auto& p : cand.points) {
    const unsigned why = c.py().eval(p.arr()).is_zero() ? kSingular : kHorizontal;
    out.points.push_back({p, why, 0});
  }
  return out;
}

bool same_curve(const LiftedCurve& a, const LiftedCurve& b) {
  return a.kind() == b.kind() && proportional(a.source().poly(), b.source().poly());
}

// Group id per lift: the index of the first lift describing the same curve.
std::vector<int> curve_groups(const std::vector<LiftedCurve>& lifts) {
  std::vector<int> group(lifts.size());
  for (std::size_t i = 0; i < lifts.size(); ++i) {
    group[i] = static_cast<int>(i);
    for (std::size_t j = 0; j < i; ++j) {
      if (same_curve(lifts[i], lifts[j])) {
        group[i] = group[j];
        break;
      }
    }
  }
  return group;
}

TwoRichReport collect(const std::map<SpacePoint, std::set<int>>& incidences, const std::vector<int>& group) {
  TwoRichReport out;
  for (const auto& [q, ids] : incidences) {
    std::set<int> groups;
    for (int i : ids) groups.insert(group[i]);
    if (groups.size() < 2) continue;
    out.points.push_back({q, std::vector<int>(ids.begin(), ids.end())});
  }
  return out;
}

TwoRichReport two_rich_finite(const std::vector<LiftedCurve>& lifts) {
  const int n = static_cast<int>(lifts.size());
  std::vector<std::vector<SpacePoint>> fibers(n);
  std::vector<std::exception_ptr> errors(n);
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < n; ++i) {
    try {
      for (const auto& p : curve_points_Fp(lifts[i].source())) {
        if (!lifts[i].bad().contains(p)) fibers[i].push_back(lift_point(lifts[i], p));
      }
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::map<SpacePoint, std::set<int>> incidences;
  for (int i = 0; i < n; ++i) {
    for (const auto& q : fibers[i]) incidences[q].insert(i);
  }
  return collect(incidences, curve_groups(lifts));
}

// Plane points over which lifts a and b (distinct curves) may meet.
CommonPoints pair_candidates(const LiftedCurve& a, const LiftedCurve& b) {
  const BivarPoly& pa = a.source().poly();
  const BivarPoly& pb = b.source().poly();
  if (!proportional(pa, pb)) return common_points(pa, pb);
  const BivarPoly h = a.fiber_num() * b.fiber_den() - b.fiber_num() * a.fiber_den();
  if (h.is_zero() || poly_gcd(pa, h).degree() > 0) {
    throw PreconditionError("lifts " + a.kind().to_string() + " and " + b.kind().to_string() + " of " +
                            format_poly(pa) + " share their good branch");
  }
  return common_points(pa, h);
}

TwoRichReport two_rich_rational(const std::vector<LiftedCurve>& lifts) {
  const std::vector<int> group = curve_groups(lifts);
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < static_cast<int>(lifts.size()); ++i) {
    for (int j = i + 1; j < static_cast<int>(lifts.size()); ++j) {
      if (group[i] != group[j]) pairs.emplace_back(i, j);
    }
  }
  const int m = static_cast<int>(pairs.size());
  std::vector<std::vector<SpacePoint>> found(m);
  std::vector<int> unresolved(m, 0);
  std::vector<std::exception_ptr> errors(m);
#pragma omp parallel for schedule(dynamic)
  for (int k = 0; k < m; ++k) {
    try {
      const LiftedCurve& a = lifts[pairs[k].first];
      const LiftedCurve& b = lifts[pairs[k].second];
      const CommonPoints cp = pair_candidates(a, b);
      unresolved[k] = cp.unresolved;
      for (const auto& p : cp.points) {
        if (!a.is_good(p) || !b.is_good(p)) continue;
        const SpacePoint qa = lift_point(a, p);
        if (qa == lift_point(b, p)) found[k].push_back(qa);
      }
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::map<SpacePoint, std::set<int>> incidences;
  int total_unresolved = 0;
  for (int k = 0; k < m; ++k) {
    total_unresolved += unresolved[k];
    for (const auto& q : found[k]) {
      incidences[q].insert(pairs[k].first);
      incidences[q].insert(pairs[k].second);
    }
  }
  TwoRichReport out = collect(incidences, group);
  out.unresolved = total_unresolved;
  return out;
}

}  // namespace

std::string LiftKind::to_string() const { return orthogonal ? "orthogonal" : "s=" + std::to_string(s); }

bool LiftedCurve::contains(const SpacePoint& q) const {
  return first_.eval(q.arr()).is_zero() && second_.eval(q.arr()).is_zero();
}

LiftedCurve lift_curve(const PlaneCurve& c, LiftKind kind) {
  LiftedCurve l(c, kind);
  if (kind.orthogonal) {
    if (c.px().is_zero()) throw DegenerateJets("dP/dx vanishes identically on " + format_poly(c.poly()));
    l.fnum_ = -c.py();
    l.fden_ = c.px();
    l.bad_ = orthogonal_bad_set(c);
  } else {
    if (kind.s < 1) throw PreconditionError("lift order must be at least 1");
    if (c.py().is_zero()) throw DegenerateJets("dP/dy vanishes identically on " + format_poly(c.poly()));
    const JetSequence jets = jet_sequence(c, kind.s);
    if (kind.s == 1) {
      l.fnum_ = c.px();
      l.fden_ = c.py();
    } else {
      l.fnum_ = jets.at(kind.s).num();
      l.fden_ = jets.at(kind.s).den();
    }
    l.bad_ = tangency_bad_set(c, jets);
  }
  const Field& f = c.field();
  l.first_ = to_trivar(c.poly());
  l.second_ = TrivarPoly::variable(f, 2) * to_trivar(l.fden_) - to_trivar(l.fnum_);
  l.degree_bound_ = c.degree() * std::max(l.second_.degree(), 1);
  return l;
}

SpacePoint lift_point(const LiftedCurve& l, const Point2& p) {
  if (!l.source().contains(p)) throw PreconditionError("point " + p.to_string() + " is not on the curve");
  if (l.bad().contains(p)) throw BadPointError("bad point " + p.to_string() + " of the " + l.kind().to_string() + " lift");
  const Scalar g = l.fiber_den().eval(p.arr());
  if (g.is_zero()) throw InvariantBreach("fiber denominator vanishes at good point " + p.to_string());
  return {p.x, p.y, l.fiber_num().eval(p.arr()) / g};
}

bool TangentSpace3::contains(const Row3& v) const {
  std::vector<Row3> rows = basis;
  const int r = rank(rows);
  rows.push_back(v);
  return rank(rows) == r;
}

TangentSpace3 tangent_space(const LiftedCurve& l, const SpacePoint& q) {
  if (!l.contains(q)) throw PreconditionError("point " + q.to_string() + " is not on the lift");
  const Field& f = l.source().field();
  std::vector<Row3> jac;
  for (const TrivarPoly* g : {&l.first(), &l.second()}) {
    jac.push_back({g->partial(0).eval(q.arr()), g->partial(1).eval(q.arr()), g->partial(2).eval(q.arr())});
  }
  const std::vector<int> pivots = rref(jac);
  TangentSpace3 ts{q, {}};
  for (int free = 0; free < 3; ++free) {
    if (std::find(pivots.begin(), pivots.end(), free) != pivots.end()) continue;
    Row3 v = {Scalar::zero(f), Scalar::zero(f), Scalar::zero(f)};
    v[free] = Scalar::one(f);
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -jac[r][free];
    ts.basis.push_back(v);
  }
  return ts;
}

std::array<Scalar, 3> predicted_tangent(const LiftedCurve& l, const Point2& p) {
  if (!l.is_good(p)) throw BadPointError("point " + p.to_string() + " is not a good point of the lift");
  const PlaneCurve& c = l.source();
  const Scalar py = c.py().eval(p.arr());
  if (py.is_zero()) throw BadPointError("vertical tangent at " + p.to_string());
  const Scalar f1 = c.px().eval(p.arr()) / py;
  const Field& f = c.field();
  if (l.kind().orthogonal) {
    const JetSequence jets = jet_sequence(c, 2);
    return {Scalar::one(f), -f1, jets.at(2).eval(p.arr()) / (f1 * f1)};
  }
  const JetSequence jets = jet_sequence(c, l.kind().s + 1);
  return {Scalar::one(f), -f1, jets.at(l.kind().s + 1).eval(p.arr())};
}

bool e3_in_span(const LiftedCurve& a, const LiftedCurve& b, const SpacePoint& q) {
  if (!(a.source().field() == b.source().field())) throw FieldMismatch("lifts over different fields");
  const TangentSpace3 ta = tangent_space(a, q);
  const TangentSpace3 tb = tangent_space(b, q);
  if (ta.dimension() != 1 || tb.dimension() != 1) {
    throw PreconditionError("tangent spaces at " + q.to_string() + " are not both lines");
  }
  const Field& f = a.source().field();
  std::vector<Row3> rows = {ta.basis[0], tb.basis[0]};
  const int r = rank(rows);
  rows.push_back({Scalar::zero(f), Scalar::zero(f), Scalar::one(f)});
  return rank(rows) == r;
}

TwoRichReport two_rich_points(const std::vector<LiftedCurve>& lifts) {
  if (lifts.empty()) return {};
  const Field& f = lifts.front().source().field();
  for (const auto& l : lifts) {
    if (!(l.source().field() == f)) throw FieldMismatch("lifts over different fields");
  }
  return f.is_finite() ? two_rich_finite(lifts) : two_rich_rational(lifts);
}

std::vector<Point2> orthogonal_points_via_lifts(const std::vector<PlaneCurve>& curves) {
  const int n = static_cast<int>(curves.size());
  std::vector<LiftedCurve> lifts;
  lifts.reserve(2 * n);
  for (const auto& c : curves) lifts.push_back(lift_curve(c, LiftKind::tangency(1)));
  for (const auto& c : curves) lifts.push_back(lift_curve(c, LiftKind::perpendicular()));
  std::vector<Point2> out;
  for (const auto& tr : two_rich_points(lifts).points) {
    bool hit = false;
    for (int a : tr.lifts) {
      for (int b : tr.lifts) {
        hit = hit || (a < n && b >= n && a != b - n);
      }
    }
    if (hit) out.push_back(tr.point.plane());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace tangency
