#include "tangency/jets.hpp"

#include <algorithm>

#include "tangency/intersect.hpp"

namespace tangency {

RationalFunc delta_apply(const RationalFunc& f, const RationalFunc& f1) {
  const BivarPoly& F = f.num();
  const BivarPoly& G = f.den();
  const BivarPoly& A = f1.num();
  const BivarPoly& B = f1.den();
  // f_x = (F_x G - F G_x) / G^2 and f_y likewise; Delta f = N / (B G^2).
  const BivarPoly dx = F.partial(0) * G - F * G.partial(0);
  const BivarPoly dy = F.partial(1) * G - F * G.partial(1);
  BivarPoly num = B * dx - A * dy;
  BivarPoly den = B * G * G;
  if (num.is_zero()) return RationalFunc(num, den);
  // G divides a power of B, so every common factor of num and den is a
  // factor of B; strip them one gcd with B at a time.
  while (true) {
    const BivarPoly g = poly_gcd(num, poly_gcd(den, B));
    if (g.degree() <= 0) break;
    num = exact_divide(num, g);
    den = exact_divide(den, g);
  }
  return RationalFunc::from_reduced(num, den);
}

JetSequence jet_sequence(const PlaneCurve& c, int jmax) {
  if (c.py().is_zero()) throw DegenerateJets("dP/dy vanishes identically on " + format_poly(c.poly()));
  JetSequence js{c.poly(), {}};
  if (jmax < 1) return js;
  js.f.reserve(jmax);
  js.f.emplace_back(c.px(), c.py());
  for (int i = 2; i <= jmax; ++i) js.f.push_back(delta_apply(js.f.back(), js.f.front()));
  return js;
}

std::vector<Scalar> HenselBranch::coefficients() const {
  return std::vector<Scalar>(phi.coeffs().begin() + 1, phi.coeffs().end());
}

HenselBranch hensel_phi(const PlaneCurve& c, const Point2& p0, int order) {
  if (order < 1) throw PreconditionError("Hensel branch order must be at least 1");
  const Field& f = c.field();
  const BivarPoly q = translate(c.poly(), p0.x, p0.y);
  if (!q.coeff({0, 0}).is_zero()) throw PreconditionError("point " + p0.to_string() + " is not on the curve");
  const BivarPoly qy = q.partial(1);
  if (qy.coeff({0, 0}).is_zero()) {
    if (q.coeff({1, 0}).is_zero()) throw SingularPointError("singular point " + p0.to_string());
    throw VerticalTangentError("vertical tangent at " + p0.to_string());
  }
  TruncatedSeries phi(f, 0);
  int prec = 1;  // phi is exact modulo x^prec
  while (prec < order + 1) {
    prec = std::min(2 * prec, order + 1);
    TruncatedSeries t(f, phi.coeffs(), prec - 1);
    phi = t - substitute_y(q, t) * substitute_y(qy, t).invert();
  }
  if (!substitute_y(q, phi).is_zero()) throw InvariantBreach("Newton iteration did not converge");
  return {p0, phi};
}

Scalar g_eval(const JetSequence& jets, const Point2& p0, int i) {
  if (i < 1 || i > jets.jmax()) throw PreconditionError("jet index outside the computed sequence");
  const Field& f = jets.source.field();
  if (f.is_finite() && static_cast<std::uint64_t>(i) >= f.characteristic()) {
    throw CharacteristicObstruction(std::to_string(i) + "! vanishes in " + f.name());
  }
  for (int j = 1; j < i; ++j) {
    if (jets.at(j).den().eval(p0.arr()).is_zero()) {
      throw BadPointError("G_" + std::to_string(j) + " vanishes at " + p0.to_string());
    }
  }
  return jets.at(i).eval(p0.arr());
}

Scalar g_eval(const PlaneCurve& c, const Point2& p0, int i) {
  if (!is_smooth_at(c, p0)) throw SingularPointError("singular point " + p0.to_string());
  if (c.py().eval(p0.arr()).is_zero()) throw VerticalTangentError("vertical tangent at " + p0.to_string());
  return g_eval(jet_sequence(c, i), p0, i);
}

Multiplicity intersection_multiplicity(const PlaneCurve& a, const PlaneCurve& b, const Point2& p,
                                       std::optional<int> order) {
  if (!(a.field() == b.field())) throw FieldMismatch("curves over different fields");
  const int need = a.degree() * b.degree() + 1;
  const int n = order.value_or(need);
  if (n < need) {
    throw TruncationInsufficient("truncation " + std::to_string(n) + " below D D' + 1 = " + std::to_string(need));
  }
  const HenselBranch ba = hensel_phi(a, p, n);
  const HenselBranch bb = hensel_phi(b, p, n);
  if (proportional(a.poly(), b.poly())) return {true, 0};
  const int v = (ba.phi - bb.phi).valuation();
  if (v > n) throw InvariantBreach("branches agree to order " + std::to_string(n) + " for non-proportional curves");
  return {false, v};
}

namespace {

// Shear x <- x + t y making both tangents at p non-vertical.
std::optional<Multiplicity> sheared_multiplicity(const PlaneCurve& a, const PlaneCurve& b, const Point2& p) {
  const Field& f = a.field();
  const Scalar ax = a.px().eval(p.arr()), ay = a.py().eval(p.arr());
  const Scalar bx = b.px().eval(p.arr()), by = b.py().eval(p.arr());
  const std::uint64_t limit = f.is_finite() ? f.size() : 64;
  for (std::uint64_t k = 1; k < limit; ++k) {
    const Scalar t = f.is_finite() ? Scalar::from_raw(f, k) : Scalar::from_int(f, static_cast<std::int64_t>(k));
    if ((t * ax + ay).is_zero() || (t * bx + by).is_zero()) continue;
    const Scalar one = Scalar::one(f), zero = Scalar::zero(f);
    const std::array<Scalar, 6> sub = {one, t, zero, zero, one, zero};
    const PlaneCurve sa(substitute_linear(a.poly(), sub), a.attestation());
    const PlaneCurve sb(substitute_linear(b.poly(), sub), b.attestation());
    return intersection_multiplicity(sa, sb, {p.x - t * p.y, p.y});
  }
  return std::nullopt;
}

}  // namespace

BezoutReport bezout_check(const PlaneCurve& a, const PlaneCurve& b) {
  BezoutReport r;
  r.bound = a.degree() * b.degree();
  if (poly_gcd(a.poly(), b.poly()).degree() > 0) {
    r.common_component = true;
    return r;
  }
  const CommonPoints cp = common_points(a.poly(), b.poly());
  r.unresolved = cp.unresolved;
  for (const auto& p : cp.points) {
    if (!is_smooth_at(a, p) || !is_smooth_at(b, p)) {
      ++r.flagged;
      r.sum += 1;
      continue;
    }
    std::optional<Multiplicity> m;
    if (!a.py().eval(p.arr()).is_zero() && !b.py().eval(p.arr()).is_zero()) {
      m = intersection_multiplicity(a, b, p);
    } else {
      m = sheared_multiplicity(a, b, p);
    }
    if (!m) {
      ++r.flagged;
      r.sum += 1;
    } else {
      r.sum += m->value;
    }
  }
  r.ok = r.sum <= r.bound;
  return r;
}

bool BadPointSet::contains(const Point2& p) const {
  return std::binary_search(points.begin(), points.end(), BadPoint{p, 0, 0},
                            [](const BadPoint& l, const BadPoint& r) { return l.point < r.point; });
}

BadPointSet classify_good_points(const PlaneCurve& c, int jmax) {
  if (c.py().is_zero()) throw DegenerateJets("dP/dy vanishes identically on " + format_poly(c.poly()));
  if (c.px().is_zero() && c.degree() >= 2) {
    throw DegenerateJets("dP/dx vanishes identically on " + format_poly(c.poly()) + ": every f_j is zero");
  }
  const JetSequence jets = jet_sequence(c, jmax);
  // Every G_j divides a power of P_y, so Z(P) n Z(P_y) holds all candidates.
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

}  // namespace tangency
