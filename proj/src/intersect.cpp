#include "tangency/intersect.hpp"

#include <algorithm>

#include "tangency/gcd.hpp"

namespace tangency {

namespace {

BivarPoly top_form(const BivarPoly& p) {
  BivarPoly r(p.field());
  const int d = p.degree();
  for (const auto& [e, c] : p.terms()) {
    if (e[0] + e[1] == d) r.add_term(e, c);
  }
  return r;
}

// Multiplicity of the root r in u.
int root_multiplicity(UniPoly u, const Scalar& r) {
  const UniPoly lin(r.field(), {-r, Scalar::one(r.field())});
  int m = 0;
  while (!u.is_zero() && u.eval(r).is_zero()) {
    u = u.exact_div(lin);
    ++m;
  }
  return m;
}

// Roots of u; over Q also adds the number of roots that stay unresolved.
std::vector<Scalar> located_roots(const UniPoly& u, int& unresolved) {
  if (u.degree() <= 0) return {};
  auto roots = roots_in_base_field(u);
  if (!roots) {
    unresolved += u.degree();
    return {};
  }
  if (u.field().is_rational()) {
    int located = 0;
    for (const auto& r : *roots) located += root_multiplicity(u, r);
    unresolved += u.degree() - located;
  }
  return *roots;
}

}  // namespace

CommonPoints common_points(const BivarPoly& a, const BivarPoly& b_in) {
  if (!(a.field() == b_in.field())) throw FieldMismatch("common_points field mismatch");
  if (a.is_zero() || b_in.is_zero()) throw PreconditionError("common_points of the zero polynomial");
  CommonPoints out;
  if (a.is_constant() || b_in.is_constant()) return out;
  if (poly_gcd(a, b_in).degree() > 0) throw PreconditionError("polynomials share a common component");
  BivarPoly b = b_in;
  if (a.degree() == b.degree() && proportional(top_form(a), top_form(b))) {
    b -= a.scaled(b.leading_coeff() / a.leading_coeff());
    if (b.is_constant()) return out;
  }
  const Field& f = a.field();
  auto add_points = [&](const Scalar& x0, const UniPoly& in_y) {
    for (const auto& y0 : located_roots(in_y, out.unresolved)) out.points.push_back({x0, y0});
  };
  if (a.degree_in(1) <= 0 || b.degree_in(1) <= 0) {
    const bool a_in_x = a.degree_in(1) <= 0;
    const BivarPoly& ux = a_in_x ? a : b;
    const BivarPoly& other = a_in_x ? b : a;
    const UniPoly in_x = specialize(ux, 1, Scalar::zero(f));
    for (const auto& x0 : located_roots(in_x, out.unresolved)) add_points(x0, specialize(other, 0, x0));
  } else {
    const UniPoly res = resultant_y(a, b);
    if (res.is_zero()) throw InvariantBreach("vanishing resultant for coprime polynomials");
    for (const auto& x0 : located_roots(res, out.unresolved)) {
      add_points(x0, gcd(specialize(a, 0, x0), specialize(b, 0, x0)));
    }
  }
  std::sort(out.points.begin(), out.points.end());
  out.points.erase(std::unique(out.points.begin(), out.points.end()), out.points.end());
  return out;
}

CommonPoints vertical_or_singular_points(const PlaneCurve& c) {
  if (c.py().is_zero()) throw DegenerateJets("dP/dy vanishes identically on " + format_poly(c.poly()));
  return common_points(c.poly(), c.py());
}

}  // namespace tangency
