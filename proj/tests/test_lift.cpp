#include <doctest.h>

#include <algorithm>
#include <optional>

#include "generators.hpp"
#include "tangency/intersect.hpp"
#include "tangency/lift.hpp"

using namespace tangency;

namespace {

const Field Q = Field::rational();

Scalar q(std::int64_t a, std::int64_t b = 1) { return Scalar::from_fraction(Q, a, b); }
Point2 pt(std::int64_t a, std::int64_t b) { return {q(a), q(b)}; }
PlaneCurve curve(const std::string& s, const Field& f = Field::rational()) {
  return PlaneCurve::from_family(parse_poly<2>(s, f));
}
std::array<Scalar, 3> vec(std::int64_t a, std::int64_t b, std::int64_t c) { return {q(a), q(b), q(c)}; }

// x^2 + y^2 + a x + b y + c with nonzero squared radius, odd characteristic.
PlaneCurve random_circle(testgen::Gen& g, const Field& f) {
  while (true) {
    const Scalar a = g.scalar(f), b = g.scalar(f), c = g.scalar(f);
    const Scalar four = Scalar::from_int(f, 4);
    if ((a * a + b * b - four * c).is_zero()) continue;
    BivarPoly p = parse_poly<2>("x^2 + y^2", f);
    p.add_term({1, 0}, a);
    p.add_term({0, 1}, b);
    p.add_term({0, 0}, c);
    return PlaneCurve::from_family(p);
  }
}

Scalar dot_gradients(const PlaneCurve& a, const PlaneCurve& b, const Point2& p) {
  return a.px().eval(p.arr()) * b.px().eval(p.arr()) + a.py().eval(p.arr()) * b.py().eval(p.arr());
}

}  // namespace

TEST_CASE("lift_curve examples") {
  const PlaneCurve circle = curve("x^2 + y^2 - 1");
  const LiftedCurve b1 = lift_curve(circle, LiftKind::tangency(1));
  CHECK(b1.first() == parse_poly<3>("x^2 + y^2 - 1", Q));
  CHECK(b1.second() == parse_poly<3>("2*y*z - 2*x", Q));
  const Point2 p{q(3, 5), q(4, 5)};
  CHECK(lift_point(b1, p).z == q(3, 4));
  const LiftedCurve orth = lift_curve(circle, LiftKind::perpendicular());
  CHECK(orth.second() == parse_poly<3>("2*x*z + 2*y", Q));
  CHECK(lift_point(orth, p).z == q(-4, 3));
  CHECK(lift_point(orth, p).z == -lift_point(b1, p).z.inv());
  const LiftedCurve line = lift_curve(curve("y - 3"), LiftKind::tangency(1));
  for (int x = -3; x <= 3; ++x) CHECK(lift_point(line, pt(x, 3)).z.is_zero());
  CHECK_THROWS_AS(lift_curve(curve("y - 3"), LiftKind::perpendicular()), DegenerateJets);
  CHECK_THROWS_AS(lift_curve(curve("x - 3"), LiftKind::tangency(1)), DegenerateJets);
  const LiftedCurve b2 = lift_curve(circle, LiftKind::tangency(2));
  CHECK(lift_point(b2, pt(0, 1)).z == q(1));
  CHECK(b1.degree_bound() == 4);
}

TEST_CASE("lift_point examples") {
  const LiftedCurve b1 = lift_curve(curve("x^2 + y^2 - 1"), LiftKind::tangency(1));
  CHECK(lift_point(b1, pt(0, 1)) == SpacePoint{q(0), q(1), q(0)});
  CHECK(lift_point(b1, {q(3, 5), q(4, 5)}) == SpacePoint{q(3, 5), q(4, 5), q(3, 4)});
  CHECK_THROWS_AS(lift_point(b1, pt(1, 0)), BadPointError);
  CHECK_THROWS_AS(lift_point(b1, pt(1, 1)), PreconditionError);
}

TEST_CASE("tangent_space examples") {
  const LiftedCurve b1 = lift_curve(curve("x^2 + y^2 - 1"), LiftKind::tangency(1));
  const TangentSpace3 ts = tangent_space(b1, {q(0), q(1), q(0)});
  REQUIRE(ts.dimension() == 1);
  // z = f_1 rises along the branch, so the kernel is (1, 0, 1).
  CHECK(ts.basis[0] == vec(1, 0, 1));
  CHECK(ts.contains(predicted_tangent(b1, pt(0, 1))));
  const LiftedCurve line = lift_curve(curve("y - 2*x - 1"), LiftKind::tangency(1));
  const TangentSpace3 lt = tangent_space(line, lift_point(line, pt(1, 3)));
  REQUIRE(lt.dimension() == 1);
  CHECK(lt.contains(vec(1, 2, 0)));
  const LiftedCurve node = lift_curve(curve("y^2 - x^3 - x^2"), LiftKind::tangency(1));
  CHECK(tangent_space(node, {q(0), q(0), q(5)}).dimension() == 2);
  CHECK_THROWS_AS(tangent_space(b1, {q(0), q(1), q(1)}), PreconditionError);
}

TEST_CASE("e3_in_span examples") {
  const LiftedCurve a = lift_curve(curve("x^2 + y^2 - 1"), LiftKind::tangency(1));
  const LiftedCurve b = lift_curve(curve("x^2 + y^2 - 4*y + 3"), LiftKind::tangency(1));
  const SpacePoint t{q(0), q(1), q(0)};
  CHECK(e3_in_span(a, b, t));
  CHECK_FALSE(e3_in_span(a, a, t));
  const LiftedCurve l1 = lift_curve(curve("y - x"), LiftKind::tangency(1));
  const LiftedCurve l2 = lift_curve(curve("y + x"), LiftKind::tangency(1));
  CHECK_THROWS_AS(e3_in_span(l1, l2, lift_point(l1, pt(0, 0))), PreconditionError);
  const LiftedCurve node = lift_curve(curve("y^2 - x^3 - x^2"), LiftKind::tangency(1));
  CHECK_THROWS_AS(e3_in_span(node, node, {q(0), q(0), q(0)}), PreconditionError);
}

TEST_CASE("two_rich_points examples") {
  const LiftedCurve a = lift_curve(curve("x^2 + y^2 - 1"), LiftKind::tangency(1));
  const LiftedCurve b = lift_curve(curve("x^2 + y^2 - 4*y + 3"), LiftKind::tangency(1));
  const TwoRichReport tangent = two_rich_points({a, b});
  REQUIRE(tangent.points.size() == 1);
  CHECK(tangent.points[0].point == SpacePoint{q(0), q(1), q(0)});
  CHECK(tangent.points[0].lifts == std::vector<int>{0, 1});
  const LiftedCurve far = lift_curve(curve("x^2 + y^2 - 9"), LiftKind::tangency(1));
  CHECK(two_rich_points({a, far}).points.empty());
  const LiftedCurve cross = lift_curve(curve("x^2 + y^2 - 2*x"), LiftKind::tangency(1));
  CHECK(two_rich_points({a, cross}).points.empty());
  CHECK(two_rich_points({a, cross}).unresolved == 2);
  const LiftedCurve l1 = lift_curve(curve("y - x"), LiftKind::tangency(1));
  const LiftedCurve l2 = lift_curve(curve("y + x"), LiftKind::perpendicular());
  const TwoRichReport orth = two_rich_points({l1, l2});
  REQUIRE(orth.points.size() == 1);
  CHECK(orth.points[0].point == SpacePoint{q(0), q(0), q(-1)});
  // A repeated curve is not two curves.
  CHECK(two_rich_points({a, a}).points.empty());
  const Field f7 = Field::prime(7);
  const LiftedCurve c7 = lift_curve(curve("x^2 + y^2 - 1", f7), LiftKind::tangency(1));
  const LiftedCurve d7 = lift_curve(curve("x^2 + y^2 - 4*y + 3", f7), LiftKind::tangency(1));
  const TwoRichReport fin = two_rich_points({c7, d7, c7});
  REQUIRE(fin.points.size() == 1);
  CHECK(fin.points[0].lifts == std::vector<int>{0, 1, 2});
}

TEST_CASE("orthogonal_points_via_lifts on lines") {
  const auto pts = orthogonal_points_via_lifts({curve("y - x"), curve("y + x - 2"), curve("y - 2*x")});
  REQUIRE(pts.size() == 1);
  CHECK(pts[0] == pt(1, 1));
}

TEST_CASE("fiber uniqueness at every good point") {
  for (std::uint64_t p : {7u, 11u, 13u}) {
    const Field f = Field::prime(p);
    for (const char* s : {"x^2 + y^2 - 1", "y - x^3 + x", "x*y - 1", "y^2 - x^3 - 2"}) {
      const PlaneCurve c = curve(s, f);
      for (const LiftKind k : {LiftKind::tangency(1), LiftKind::tangency(2), LiftKind::perpendicular()}) {
        const LiftedCurve l = lift_curve(c, k);
        for (const auto& pt : curve_points_Fp(c)) {
          if (!l.is_good(pt)) continue;
          const SpacePoint sp = lift_point(l, pt);
          CHECK(l.contains(sp));
          CHECK((sp.z * l.fiber_den().eval(pt.arr()) - l.fiber_num().eval(pt.arr())).is_zero());
          int fiber = 0;
          for (const auto& z : field_elements(f)) fiber += l.contains({pt.x, pt.y, z}) ? 1 : 0;
          CHECK(fiber == 1);
        }
      }
    }
  }
}

TEST_CASE("orthogonality iff the lifts meet, exhaustively") {
  testgen::Gen g(33);
  for (std::uint64_t p : {13u, 17u, 31u}) {
    const Field f = Field::prime(p);
    std::vector<PlaneCurve> arr;
    for (int i = 0; i < 6; ++i) arr.push_back(random_circle(g, f));
    arr.push_back(curve("y - 2*x - 3", f));
    arr.push_back(curve("y - x^2", f));
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const LiftedCurve b1 = lift_curve(arr[i], LiftKind::tangency(1));
      for (std::size_t j = 0; j < arr.size(); ++j) {
        if (i == j || proportional(arr[i].poly(), arr[j].poly())) continue;
        const LiftedCurve orth = lift_curve(arr[j], LiftKind::perpendicular());
        std::vector<Point2> projected;
        for (const auto& tr : two_rich_points({b1, orth}).points) projected.push_back(tr.point.plane());
        for (const auto& x : common_points(arr[i].poly(), arr[j].poly()).points) {
          if (!b1.is_good(x) || !orth.is_good(x)) continue;
          const bool perpendicular = dot_gradients(arr[i], arr[j], x).is_zero();
          const bool lifted = std::find(projected.begin(), projected.end(), x) != projected.end();
          CHECK(perpendicular == lifted);
        }
      }
    }
  }
}

TEST_CASE("e3 lies in the span where f_1 agrees and f_{s+1} differs") {
  testgen::Gen g(41);
  int witnessed = 0;
  for (std::uint64_t p : {13u, 31u}) {
    const Field f = Field::prime(p);
    std::vector<PlaneCurve> arr;
    for (int i = 0; i < 12; ++i) arr.push_back(random_circle(g, f));
    for (int s = 1; s <= 2; ++s) {
      std::vector<LiftedCurve> lifts;
      for (const auto& c : arr) lifts.push_back(lift_curve(c, LiftKind::tangency(s)));
      for (std::size_t i = 0; i < arr.size(); ++i) {
        const JetSequence ji = jet_sequence(arr[i], s + 1);
        for (std::size_t j = i + 1; j < arr.size(); ++j) {
          if (proportional(arr[i].poly(), arr[j].poly())) continue;
          const JetSequence jj = jet_sequence(arr[j], s + 1);
          for (const auto& x : common_points(arr[i].poly(), arr[j].poly()).points) {
            if (!lifts[i].is_good(x) || !lifts[j].is_good(x)) continue;
            bool agree = true;
            for (int k = 1; k <= s; ++k) agree = agree && ji.at(k).eval(x.arr()) == jj.at(k).eval(x.arr());
            if (!agree) continue;
            if (ji.at(s + 1).den().eval(x.arr()).is_zero() || jj.at(s + 1).den().eval(x.arr()).is_zero()) continue;
            if (ji.at(s + 1).eval(x.arr()) == jj.at(s + 1).eval(x.arr())) continue;
            CHECK(e3_in_span(lifts[i], lifts[j], lift_point(lifts[i], x)));
            ++witnessed;
          }
        }
      }
    }
  }
  CHECK(witnessed > 0);
}

TEST_CASE("predicted tangent lies in the Jacobian kernel") {
  testgen::Gen g(5);
  const Field f = Field::prime(101);
  int checked = 0;
  while (checked < 200) {
    BivarPoly poly = g.poly<2>(f, 3, 6);
    if (poly.degree() < 2 || poly.partial(0).is_zero() || poly.partial(1).is_zero()) continue;
    std::optional<PlaneCurve> maybe;
    try {
      maybe = PlaneCurve::from_user(poly);
    } catch (const PreconditionError&) {
      continue;
    }
    const PlaneCurve& c = *maybe;
    const auto pts = curve_points_Fp(c);
    if (pts.empty()) continue;
    const Point2 x = pts[g.integer(0, static_cast<std::int64_t>(pts.size()) - 1)];
    const LiftKind kind = checked % 3 == 0 ? LiftKind::perpendicular() : LiftKind::tangency(1 + checked % 3);
    const LiftedCurve l = lift_curve(c, kind);
    if (!l.is_good(x)) continue;
    std::array<Scalar, 3> v;
    try {
      v = predicted_tangent(l, x);
    } catch (const BadPointError&) {
      continue;
    }
    const TangentSpace3 ts = tangent_space(l, lift_point(l, x));
    CHECK(ts.dimension() == 1);
    CHECK(ts.contains(v));
    ++checked;
  }
}
