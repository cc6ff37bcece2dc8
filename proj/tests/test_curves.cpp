#include <doctest.h>

#include "generators.hpp"
#include "tangency/curve.hpp"
#include "tangency/intersect.hpp"
#include "tangency/jets.hpp"

using namespace tangency;

namespace {

const Field Q = Field::rational();

Scalar q(std::int64_t a, std::int64_t b = 1) { return Scalar::from_fraction(Q, a, b); }
Point2 pt(std::int64_t a, std::int64_t b) { return {q(a), q(b)}; }

PlaneCurve curve(const std::string& s, const Field& f = Field::rational()) {
  return PlaneCurve::from_user(parse_poly<2>(s, f));
}

}  // namespace

TEST_CASE("is_smooth_at examples") {
  CHECK_FALSE(is_smooth_at(curve("y^2 - x^3 - x^2", Q), pt(0, 0)));
  CHECK(is_smooth_at(curve("x^2 + y^2 - 1"), pt(0, 1)));
  const Field f4 = Field::char2_ext(2);
  const PlaneCurve par = PlaneCurve::from_family(parse_poly<2>("y - x^2 - 1", f4));
  for (const auto& p : curve_points_Fp(par)) CHECK(is_smooth_at(par, p));
  CHECK_THROWS_AS(is_smooth_at(curve("x^2 + y^2 - 1"), pt(1, 1)), PreconditionError);
}

TEST_CASE("tangent_direction_at examples") {
  const PlaneCurve circle = curve("x^2 + y^2 - 1");
  CHECK(tangent_direction_at(circle, pt(0, 1)) == TangentDirection(q(1), q(0)));
  const Point2 p{q(3, 5), q(4, 5)};
  CHECK(tangent_direction_at(circle, p) == TangentDirection(q(4), q(-3)));
  CHECK(tangent_direction_at(circle, p).v() == q(-3, 4));
  CHECK(tangent_direction_at(curve("x - 2*y - y^2"), pt(0, 0)) == TangentDirection(q(1), q(1, 2)));
  CHECK_THROWS_AS(tangent_direction_at(curve("y^2 - x^3 - x^2"), pt(0, 0)), SingularPointError);
}

TEST_CASE("tangent direction is invariant under rescaling") {
  testgen::Gen g(2);
  const Field f = Field::prime(31);
  const PlaneCurve c = curve("x^2 + y^2 - 1", f);
  for (const auto& p : curve_points_Fp(c)) {
    const PlaneCurve scaled = PlaneCurve::from_user(c.poly().scaled(g.nonzero_scalar(f)));
    CHECK(tangent_direction_at(scaled, p) == tangent_direction_at(c, p));
  }
}

TEST_CASE("irreducibility policy") {
  CHECK(curve("x^2 + y^2 - 1").attestation() == Attestation::Verified);
  CHECK_THROWS_AS(curve("x^2 - y^2"), PreconditionError);
  CHECK(curve("y^2 - x^3 - x").attestation() == Attestation::Asserted);
  CHECK_FALSE(curve("y^2 - x^3 - x").warning().empty());
  const Field f7 = Field::prime(7);
  CHECK(curve("y^2 - x^3 - x", f7).attestation() == Attestation::Verified);
  CHECK_THROWS_AS(curve("x*y^2 + y^3 - x - y", f7), PreconditionError);  // (x + y)(y^2 - 1)
  CHECK_THROWS_AS(curve("x^4 + y^4 + 2*x^2*y^2 - 1", Field::prime(5)), PreconditionError);
  CHECK_THROWS_AS(curve("x^2 - 2*x*y + y^2"), PreconditionError);
}

TEST_CASE("x_monic_normalize examples") {
  const auto line = x_monic_normalize({curve("y")});
  const BivarPoly& p = line.curves.front().poly();
  CHECK(p.coeff({1, 0}).is_one());
  CHECK(!p.coeff({0, 1}).is_zero());
  CHECK_FALSE(line.map.is_identity());
  const auto circle = x_monic_normalize({curve("x^2 + y^2 - 1")});
  CHECK(circle.map.is_identity());
  CHECK(circle.attempts == 1);
  CHECK_THROWS_AS(x_monic_normalize({PlaneCurve::from_family(parse_poly<2>("y - x^2", Field::prime(2)))}),
                  CharacteristicObstruction);
}

TEST_CASE("x_monic_normalize preserves zero sets pointwise") {
  const Field f = Field::prime(13);
  std::vector<PlaneCurve> arr = {curve("y", f), curve("x", f), curve("x*y - 1", f), curve("x^2 + y^2 - 1", f),
                                 curve("y - x^3", f)};
  for (std::uint64_t seed : {0u, 1u, 7u}) {
    const auto norm = x_monic_normalize(arr, seed);
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const BivarPoly& np = norm.curves[i].poly();
      CHECK(np.degree_in(0) == np.degree());
      CHECK(np.coeff({np.degree(), 0}).is_one());
      CHECK_FALSE(np.partial(1).is_zero());
      for (const auto& x : field_elements(f)) {
        for (const auto& y : field_elements(f)) {
          const Point2 p{x, y};
          CHECK(arr[i].contains(p) == norm.curves[i].contains(norm.map.apply(p)));
        }
      }
    }
  }
}

TEST_CASE("curve_points_Fp examples") {
  const Field f5 = Field::prime(5);
  const auto circle = curve_points_Fp(curve("x^2 + y^2 - 1", f5));
  CHECK(circle.size() == 4);  // p - (-1|p) with -1 a square mod 5
  for (const auto& p : circle) CHECK((p.x * p.x + p.y * p.y).is_one());
  CHECK(curve_points_Fp(curve("y", Field::prime(7))).size() == 7);
  const Field f3 = Field::prime(3);
  const auto c3 = curve_points_Fp(curve("x^2 + y^2 + 1", f3));
  REQUIRE(c3.size() == 4);
  CHECK(c3[0] == Point2{Scalar::from_int(f3, 1), Scalar::from_int(f3, 1)});
  CHECK(c3[3] == Point2{Scalar::from_int(f3, 2), Scalar::from_int(f3, 2)});
  CHECK_THROWS_AS(curve_points_Fp(curve("y")), PreconditionError);
  CHECK_THROWS_AS(curve_points_Fp(curve("y", Field::prime(503))), ScanBoundExceeded);
}

TEST_CASE("smoothness agrees with direct gradient evaluation") {
  for (std::uint64_t p : {5u, 7u, 11u}) {
    const Field f = Field::prime(p);
    for (const char* s : {"x^2 + y^2 - 1", "y^2 - x^3 - x^2", "x*y - 1", "y - x^3"}) {
      const PlaneCurve c = PlaneCurve::from_family(parse_poly<2>(s, f));
      for (const auto& pt : curve_points_Fp(c)) {
        const bool grad = !(c.poly().partial(0).eval(pt.arr()).is_zero() && c.poly().partial(1).eval(pt.arr()).is_zero());
        CHECK(is_smooth_at(c, pt) == grad);
      }
    }
  }
}

TEST_CASE("common_points") {
  const auto cp = common_points(parse_poly<2>("x^2 + y^2 - 1", Q), parse_poly<2>("x^2 + y^2 - 4*y + 3", Q));
  REQUIRE(cp.points.size() == 1);
  CHECK(cp.points[0] == pt(0, 1));
  CHECK(cp.unresolved == 0);
  const auto irr = common_points(parse_poly<2>("x^2 + y^2 - 1", Q), parse_poly<2>("y", Q));
  CHECK(irr.points.size() == 2);
  const auto none = common_points(parse_poly<2>("x^2 + y^2 - 1", Q), parse_poly<2>("x - y", Q));
  CHECK(none.points.empty());
  CHECK(none.unresolved == 2);
  CHECK_THROWS_AS(common_points(parse_poly<2>("x*y", Q), parse_poly<2>("x", Q)), PreconditionError);
}

TEST_CASE("classify_good_points examples") {
  const BadPointSet circle = classify_good_points(curve("x^2 + y^2 - 1"), 1);
  REQUIRE(circle.points.size() == 2);
  CHECK(circle.points[0].point == pt(-1, 0));
  CHECK(circle.points[1].point == pt(1, 0));
  CHECK(circle.points[0].reasons == (kVertical | kDenominator));
  CHECK(classify_good_points(curve("y"), 5).points.empty());
  const Field f16 = Field::char2_ext(4);
  CHECK_THROWS_AS(classify_good_points(PlaneCurve::from_family(parse_poly<2>("y - x^2 - 1", f16)), 2), DegenerateJets);
  const BadPointSet node = classify_good_points(curve("y^2 - x^3 - x^2", Field::prime(7)), 3);
  CHECK(node.contains({Scalar::zero(Field::prime(7)), Scalar::zero(Field::prime(7))}));
}

TEST_CASE("bad point count respects the Bezout bound") {
  testgen::Gen g(4);
  const Field f = Field::prime(31);
  for (int i = 0; i < 40; ++i) {
    BivarPoly p = g.poly<2>(f, 3, 5);
    if (p.degree() < 1 || p.partial(1).is_zero() || p.partial(0).is_zero()) continue;
    PlaneCurve c = PlaneCurve::from_family(p);
    try {
      c = PlaneCurve::from_user(p);
    } catch (const PreconditionError&) {
      continue;
    }
    const BadPointSet bad = classify_good_points(c, 3);
    CHECK(static_cast<int>(bad.points.size()) <= c.degree() * std::max(c.py().degree(), 0));
  }
}
