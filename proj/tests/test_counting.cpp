#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <optional>

#include "generators.hpp"
#include "tangency/counting.hpp"
#include "tangency/families.hpp"
#include "tangency/intersect.hpp"
#include "tangency/jets.hpp"
#include "tangency/kernels.hpp"
#include "tangency/oracle.hpp"

using namespace tangency;

namespace {

const Field Q = Field::rational();

Scalar q(std::int64_t a, std::int64_t b = 1) { return Scalar::from_fraction(Q, a, b); }
PlaneCurve curve(const std::string& s, const Field& f = Field::rational()) {
  return PlaneCurve::from_family(parse_poly<2>(s, f));
}

std::optional<PlaneCurve> random_curve(testgen::Gen& g, const Field& f, int degree) {
  const BivarPoly p = g.poly<2>(f, degree, 5);
  if (p.degree() < 1) return std::nullopt;
  try {
    return PlaneCurve::from_user(p);
  } catch (const PreconditionError&) {
    return std::nullopt;
  }
}

// Random arrangement of distinct curves: random conics and lines, plus
// circles through shared points so tangencies actually occur.
std::vector<PlaneCurve> random_arrangement(testgen::Gen& g, const Field& f, int n) {
  std::vector<PlaneCurve> out;
  while (static_cast<int>(out.size()) < n) {
    std::optional<PlaneCurve> c;
    if (g.coin()) {
      c = random_curve(g, f, static_cast<int>(g.integer(1, 3)));
    } else {
      // circle through the origin tangent to the x-axis: x^2 + y^2 - 2 r y
      BivarPoly p = parse_poly<2>("x^2 + y^2", f);
      p.add_term({0, 1}, g.nonzero_scalar(f));
      if (g.coin()) p.add_term({1, 0}, g.scalar(f));
      try {
        c = PlaneCurve::from_user(p);
      } catch (const PreconditionError&) {
      }
    }
    if (!c) continue;
    bool dup = false;
    for (const auto& o : out) dup = dup || proportional(o.poly(), c->poly());
    if (!dup) out.push_back(*c);
  }
  return out;
}

std::vector<PlaneCurve> mapped(const std::vector<PlaneCurve>& arr, const AffineMap& m) {
  std::vector<PlaneCurve> out;
  for (const auto& c : arr) out.push_back(PlaneCurve(m.push_forward(c.poly()), c.attestation()));
  return out;
}

}  // namespace

TEST_CASE("directed_tangencies examples") {
  const CountReport touch = directed_tangencies({curve("x^2 + y^2 - 1"), curve("x^2 + y^2 - 4*y + 3")});
  REQUIRE(touch.incidences.size() == 1);
  CHECK(touch.incidences[0].point == Point2{q(0), q(1)});
  CHECK(touch.incidences[0].direction == TangentDirection(q(1), q(0)));
  CHECK(touch.incidences[0].multiplicity() == 2);
  CHECK(touch.sigma == 2);
  CHECK(directed_tangencies(gen_orthogonal_grid(20).curves).sigma == 0);
  CHECK(directed_tangencies(gen_unit_circles_fp(5).curves).sigma == oracle_tangencies_fp(gen_unit_circles_fp(5).curves).sigma);
  CHECK_THROWS_AS(directed_tangencies({curve("y - x"), curve("2*y - 2*x")}), PreconditionError);
  CHECK_THROWS_AS(directed_tangencies(gen_unit_circles_fp(3).curves, {.scan_bound = 2}),
                  ScanBoundExceeded);
  CHECK(directed_tangencies({}).sigma == 0);
}

TEST_CASE("unit circles over F_p match the closed form and the oracle") {
  for (std::uint64_t p : {3u, 5u, 7u, 11u, 13u}) {
    const Family fam = gen_unit_circles_fp(p);
    CHECK(fam.curves.size() == p * p);
    const CountReport r = directed_tangencies(fam.curves);
    const CountReport o = oracle_tangencies_fp(fam.curves);
    CHECK(r.sigma == o.sigma);
    CHECK(r.incidence_count == o.incidence_count);
    const std::int64_t legendre = p % 4 == 1 ? 1 : -1;
    CHECK(r.sigma == static_cast<std::int64_t>(p * p) * (static_cast<std::int64_t>(p) - legendre));
  }
}

TEST_CASE("directed_orthogonalities examples") {
  CHECK(directed_orthogonalities(gen_orthogonal_grid(20).curves).sigma == 100);
  CHECK(directed_orthogonalities({curve("x^2 + y^2 - 1")}).sigma == 0);
  // Unit circles with centers at distance d, d^2 = 2, meet orthogonally.
  const Field f7 = Field::prime(7);
  const Scalar d = Scalar::from_int(f7, 3);  // 3^2 = 2 in F_7
  REQUIRE((d * d) == Scalar::from_int(f7, 2));
  BivarPoly shifted = parse_poly<2>("x^2 + y^2 - 1", f7);
  shifted.add_term({1, 0}, -Scalar::from_int(f7, 2) * d);
  shifted.add_term({0, 0}, d * d);
  const PlaneCurve a = curve("x^2 + y^2 - 1", f7);
  const PlaneCurve b = PlaneCurve::from_family(shifted);
  const CountReport r = directed_orthogonalities({a, b});
  const auto common = common_points(a.poly(), b.poly()).points;
  REQUIRE_FALSE(common.empty());
  CHECK(r.sigma == static_cast<std::int64_t>(common.size()));
  for (const auto& inc : r.incidences) {
    CHECK(inc.curves.size() + inc.perp_curves.size() == 2);
  }
}

TEST_CASE("orthogonal grid gives n^2/4 for all even n up to 40") {
  for (int n = 2; n <= 40; n += 2) CHECK(directed_orthogonalities(gen_orthogonal_grid(n).curves).sigma == n * n / 4);
}

TEST_CASE("isotropic directions are flagged") {
  // -1 = 2^2 in F_5: the directions (1 : 2) and (1 : 3) are isotropic.
  const Field f5 = Field::prime(5);
  const CountReport r = directed_orthogonalities({curve("y - 2*x", f5), curve("y - 2*x - x^2", f5)});
  REQUIRE(r.incidences.size() == 1);
  CHECK(r.incidences[0].isotropic);
  CHECK(r.isotropic == 1);
}

TEST_CASE("higher_order_tangencies examples") {
  const std::vector<PlaneCurve> pair = {curve("y - x^2"), curve("y - x^2 - x^3")};
  const CountReport s3 = higher_order_tangencies(pair, 3);
  REQUIRE(s3.incidences.size() == 1);
  CHECK(s3.incidences[0].multiplicity() == 2);
  CHECK(s3.incidences[0].point == Point2{q(0), q(0)});
  CHECK(higher_order_tangencies(pair, 4).sigma == 0);
  CHECK_THROWS_AS(higher_order_tangencies({curve("y - x^2", Field::prime(3))}, 3), CharacteristicObstruction);
  // Vertical contact: x = y^2 and x = y^2 + y^3 use the y-chart.
  const CountReport vert = higher_order_tangencies({curve("x - y^2"), curve("x - y^2 - y^3")}, 3);
  CHECK(vert.sigma == 2);
  CHECK(vert.vertical == 1);
}

TEST_CASE("s = 2 reduces to directed tangencies") {
  testgen::Gen g(12);
  for (std::uint64_t p : {7u, 11u, 13u}) {
    const auto arr = random_arrangement(g, Field::prime(p), 10);
    CHECK(higher_order_tangencies(arr, 2).sigma == directed_tangencies(arr).sigma);
  }
  const auto circles = gen_unit_circles_fp(7).curves;
  CHECK(higher_order_tangencies(circles, 2).sigma == directed_tangencies(circles).sigma);
}

TEST_CASE("higher-order classes agree with pairwise intersection multiplicity") {
  testgen::Gen g(21);
  const Field f = Field::prime(31);
  for (int round = 0; round < 10; ++round) {
    // Graphs y = a1 x + a2 x^2 + a3 x^3 through the origin share jets often.
    std::vector<PlaneCurve> arr;
    for (int i = 0; i < 6; ++i) {
      BivarPoly p = parse_poly<2>("y", f);
      p.add_term({1, 0}, Scalar::from_int(f, g.integer(0, 1)));
      p.add_term({2, 0}, Scalar::from_int(f, g.integer(0, 1)));
      p.add_term({3, 0}, Scalar::from_int(f, g.integer(1, 30)));
      bool dup = false;
      for (const auto& o : arr) dup = dup || proportional(o.poly(), p);
      if (!dup) arr.push_back(PlaneCurve::from_family(p));
    }
    const Point2 o{Scalar::zero(f), Scalar::zero(f)};
    for (int s = 2; s <= 3; ++s) {
      const CountReport r = higher_order_tangencies(arr, s);
      std::int64_t at_origin = 0;
      for (const auto& inc : r.incidences) {
        if (!(inc.point == o)) continue;
        at_origin += inc.multiplicity();
        for (int a : inc.curves) {
          for (int b : inc.curves) {
            if (a < b) CHECK(intersection_multiplicity(arr[a], arr[b], o).value >= s);
          }
        }
      }
      // every curve in a class of size one meets the others with multiplicity < s
      std::int64_t expected = 0;
      for (std::size_t a = 0; a < arr.size(); ++a) {
        for (std::size_t b = 0; b < arr.size(); ++b) {
          if (a != b && intersection_multiplicity(arr[a], arr[b], o).value >= s) {
            ++expected;
            break;
          }
        }
      }
      CHECK(at_origin == expected);
    }
  }
}

TEST_CASE("oracle equivalence on random arrangements") {
  testgen::Gen g(77);
  for (std::uint64_t p : {5u, 7u, 11u, 13u, 17u, 23u, 31u}) {
    for (int round = 0; round < 3; ++round) {
      const auto arr = random_arrangement(g, Field::prime(p), 12);
      const CountReport r = directed_tangencies(arr);
      const CountReport o = oracle_tangencies_fp(arr);
      CHECK(r.sigma == o.sigma);
      CHECK(r.incidence_count == o.incidence_count);
      CHECK(r.bad_points == o.bad_points);
      REQUIRE(r.incidences.size() == o.incidences.size());
      for (std::size_t i = 0; i < r.incidences.size(); ++i) {
        CHECK(r.incidences[i].point == o.incidences[i].point);
        CHECK(r.incidences[i].direction == o.incidences[i].direction);
        CHECK(r.incidences[i].curves == o.incidences[i].curves);
      }
    }
  }
  const Field f16 = Field::char2_ext(4);
  const auto par = gen_char2_parabolas(f16, 10).curves;
  CHECK(directed_tangencies(par).sigma == oracle_tangencies_fp(par).sigma);
  CHECK(oracle_tangencies_fp({}).sigma == 0);
}

TEST_CASE("serial and parallel scans agree") {
  testgen::Gen g(8);
  const auto arr = random_arrangement(g, Field::prime(101), 20);
  CHECK(scan_hits_serial(arr) == scan_hits_parallel(arr, 4));
  CountOptions serial;
  serial.threads = 1;
  CountOptions par;
  par.threads = 4;
  CHECK(directed_tangencies(arr, serial).sigma == directed_tangencies(arr, par).sigma);
  const auto inc = gen_incidence_tangency(8).curves;
  CHECK(directed_tangencies(inc, serial).sigma == directed_tangencies(inc, par).sigma);
}

TEST_CASE("adding a curve never decreases the tangency sum") {
  testgen::Gen g(9);
  for (std::uint64_t p : {7u, 13u}) {
    const auto arr = random_arrangement(g, Field::prime(p), 12);
    std::int64_t last = 0;
    for (std::size_t k = 1; k <= arr.size(); ++k) {
      const std::int64_t now = directed_tangencies({arr.begin(), arr.begin() + k}).sigma;
      CHECK(now >= last);
      last = now;
    }
  }
}

TEST_CASE("counts are invariant under affine and orthogonal maps") {
  testgen::Gen g(10);
  const Field f = Field::prime(13);
  const auto arr = random_arrangement(g, f, 12);
  const std::int64_t tan = directed_tangencies(arr).sigma;
  const std::int64_t orth = directed_orthogonalities(arr).sigma;
  for (int round = 0; round < 5; ++round) {
    std::array<Scalar, 4> m;
    do {
      for (auto& e : m) e = g.scalar(f);
    } while ((m[0] * m[3] - m[1] * m[2]).is_zero());
    const AffineMap affine(m, {g.scalar(f), g.scalar(f)});
    CHECK(directed_tangencies(mapped(arr, affine)).sigma == tan);
  }
  // Rotations [[a, -b], [b, a]] with a^2 + b^2 = 1 over F_13.
  for (std::uint64_t ar = 0; ar < 13; ++ar) {
    for (std::uint64_t br = 1; br < 13; ++br) {
      const Scalar a = Scalar::from_raw(f, ar), b = Scalar::from_raw(f, br);
      if (!(a * a + b * b).is_one()) continue;
      const AffineMap rot({a, -b, b, a}, {g.scalar(f), g.scalar(f)});
      CHECK(directed_orthogonalities(mapped(arr, rot)).sigma == orth);
      CHECK(directed_tangencies(mapped(arr, rot)).sigma == tan);
    }
  }
  // Over Q: the rotation by (3/5, 4/5) of the touching circles.
  const std::vector<PlaneCurve> touch = {curve("x^2 + y^2 - 1"), curve("x^2 + y^2 - 4*y + 3"), curve("y - 1")};
  const AffineMap rq({q(3, 5), q(-4, 5), q(4, 5), q(3, 5)}, {q(1), q(2)});
  CHECK(directed_tangencies(mapped(touch, rq)).sigma == directed_tangencies(touch).sigma);
}

TEST_CASE("tangency monitor on the families within the guard") {
  for (std::uint64_t p : {5u, 7u, 11u, 13u}) {
    const auto fam = gen_unit_circles_fp(p).curves;
    for (std::size_t n : {1u, 2u, 4u, 8u}) {
      if (n > fam.size()) continue;
      const CountReport r = directed_tangencies({fam.begin(), fam.begin() + n});
      if (r.monitor.applicable) CHECK(r.monitor.ok);
    }
  }
  for (int n : {8, 18, 32}) {
    const CountReport r = directed_tangencies(gen_incidence_tangency(n).curves);
    CHECK(r.monitor.applicable);
    CHECK(r.monitor.ok);
  }
  const CountReport grid = directed_orthogonalities(gen_orthogonal_grid(40).curves);
  CHECK(grid.monitor.applicable);
  CHECK(grid.monitor.ok);
  // Characteristic 2 is outside the regime.
  const CountReport c2 = directed_tangencies(gen_char2_parabolas(Field::char2_ext(4), 10).curves);
  CHECK_FALSE(c2.monitor.applicable);
  CHECK(tangency_monitor(Q, 2, 100, 32000).ok);
  CHECK_FALSE(tangency_monitor(Q, 2, 100, 32001).ok);
}

TEST_CASE("fit_exponent examples") {
  CHECK(fit_exponent({{100, 1000}, {400, 8000}}).slope == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(fit_exponent({{4, 16}, {8, 64}, {16, 256}}).slope == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(fit_exponent({{4, 16}, {8, 64}, {16, 256}}).residual == doctest::Approx(0.0));
  std::vector<std::pair<double, double>> circles;
  for (std::uint64_t p : {5u, 7u, 11u, 13u}) {
    circles.emplace_back(static_cast<double>(p * p),
                         static_cast<double>(oracle_tangencies_fp(gen_unit_circles_fp(p).curves).sigma));
  }
  const double slope = fit_exponent(circles).slope;
  CHECK(slope >= 1.35);
  CHECK(slope <= 1.65);
  CHECK_THROWS_AS(fit_exponent({{4, 16}}), PreconditionError);
  CHECK_THROWS_AS(fit_exponent({{4, 16}, {8, 0}}), PreconditionError);
  CHECK_THROWS_AS(fit_exponent({{4, 16}, {4, 20}}), PreconditionError);
}

TEST_CASE("family generator examples") {
  CHECK(gen_unit_circles_fp(5).curves.size() == 25);
  for (const auto& c : gen_unit_circles_fp(5).curves) CHECK(c.degree() == 2);
  CHECK(gen_unit_circles_fp(3).curves.size() == 9);
  CHECK_THROWS_AS(gen_unit_circles_fp(2), PreconditionError);
  CHECK_THROWS_AS(gen_unit_circles_fp(9), PreconditionError);

  const Field f16 = Field::char2_ext(4);
  const auto par3 = gen_char2_parabolas(f16, 3).curves;
  for (std::size_t a = 0; a < par3.size(); ++a) {
    for (std::size_t b = a + 1; b < par3.size(); ++b) {
      const auto pts = common_points(par3[a].poly(), par3[b].poly()).points;
      REQUIRE(pts.size() == 1);
      CHECK(tangent_direction_at(par3[a], pts[0]) == tangent_direction_at(par3[b], pts[0]));
    }
  }
  CHECK(directed_tangencies(par3).tangent_pairs == 3);
  CHECK(directed_tangencies(gen_char2_parabolas(f16, 1).curves).sigma == 0);
  CHECK_THROWS_AS(gen_char2_parabolas(Field::prime(5), 3), PreconditionError);
  for (int n = 1; n < 16; ++n) CHECK(directed_tangencies(gen_char2_parabolas(f16, n, 5).curves).tangent_pairs == n * (n - 1) / 2);
  const auto again = gen_char2_parabolas(f16, 10, 3).curves;
  const auto once = gen_char2_parabolas(f16, 10, 3).curves;
  for (std::size_t i = 0; i < once.size(); ++i) CHECK(once[i].poly() == again[i].poly());

  CHECK(directed_orthogonalities(gen_orthogonal_grid(4).curves).sigma == 4);
  CHECK_THROWS_AS(gen_orthogonal_grid(20, Field::prime(7)), PreconditionError);
  CHECK_THROWS_AS(gen_orthogonal_grid(3), PreconditionError);

  CHECK(gen_coaxial_pencils(0, Field::prime(13)).curves.empty());
  for (std::uint64_t p : {13u, 31u}) {
    const Field f = Field::prime(p);
    const Family fam = gen_coaxial_pencils(3, f);
    CHECK(fam.non_intersecting.empty());
    for (int i = 0; i < 3; ++i) {
      for (int j = 3; j < 6; ++j) {
        const auto& a = fam.curves[i];
        const auto& b = fam.curves[j];
        const auto pts = common_points(a.poly(), b.poly()).points;
        CHECK(pts.size() >= 1);
        CHECK(pts.size() <= 2);
        for (const auto& pt : pts) {
          const Scalar dot = a.poly().partial(0).eval({pt.x, pt.y}) * b.poly().partial(0).eval({pt.x, pt.y}) +
                             a.poly().partial(1).eval({pt.x, pt.y}) * b.poly().partial(1).eval({pt.x, pt.y});
          CHECK(dot.is_zero());
        }
      }
    }
  }
  CHECK_THROWS_AS(gen_coaxial_pencils(20, Field::prime(7)), PreconditionError);
  const Family qp = gen_coaxial_pencils(3, Q);
  CHECK(qp.non_intersecting.empty());

  const Family one = tangency_from_incidences({{0, 0}}, {{3, 4, 5, 0}});
  CHECK(one.base_incidences == 1);
  CHECK(directed_tangencies(one.curves).sigma == 2);
  const Family inc = gen_incidence_tangency(8);
  CHECK(inc.curves.size() == 16);
  CHECK(directed_tangencies(inc.curves).incidence_count == inc.base_incidences);
  CHECK_THROWS_AS(gen_incidence_tangency(7), PreconditionError);
}

TEST_CASE("incidence construction grows faster than linearly") {
  std::vector<std::pair<double, double>> pts;
  for (int n : {18, 32, 50}) {
    const Family fam = gen_incidence_tangency(n);
    const CountReport r = directed_tangencies(fam.curves);
    CHECK(r.incidence_count == fam.base_incidences);
    pts.emplace_back(n, static_cast<double>(r.incidence_count));
  }
  CHECK(fit_exponent(pts).slope > 1.2);
}

TEST_CASE("oracle_multiplicity_quotient examples") {
  const Point2 o{q(0), q(0)};
  CHECK(oracle_multiplicity_quotient(parse_poly<2>("y", Q), parse_poly<2>("y - x^2", Q), o, 3) == 2);
  CHECK(oracle_multiplicity_quotient(parse_poly<2>("y - x", Q), parse_poly<2>("y + x", Q), o, 2) == 1);
  CHECK(oracle_multiplicity_quotient(parse_poly<2>("y - x^2", Q), parse_poly<2>("y - x^2 - x^3", Q), o, 7) == 3);
  CHECK(oracle_multiplicity_quotient(parse_poly<2>("x^2 + y^2 - 1", Q), parse_poly<2>("x^2 + y^2 - 4*y + 3", Q),
                                     {q(0), q(1)}, 5) == 2);
  CHECK_THROWS_AS(oracle_multiplicity_quotient(parse_poly<2>("y", Q), parse_poly<2>("y - x^2", Q), o, 2),
                  TruncationInsufficient);
}

TEST_CASE("jet multiplicity agrees with the quotient oracle") {
  testgen::Gen g(31);
  const Field f = Field::prime(101);
  int checked = 0;
  while (checked < 20) {
    // Two graphs through the origin sharing a random number of jet terms.
    const int share = static_cast<int>(g.integer(0, 2));
    BivarPoly a = parse_poly<2>("y", f), b = parse_poly<2>("y", f);
    for (int k = 1; k <= 3; ++k) {
      const Scalar c = g.scalar(f);
      a.add_term({k, 0}, c);
      b.add_term({k, 0}, k <= share ? c : g.scalar(f));
    }
    if (proportional(a, b)) continue;
    if (g.coin()) a.add_term({1, 1}, g.scalar(f));
    const PlaneCurve ca = PlaneCurve::from_family(a), cb = PlaneCurve::from_family(b);
    const Point2 o{Scalar::zero(f), Scalar::zero(f)};
    const int jet = intersection_multiplicity(ca, cb, o).value;
    CHECK(jet == oracle_multiplicity_quotient(a, b, o, a.degree() * b.degree() + 1));
    ++checked;
  }
}
