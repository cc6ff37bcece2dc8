// One line per acceptance criterion; exit status is the number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "tangency/counting.hpp"
#include "tangency/families.hpp"
#include "tangency/intersect.hpp"
#include "tangency/io.hpp"
#include "tangency/jets.hpp"
#include "tangency/lift.hpp"
#include "tangency/oracle.hpp"
#include "tangency/polymethod.hpp"

#ifndef TANGENCY_CLI
#define TANGENCY_CLI "tangency"
#endif

using namespace tangency;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v, int digits = 3) {
  std::ostringstream os;
  os.precision(digits);
  os << std::fixed << v;
  return os.str();
}

std::string run_capture(const std::string& cmd, int& status) {
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    status = -1;
    return out;
  }
  char buf[4096];
  while (std::fgets(buf, sizeof buf, pipe)) out += buf;
  const int raw = pclose(pipe);
  status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return out;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Outcome ac1() {
  const Field q = Field::rational();
  const PlaneCurve c = PlaneCurve::from_user(parse_poly<2>("x - 2*y - y^2", q));
  const HenselBranch b = hensel_phi(c, {Scalar::zero(q), Scalar::zero(q)}, 4);
  const std::vector<Scalar> want = {Scalar::from_fraction(q, 1, 2), Scalar::from_fraction(q, -1, 8),
                                    Scalar::from_fraction(q, 1, 16), Scalar::from_fraction(q, -5, 128)};
  int status = 0;
  const std::string out = run_capture(std::string(TANGENCY_CLI) + " jets --curve 'x - 2*y - y^2' --at 0,0 --order 4", status);
  const bool cli = status == 0 && out.find("phi: [1/2, -1/8, 1/16, -5/128]\n") == 0;
  return {b.coefficients() == want && cli, "phi = " + format_coefficients(b.coefficients()) + (cli ? ", CLI agrees" : ", CLI output differs")};
}

Outcome ac2() {
  int checked = 0, mismatches = 0;
  std::mt19937_64 rng(2);
  for (const Field& f : {Field::rational(), Field::prime(101)}) {
    int done = 0;
    while (done < 100) {
      auto scalar = [&] {
        if (f.is_finite()) return Scalar::from_raw(f, std::uniform_int_distribution<std::uint64_t>(0, 100)(rng));
        return Scalar::from_fraction(f, std::uniform_int_distribution<std::int64_t>(-5, 5)(rng),
                                     std::uniform_int_distribution<std::int64_t>(1, 3)(rng));
      };
      // a curve through (x0, y0) with P_y != 0 there, degree <= 3
      BivarPoly p(f);
      for (int t = 0; t < 5; ++t) {
        const int i = std::uniform_int_distribution<int>(0, 3)(rng);
        const int j = std::uniform_int_distribution<int>(0, 3 - i)(rng);
        p.add_term({i, j}, scalar());
      }
      p.add_term({0, 0}, -p.coeff({0, 0}));
      Scalar lin = scalar();
      while (lin.is_zero()) lin = scalar();
      p.add_term({0, 1}, lin - p.coeff({0, 1}));
      const Scalar x0 = scalar(), y0 = scalar();
      const PlaneCurve c = PlaneCurve::from_family(translate(p, -x0, -y0));
      const Point2 p0{x0, y0};
      const JetSequence js = jet_sequence(c, 6);
      bool good = true;
      for (int i = 1; i <= 6; ++i) good = good && !js.at(i).den().eval(p0.arr()).is_zero();
      if (!good) continue;
      const HenselBranch b = hensel_phi(c, p0, 6);
      for (int i = 1; i <= 6; ++i) {
        if (!(g_eval(js, p0, i) == -(factorial(f, i) * b.phi[i]))) ++mismatches;
        ++checked;
      }
      ++done;
    }
  }
  return {mismatches == 0 && checked == 1200, std::to_string(checked) + " identities checked over Q and F_101, " +
                                                   std::to_string(mismatches) + " mismatches"};
}

Outcome ac3() {
  const auto t0 = std::chrono::steady_clock::now();
  const std::int64_t sigma = directed_orthogonalities(gen_orthogonal_grid(20).curves).sigma;
  ExperimentDoc e;
  e.family = "grid";
  e.values = {8, 16, 32};
  e.kind = "orthogonality";
  const SweepResult s = run_sweep(e);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool ok = sigma == 100 && std::abs(s.fit.slope - 2.0) <= 0.01 && secs < 1.0;
  return {ok, "n=20 gives " + std::to_string(sigma) + ", slope " + fmt(s.fit.slope, 4) + ", " + fmt(secs) + " s"};
}

Outcome ac4() {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<std::pair<double, double>> pts;
  bool equal = true;
  std::string sums;
  for (std::uint64_t p : {5u, 7u, 11u, 13u}) {
    const auto curves = gen_unit_circles_fp(p).curves;
    const std::int64_t main = directed_tangencies(curves).sigma;
    const std::int64_t oracle = oracle_tangencies_fp(curves).sigma;
    equal = equal && main == oracle;
    sums += (sums.empty() ? "" : "/") + std::to_string(main);
    pts.emplace_back(static_cast<double>(curves.size()), static_cast<double>(main));
  }
  const double slope = fit_exponent(pts).slope;
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool ok = equal && slope >= 1.35 && slope <= 1.65 && secs < 60.0;
  return {ok, "sigma " + sums + (equal ? " = oracle" : " != oracle") + ", slope " + fmt(slope, 4) + ", " + fmt(secs) + " s"};
}

Outcome ac5() {
  const auto curves = gen_char2_parabolas(Field::char2_ext(4), 10).curves;
  const CountReport r = directed_tangencies(curves);
  int intersecting = 0, tangent = 0;
  for (std::size_t a = 0; a < curves.size(); ++a) {
    for (std::size_t b = a + 1; b < curves.size(); ++b) {
      for (const auto& p : common_points(curves[a].poly(), curves[b].poly()).points) {
        ++intersecting;
        tangent += tangent_direction_at(curves[a], p) == tangent_direction_at(curves[b], p) ? 1 : 0;
      }
    }
  }
  const bool ok = r.tangent_pairs == 45 && intersecting == tangent && !r.monitor.applicable;
  return {ok, std::to_string(r.tangent_pairs) + " tangent pairs, " + std::to_string(tangent) + "/" +
                  std::to_string(intersecting) + " intersections tangent, monitor " +
                  (r.monitor.applicable ? "applied" : "out of scope")};
}

Outcome ac6() {
  const Field f = Field::prime(101);
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<std::uint64_t> elem(0, 100);
  int pairs = 0, agree = 0, in_range = 0, bezout_ok = 0;
  int seen[4] = {0, 0, 0, 0};
  while (pairs < 50) {
    const int share = pairs % 3;
    BivarPoly a = parse_poly<2>("y", f), b = parse_poly<2>("y", f);
    for (int k = 1; k <= 3; ++k) {
      const Scalar c = Scalar::from_raw(f, elem(rng));
      a.add_term({k, 0}, c);
      b.add_term({k, 0}, k <= share ? c : Scalar::from_raw(f, elem(rng)));
    }
    if (proportional(a, b) || a.coeff({1, 0}) == b.coeff({1, 0}) && share == 0) continue;
    if (share == 1 && a.coeff({2, 0}) == b.coeff({2, 0})) continue;
    const PlaneCurve ca = PlaneCurve::from_family(a), cb = PlaneCurve::from_family(b);
    const Point2 o{Scalar::zero(f), Scalar::zero(f)};
    const int jet = intersection_multiplicity(ca, cb, o).value;
    const int quotient = oracle_multiplicity_quotient(a, b, o, a.degree() * b.degree() + 1);
    agree += jet == quotient ? 1 : 0;
    in_range += (jet >= 1 && jet <= 3) ? 1 : 0;
    if (jet >= 1 && jet <= 3) ++seen[jet];
    int total = 0;
    for (const auto& p : common_points(a, b).points) total += intersection_multiplicity(ca, cb, p).value;
    bezout_ok += total <= a.degree() * b.degree() ? 1 : 0;
    ++pairs;
  }
  const bool ok = agree == 50 && in_range == 50 && bezout_ok == 50;
  return {ok, std::to_string(agree) + "/50 agree, multiplicities 1/2/3 seen " + std::to_string(seen[1]) + "/" +
                  std::to_string(seen[2]) + "/" + std::to_string(seen[3]) + ", Bezout sums ok " + std::to_string(bezout_ok) + "/50"};
}

Outcome ac7() {
  const auto curves = gen_coaxial_pencils(5, Field::prime(31)).curves;
  const CountReport r = directed_orthogonalities(curves);
  std::vector<Point2> direct;
  for (const auto& inc : r.incidences) direct.push_back(inc.point);
  std::sort(direct.begin(), direct.end());
  direct.erase(std::unique(direct.begin(), direct.end()), direct.end());
  const std::vector<Point2> via = orthogonal_points_via_lifts(curves);
  return {direct == via && !via.empty(),
          std::to_string(direct.size()) + " orthogonal points, " + std::to_string(via.size()) + " projected two-rich points"};
}

Outcome ac8() {
  int spans = 0, span_true = 0, rejected = 0, transversal = 0, vertical = 0;
  auto check_pair = [&](const PlaneCurve& a, const PlaneCurve& b, const Point2& p) {
    if (g_eval(a, p, 2) == g_eval(b, p, 2)) return;
    const LiftedCurve la = lift_curve(a, LiftKind::tangency(1)), lb = lift_curve(b, LiftKind::tangency(1));
    ++spans;
    span_true += e3_in_span(la, lb, lift_point(la, p)) ? 1 : 0;
  };
  const Field q = Field::rational();
  auto qc = [&](const char* s) { return PlaneCurve::from_user(parse_poly<2>(s, q)); };
  auto qp = [&](std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
    return Point2{Scalar::from_fraction(q, a, b), Scalar::from_fraction(q, c, d)};
  };
  check_pair(qc("x^2 + y^2 - 1"), qc("x^2 + y^2 - 4*y + 3"), qp(0, 1, 1, 1));
  check_pair(qc("x^2 + y^2 - 1"), qc("x^2 + y^2 - 6*x - 8*y + 9"), qp(3, 5, 4, 5));
  check_pair(qc("x^2 + y^2 - 4"), qc("x^2 + y^2 - 2*y"), qp(0, 1, 2, 1));
  for (std::uint64_t p : {11u, 13u}) {
    const auto curves = gen_unit_circles_fp(p).curves;
    for (const auto& inc : directed_tangencies(curves).incidences) {
      if (inc.direction.is_vertical()) {
        ++vertical;
        continue;
      }
      for (std::size_t i = 0; i < inc.curves.size(); ++i) {
        for (std::size_t j = i + 1; j < inc.curves.size(); ++j) check_pair(curves[inc.curves[i]], curves[inc.curves[j]], inc.point);
      }
    }
    // transversal crossings of the same circles
    for (std::size_t a = 0; a < 6; ++a) {
      for (std::size_t b = a + 1; b < curves.size(); ++b) {
        for (const auto& pt : common_points(curves[a].poly(), curves[b].poly()).points) {
          if (tangent_direction_at(curves[a], pt) == tangent_direction_at(curves[b], pt)) continue;
          if (tangent_direction_at(curves[a], pt).is_vertical()) continue;
          ++transversal;
          const LiftedCurve la = lift_curve(curves[a], LiftKind::tangency(1)), lb = lift_curve(curves[b], LiftKind::tangency(1));
          try {
            e3_in_span(la, lb, lift_point(la, pt));
          } catch (const PreconditionError&) {
            ++rejected;
          }
        }
      }
    }
  }
  const bool ok = spans > 0 && span_true == spans && transversal > 0 && rejected == transversal;
  return {ok, std::to_string(span_true) + "/" + std::to_string(spans) + " tangency fiber points in span, " +
                  std::to_string(rejected) + "/" + std::to_string(transversal) + " transversal crossings rejected, " +
                  std::to_string(vertical) + " vertical incidences skipped"};
}

Outcome ac9() {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::string detail;
  for (int n : {4, 9, 16, 25}) {
    std::vector<LiftedCurve> lifts;
    for (const auto& c : gen_unit_circles_subset(499, n, 0).curves) lifts.push_back(lift_curve(c, LiftKind::tangency(1)));
    const int bound = static_cast<int>(std::floor(8 * std::sqrt(n)));
    const LiftFit fit = fit_lifts(lifts, bound);
    ok = ok && fit.fit.degree <= bound && fit.heldout_ok() && fit.fit.minimal;
    detail += (detail.empty() ? "" : ", ") + std::string("n=") + std::to_string(n) + " d=" + std::to_string(fit.fit.degree) +
              "<=" + std::to_string(bound) + (fit.heldout_ok() ? "" : " (held-out miss)");
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  ok = ok && secs < 120.0;
  return {ok, detail + ", held-out points vanish, " + fmt(secs) + " s"};
}

Outcome ac10() {
  const auto base = std::filesystem::temp_directory_path() / ("tangency-ac10-" + std::to_string(::getpid()));
  const auto a = base / "run1", b = base / "run2";
  int s1 = 0, s2 = 0;
  run_capture(std::string(TANGENCY_CLI) + " --seed 0 selftest --out " + a.string() + " 2>&1", s1);
  run_capture(std::string(TANGENCY_CLI) + " --seed 0 selftest --out " + b.string() + " 2>&1", s2);
  const std::string j1 = slurp(a / "selftest.json"), j2 = slurp(b / "selftest.json");
  const std::string c1 = slurp(a / "selftest.csv"), c2 = slurp(b / "selftest.csv");
  std::filesystem::remove_all(base);
  const bool ok = s1 == 0 && s2 == 0 && !j1.empty() && j1 == j2 && !c1.empty() && c1 == c2;
  return {ok, "selftest exit " + std::to_string(s1) + "/" + std::to_string(s2) + ", JSON " + std::to_string(j1.size()) +
                  " bytes " + (j1 == j2 ? "identical" : "differ") + ", CSV " + (c1 == c2 ? "identical" : "differ")};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"AC1 Hensel fidelity", ac1},          {"AC2 g/phi bridge", ac2},
      {"AC3 orthogonal grid", ac3},          {"AC4 unit circles over F_p", ac4},
      {"AC5 char-2 parabolas", ac5},         {"AC6 multiplicity cross-check", ac6},
      {"AC7 lift/orthogonality", ac7},       {"AC8 span test", ac8},
      {"AC9 vanishing degree", ac9},         {"AC10 determinism", ac10}};
  int failures = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    failures += o.pass ? 0 : 1;
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << std::endl;
  }
  return failures;
}
