#include "tangency/selftest.hpp"

#include <random>

#include "tangency/intersect.hpp"
#include "tangency/jets.hpp"
#include "tangency/lift.hpp"
#include "tangency/oracle.hpp"

namespace tangency {

namespace {

class Recorder {
 public:
  explicit Recorder(SelftestResult& out) : out_(out) {}

  void check(const std::string& name, const Field& f, std::int64_t main, std::int64_t oracle) {
    const bool ok = main == oracle;
    out_.json["checks"].push_back({{"name", name}, {"field", f.name()}, {"main", main}, {"oracle", oracle}, {"ok", ok}});
    ++(ok ? out_.passed : out_.failed);
  }

  void row(const CountReport& r) { out_.csv.push_back(csv_row(r)); }

 private:
  SelftestResult& out_;
};

void compare_tangency(Recorder& rec, const std::string& name, const std::vector<PlaneCurve>& curves, const CountOptions& opt) {
  CountOptions o = opt;
  o.arrangement_id = name;
  const CountReport main = directed_tangencies(curves, o);
  const CountReport oracle = oracle_tangencies_fp(curves);
  rec.row(main);
  const Field f = curves.front().field();
  rec.check(name + " sigma", f, main.sigma, oracle.sigma);
  rec.check(name + " incidences", f, main.incidence_count, oracle.incidence_count);
  std::int64_t same = 0;
  if (main.incidences.size() == oracle.incidences.size()) {
    for (std::size_t i = 0; i < main.incidences.size(); ++i) {
      const auto& a = main.incidences[i];
      const auto& b = oracle.incidences[i];
      same += (a.point == b.point && a.direction == b.direction && a.curves == b.curves) ? 1 : 0;
    }
  }
  rec.check(name + " incidence list", f, same, static_cast<std::int64_t>(oracle.incidences.size()));
}

std::vector<PlaneCurve> random_arrangement(std::mt19937_64& rng, const Field& f, int n) {
  std::uniform_int_distribution<std::uint64_t> elem(0, f.size() - 1);
  std::uniform_int_distribution<int> shape(0, 2);
  auto scalar = [&] { return Scalar::from_raw(f, elem(rng)); };
  std::vector<PlaneCurve> out;
  while (static_cast<int>(out.size()) < n) {
    BivarPoly p(f);
    switch (shape(rng)) {
      case 0:  // line
        p.add_term({1, 0}, scalar());
        p.add_term({0, 1}, scalar());
        p.add_term({0, 0}, scalar());
        break;
      case 1:  // circle
        p = parse_poly<2>("x^2 + y^2", f);
        p.add_term({1, 0}, scalar());
        p.add_term({0, 1}, scalar());
        p.add_term({0, 0}, scalar());
        break;
      default:  // parabola y = a x^2 + b x + c
        p = parse_poly<2>("y", f);
        p.add_term({2, 0}, -scalar());
        p.add_term({1, 0}, scalar());
        p.add_term({0, 0}, scalar());
        break;
    }
    if (p.degree() < 1) continue;
    bool dup = false;
    for (const auto& c : out) dup = dup || proportional(c.poly(), p);
    if (dup) continue;
    try {
      out.push_back(PlaneCurve::from_user(p));
    } catch (const PreconditionError&) {
    }
  }
  return out;
}

}  // namespace

SelftestResult run_selftest(std::uint64_t seed, int threads) {
  SelftestResult out;
  out.json = {{"schema", kSchemaVersion}, {"seed", seed}, {"checks", Json::array()}};
  out.csv.push_back(csv_header());
  Recorder rec(out);
  CountOptions opt;
  opt.threads = threads;

  for (std::uint64_t p : {3u, 5u, 7u, 11u, 13u}) {
    compare_tangency(rec, "unit-circles:p=" + std::to_string(p), gen_unit_circles_fp(p).curves, opt);
  }
  for (const auto& [k, n] : std::vector<std::pair<unsigned, int>>{{2, 3}, {3, 7}, {4, 10}}) {
    const Field f = Field::char2_ext(k);
    const auto curves = gen_char2_parabolas(f, n, seed).curves;
    const std::string name = "char2-parabolas:q=" + std::to_string(f.size()) + ",n=" + std::to_string(n);
    compare_tangency(rec, name, curves, opt);
    rec.check(name + " tangent pairs", f, directed_tangencies(curves, opt).tangent_pairs, n * (n - 1) / 2);
  }
  for (std::uint64_t p : {11u, 13u}) {
    const Field f = Field::prime(p);
    const auto curves = gen_orthogonal_grid(8, f).curves;
    const std::string name = "grid:p=" + std::to_string(p) + ",n=8";
    compare_tangency(rec, name, curves, opt);
    CountOptions o = opt;
    o.arrangement_id = name;
    const CountReport orth = directed_orthogonalities(curves, o);
    rec.row(orth);
    rec.check(name + " orthogonality", f, orth.sigma, 16);
  }
  for (std::uint64_t p : {13u, 31u}) {
    const Field f = Field::prime(p);
    const auto curves = gen_coaxial_pencils(3, f).curves;
    const std::string name = "coaxial-pencils:p=" + std::to_string(p) + ",m=3";
    compare_tangency(rec, name, curves, opt);
    CountOptions o = opt;
    o.arrangement_id = name;
    const CountReport orth = directed_orthogonalities(curves, o);
    rec.row(orth);
    std::vector<Point2> pts;
    for (const auto& inc : orth.incidences) pts.push_back(inc.point);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    const std::vector<Point2> via = orthogonal_points_via_lifts(curves);
    rec.check(name + " orthogonal points via lifts", f, static_cast<std::int64_t>(pts == via ? via.size() : 0),
              static_cast<std::int64_t>(via.size()));
  }

  std::mt19937_64 rng(seed);
  for (std::uint64_t p : {5u, 7u, 11u, 13u, 17u, 23u, 31u}) {
    const Field f = Field::prime(p);
    for (int round = 0; round < 2; ++round) {
      compare_tangency(rec, "random:p=" + std::to_string(p) + ",round=" + std::to_string(round), random_arrangement(rng, f, 12),
                       opt);
    }
  }

  const Field f101 = Field::prime(101);
  std::uniform_int_distribution<std::uint64_t> elem(0, 100);
  std::uniform_int_distribution<int> share(0, 2);
  for (int pair = 0; pair < 20; ++pair) {
    BivarPoly a = parse_poly<2>("y", f101), b = parse_poly<2>("y", f101);
    const int shared = share(rng);
    for (int k = 1; k <= 3; ++k) {
      const Scalar c = Scalar::from_raw(f101, elem(rng));
      a.add_term({k, 0}, c);
      b.add_term({k, 0}, k <= shared ? c : Scalar::from_raw(f101, elem(rng)));
    }
    if (proportional(a, b)) b.add_term({0, 1}, Scalar::one(f101));
    const Point2 o{Scalar::zero(f101), Scalar::zero(f101)};
    const int jet = intersection_multiplicity(PlaneCurve::from_family(a), PlaneCurve::from_family(b), o).value;
    const int quotient = oracle_multiplicity_quotient(a, b, o, a.degree() * b.degree() + 1);
    rec.check("multiplicity:pair=" + std::to_string(pair), f101, jet, quotient);
  }

  out.json["passed"] = out.passed;
  out.json["failed"] = out.failed;
  return out;
}

}  // namespace tangency
