#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "tangency/io.hpp"
#include "tangency/jets.hpp"
#include "tangency/lift.hpp"
#include "tangency/polymethod.hpp"
#include "tangency/selftest.hpp"

using namespace tangency;

namespace {

Field parse_field(const std::string& s) {
  if (s == "Q" || s == "rational") return Field::rational();
  if (s.rfind("2^", 0) == 0) return Field::char2_ext(static_cast<unsigned>(std::stoul(s.substr(2))));
  std::size_t used = 0;
  const std::uint64_t p = std::stoull(s, &used);
  if (used != s.size()) throw PreconditionError("bad field '" + s + "': use Q, a prime, or 2^k");
  return Field::prime(p);
}

Scalar parse_scalar(const std::string& s, const Field& f) {
  const BivarPoly c = parse_poly<2>(s, f);
  if (c.degree() > 0) throw PreconditionError("'" + s + "' is not a constant");
  return c.coeff({0, 0});
}

Point2 parse_point(const std::string& s, const Field& f) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw PreconditionError("point '" + s + "' should be x,y");
  return {parse_scalar(s.substr(0, comma), f), parse_scalar(s.substr(comma + 1), f)};
}

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw PreconditionError(path + ": " + e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw PreconditionError("cannot write " + path);
  out << text;
}

std::string lines(const std::vector<std::string>& rows) {
  std::string s;
  for (const auto& r : rows) s += r + "\n";
  return s;
}

struct FamilyFlags {
  std::uint64_t p = 0, q = 0;
  int n = -1, m = -1;

  FamilyParams params(std::uint64_t seed) const {
    FamilyParams out;
    if (p) out.p = p;
    if (q) out.q = q;
    if (n >= 0) out.n = n;
    if (m >= 0) out.m = m;
    out.seed = seed;
    return out;
  }
};

void add_family_flags(CLI::App* cmd, FamilyFlags& f) {
  cmd->add_option("--p", f.p, "prime field size");
  cmd->add_option("--q", f.q, "power-of-two field size");
  cmd->add_option("--n", f.n, "curve budget");
  cmd->add_option("--m", f.m, "pencil size");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Counting tangencies and orthogonalities of plane curve arrangements"};
  app.require_subcommand(1);
  std::uint64_t seed = 0;
  int threads = 0;
  app.add_option("--seed", seed, "seed for every random choice")->capture_default_str();
  app.add_option("--threads", threads, "worker threads (0 = all, 1 = serial reference)")->capture_default_str();

  // gen
  auto* gen = app.add_subcommand("gen", "write a family as an arrangement document");
  std::string gen_family, gen_out;
  FamilyFlags gen_flags;
  gen->add_option("family", gen_family, "unit-circles, unit-circles-subset, char2-parabolas, grid, coaxial-pencils, incidence-tangency")
      ->required();
  add_family_flags(gen, gen_flags);
  gen->add_option("-o,--out", gen_out, "output path (default stdout)");

  // analyze
  auto* an = app.add_subcommand("analyze", "count incidences of an arrangement document");
  std::string an_doc, an_kind = "tangency", an_json, an_csv;
  int an_s = 2;
  std::size_t an_cap = 100000;
  an->add_option("doc", an_doc, "arrangement JSON")->required();
  an->add_option("--kind", an_kind, "tangency | orthogonality | s-tangency")->capture_default_str();
  an->add_option("--s", an_s, "tangency order for s-tangency")->capture_default_str();
  an->add_option("--json", an_json, "report path (default stdout)");
  an->add_option("--csv", an_csv, "CSV path for header and row");
  an->add_option("--incidence-cap", an_cap, "drop the incidence list above this size")->capture_default_str();

  // sweep
  auto* sw = app.add_subcommand("sweep", "run a parameter sweep and fit the growth exponent");
  std::string sw_doc, sw_family, sw_vary = "n", sw_kind = "tangency", sw_metric = "sigma", sw_csv, sw_json;
  std::vector<std::uint64_t> sw_values;
  FamilyFlags sw_flags;
  sw->add_option("doc", sw_doc, "experiment JSON (flags below otherwise)");
  sw->add_option("--family", sw_family);
  sw->add_option("--vary", sw_vary, "p, q, n or m")->capture_default_str();
  sw->add_option("--values", sw_values)->delimiter(',');
  sw->add_option("--kind", sw_kind, "tangency | orthogonality | s-tangency | polymethod")->capture_default_str();
  sw->add_option("--metric", sw_metric, "sigma | tangent-pairs | incidences")->capture_default_str();
  sw->add_option("--csv", sw_csv, "CSV path (default stdout)");
  sw->add_option("--json", sw_json, "JSON path");
  add_family_flags(sw, sw_flags);

  // jets
  auto* jt = app.add_subcommand("jets", "jets f_i and the branch phi of a curve at a point");
  std::string jt_curve, jt_field = "Q", jt_at = "0,0";
  int jt_order = 4;
  jt->add_option("--curve", jt_curve, "polynomial text")->required();
  jt->add_option("--field", jt_field, "Q, a prime, or 2^k")->capture_default_str();
  jt->add_option("--at", jt_at, "point x,y")->capture_default_str();
  jt->add_option("--order", jt_order, "number of coefficients")->capture_default_str();

  // lift
  auto* lf = app.add_subcommand("lift", "defining pair of a lifted curve");
  std::string lf_curve, lf_field = "Q", lf_kind = "tangency";
  int lf_s = 1;
  lf->add_option("--curve", lf_curve, "polynomial text")->required();
  lf->add_option("--field", lf_field, "Q, a prime, or 2^k")->capture_default_str();
  lf->add_option("--kind", lf_kind, "tangency | orthogonal")->capture_default_str();
  lf->add_option("--s", lf_s, "order of the tangency lift")->capture_default_str();

  // fit-vanishing
  auto* fv = app.add_subcommand("fit-vanishing", "minimal-degree polynomial through the lifts of an arrangement");
  std::string fv_doc, fv_family = "unit-circles-subset", fv_out;
  int fv_dmax = -1, fv_heldout = 20;
  FamilyFlags fv_flags;
  fv->add_option("doc", fv_doc, "arrangement JSON (a family otherwise)");
  fv->add_option("--family", fv_family)->capture_default_str();
  add_family_flags(fv, fv_flags);
  fv->add_option("--dmax", fv_dmax, "degree cap (default 8 sqrt(n) + 8)");
  fv->add_option("--heldout", fv_heldout, "held-out points per lift")->capture_default_str();
  fv->add_option("-o,--out", fv_out, "output path (default stdout)");

  // selftest
  auto* st = app.add_subcommand("selftest", "oracle-equivalence matrix");
  std::string st_out;
  st->add_option("--out", st_out, "directory for selftest.json and selftest.csv (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      write_text(gen_out, arrangement_to_json(family_doc(gen_family, gen_flags.params(seed))).dump(2) + "\n");
    } else if (an->parsed()) {
      const ArrangementDoc doc = arrangement_from_json(read_json(an_doc));
      CountOptions opt;
      opt.arrangement_id = doc.id;
      opt.threads = threads;
      opt.incidence_cap = an_cap;
      const CountReport r = analyze(resolve_curves(doc), an_kind, an_s, opt);
      write_text(an_json, report_to_json(r).dump(2) + "\n");
      if (!an_csv.empty()) write_text(an_csv, csv_header() + "\n" + csv_row(r) + "\n");
      if (r.monitor.applicable && !r.monitor.ok) {
        std::cerr << "monitor bound " << r.monitor.bound << " exceeded by sigma " << r.sigma << "\n";
        return 4;
      }
    } else if (sw->parsed()) {
      ExperimentDoc e;
      if (!sw_doc.empty()) {
        e = experiment_from_json(read_json(sw_doc));
      } else {
        if (sw_family.empty()) throw PreconditionError("sweep needs an experiment document or --family");
        e.family = sw_family;
        e.vary = sw_vary;
        e.values = sw_values;
        e.base = sw_flags.params(seed);
        e.kind = sw_kind;
        e.metric = sw_metric;
      }
      if (!sw_csv.empty()) e.csv_out = sw_csv;
      if (!sw_json.empty()) e.json_out = sw_json;
      const SweepResult r = run_sweep(e, threads);
      write_text(e.csv_out, lines(r.csv));
      if (!e.json_out.empty()) write_text(e.json_out, r.json.dump(2) + "\n");
      std::ostringstream slope;
      slope.precision(6);
      slope << std::fixed << r.fit.slope;
      std::cerr << "slope: " << slope.str() << "\n";
      if (!e.csv_out.empty()) std::cout << "slope: " << slope.str() << "\n";
    } else if (jt->parsed()) {
      const Field f = parse_field(jt_field);
      const PlaneCurve c = PlaneCurve::from_user(parse_poly<2>(jt_curve, f));
      const Point2 p = parse_point(jt_at, f);
      const HenselBranch b = hensel_phi(c, p, jt_order);
      std::vector<Scalar> fi;
      for (int i = 1; i <= jt_order && static_cast<std::uint64_t>(i) < (f.is_finite() ? f.characteristic() : ~0ull); ++i) {
        fi.push_back(g_eval(c, p, i));
      }
      std::cout << "phi: " << format_coefficients(b.coefficients()) << "\n";
      std::cout << "f: " << format_coefficients(fi) << "\n";
    } else if (lf->parsed()) {
      const Field f = parse_field(lf_field);
      const PlaneCurve c = PlaneCurve::from_user(parse_poly<2>(lf_curve, f));
      const LiftKind kind = lf_kind == "orthogonal" ? LiftKind::perpendicular() : LiftKind::tangency(lf_s);
      if (lf_kind != "orthogonal" && lf_kind != "tangency") throw PreconditionError("unknown lift kind '" + lf_kind + "'");
      const LiftedCurve l = lift_curve(c, kind);
      Json bad = Json::array();
      for (const auto& bp : l.bad().points) bad.push_back({{"point", {bp.point.x.to_string(), bp.point.y.to_string()}}, {"reasons", bp.reasons}});
      const Json j = {{"schema", kSchemaVersion},
                      {"kind", kind.to_string()},
                      {"first", format_poly(l.first())},
                      {"second", format_poly(l.second())},
                      {"fiber", format_poly(l.fiber_num()) + " / (" + format_poly(l.fiber_den()) + ")"},
                      {"degree-bound", l.degree_bound()},
                      {"bad-points", bad},
                      {"bad-unresolved", l.bad().unresolved}};
      std::cout << j.dump(2) << "\n";
    } else if (fv->parsed()) {
      std::vector<PlaneCurve> curves;
      if (!fv_doc.empty()) {
        curves = resolve_curves(arrangement_from_json(read_json(fv_doc)));
      } else {
        curves = make_family(fv_family, fv_flags.params(seed)).curves;
      }
      std::vector<LiftedCurve> lifts;
      for (const auto& c : curves) lifts.push_back(lift_curve(c, LiftKind::tangency(1)));
      const int dmax = fv_dmax >= 0 ? fv_dmax : 8 * static_cast<int>(std::ceil(std::sqrt(static_cast<double>(lifts.size())))) + 8;
      FitOptions fo;
      fo.threads = threads;
      const LiftFit fit = fit_lifts(lifts, dmax, fv_heldout, fo);
      write_text(fv_out, vanishing_fit_to_json(fit).dump(2) + "\n");
      if (!fit.heldout_ok()) {
        std::cerr << "held-out points off Z(R)\n";
        return 4;
      }
    } else if (st->parsed()) {
      const SelftestResult r = run_selftest(seed, threads);
      if (st_out.empty()) {
        std::cout << r.json.dump(2) << "\n" << lines(r.csv);
      } else {
        std::filesystem::create_directories(st_out);
        write_text(st_out + "/selftest.json", r.json.dump(2) + "\n");
        write_text(st_out + "/selftest.csv", lines(r.csv));
      }
      std::cerr << r.passed << " checks passed, " << r.failed << " failed\n";
      if (r.failed > 0) return 4;
    }
  } catch (const ScanBoundExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const InvariantBreach& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: bad number: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
