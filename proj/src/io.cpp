#include "tangency/io.hpp"

#include <cmath>
#include <sstream>

namespace tangency {

namespace {

std::string attestation_name(Attestation a) { return to_string(a); }

Attestation attestation_from(const std::string& s) {
  for (Attestation a : {Attestation::Verified, Attestation::AssertedByFamily, Attestation::Asserted}) {
    if (to_string(a) == s) return a;
  }
  throw PreconditionError("unknown attestation '" + s + "'");
}

template <typename T>
T require(const std::optional<T>& v, const std::string& family, const std::string& name) {
  if (!v) throw PreconditionError(family + " needs --" + name);
  return *v;
}

unsigned log2_exact(std::uint64_t q) {
  unsigned k = 0;
  while ((1ull << k) < q) ++k;
  if ((1ull << k) != q || k == 0) throw PreconditionError("q = " + std::to_string(q) + " is not a power of two");
  return k;
}

Json point_json(const Point2& p) { return Json::array({p.x.to_string(), p.y.to_string()}); }

Json params_json(const FamilyParams& p) {
  Json j = Json::object();
  if (p.p) j["p"] = *p.p;
  if (p.q) j["q"] = *p.q;
  if (p.n) j["n"] = *p.n;
  if (p.m) j["m"] = *p.m;
  j["seed"] = p.seed;
  return j;
}

FamilyParams params_from(const Json& j) {
  FamilyParams p;
  if (j.contains("p")) p.p = j.at("p").get<std::uint64_t>();
  if (j.contains("q")) p.q = j.at("q").get<std::uint64_t>();
  if (j.contains("n")) p.n = j.at("n").get<int>();
  if (j.contains("m")) p.m = j.at("m").get<int>();
  if (j.contains("seed")) p.seed = j.at("seed").get<std::uint64_t>();
  return p;
}

std::string param_label(const FamilyParams& p) {
  std::string s;
  auto add = [&](const std::string& k, const std::string& v) { s += (s.empty() ? "" : ",") + k + "=" + v; };
  if (p.p) add("p", std::to_string(*p.p));
  if (p.q) add("q", std::to_string(*p.q));
  if (p.n) add("n", std::to_string(*p.n));
  if (p.m) add("m", std::to_string(*p.m));
  return s;
}

}  // namespace

Json field_to_json(const Field& f) {
  switch (f.kind()) {
    case FieldKind::Rational: return "rational";
    case FieldKind::Prime: return Json{{"char", f.modulus()}};
    case FieldKind::Char2Ext: return Json{{"char2ext", f.ext_degree()}};
  }
  return nullptr;
}

Field field_from_json(const Json& j) {
  if (j.is_string() && j.get<std::string>() == "rational") return Field::rational();
  if (j.is_object() && j.size() == 1) {
    if (j.contains("char")) return Field::prime(j.at("char").get<std::uint64_t>());
    if (j.contains("char2ext")) return Field::char2_ext(j.at("char2ext").get<unsigned>());
  }
  throw PreconditionError("bad field descriptor " + j.dump());
}

Json arrangement_to_json(const ArrangementDoc& d) {
  Json curves = Json::array();
  for (const auto& c : d.curves) curves.push_back({{"poly", c.poly}, {"attestation", attestation_name(c.attestation)}});
  return {{"schema", d.schema}, {"id", d.id},       {"field", field_to_json(d.field)},
          {"D", d.degree_cap},  {"seed", d.seed},   {"curves", curves}};
}

ArrangementDoc arrangement_from_json(const Json& j) {
  try {
    ArrangementDoc d;
    d.schema = j.value("schema", kSchemaVersion);
    if (d.schema != kSchemaVersion) throw PreconditionError("unsupported schema version " + std::to_string(d.schema));
    d.id = j.value("id", std::string("arrangement"));
    d.field = field_from_json(j.at("field"));
    d.degree_cap = j.value("D", 8);
    d.seed = j.value("seed", std::uint64_t{0});
    for (const auto& c : j.value("curves", Json::array())) {
      if (c.is_string()) {
        d.curves.push_back({c.get<std::string>(), Attestation::Asserted});
      } else {
        d.curves.push_back({c.at("poly").get<std::string>(), attestation_from(c.value("attestation", std::string("asserted")))});
      }
    }
    return d;
  } catch (const Json::exception& e) {
    throw PreconditionError(std::string("malformed arrangement document: ") + e.what());
  }
}

std::vector<PlaneCurve> resolve_curves(const ArrangementDoc& d) {
  std::vector<PlaneCurve> out;
  for (const auto& e : d.curves) {
    BivarPoly p = parse_poly<2>(e.poly, d.field);
    if (p.degree() > d.degree_cap) {
      throw PreconditionError("curve '" + e.poly + "' exceeds the degree cap " + std::to_string(d.degree_cap));
    }
    out.push_back(e.attestation == Attestation::AssertedByFamily ? PlaneCurve::from_family(std::move(p))
                                                                  : PlaneCurve::from_user(std::move(p)));
  }
  return out;
}

Family make_family(const std::string& name, const FamilyParams& params) {
  if (name == "unit-circles") return gen_unit_circles_fp(require(params.p, name, "p"));
  if (name == "unit-circles-subset") {
    return gen_unit_circles_subset(require(params.p, name, "p"), require(params.n, name, "n"), params.seed);
  }
  if (name == "char2-parabolas") {
    return gen_char2_parabolas(Field::char2_ext(log2_exact(require(params.q, name, "q"))), require(params.n, name, "n"),
                               params.seed);
  }
  if (name == "grid") {
    return gen_orthogonal_grid(require(params.n, name, "n"), params.p ? Field::prime(*params.p) : Field::rational());
  }
  if (name == "coaxial-pencils") {
    return gen_coaxial_pencils(require(params.m, name, "m"), params.p ? Field::prime(*params.p) : Field::rational());
  }
  if (name == "incidence-tangency") return gen_incidence_tangency(require(params.n, name, "n"));
  throw PreconditionError("unknown family '" + name + "'");
}

ArrangementDoc family_doc(const std::string& name, const FamilyParams& params) {
  const Family fam = make_family(name, params);
  ArrangementDoc d;
  d.id = name + (param_label(params).empty() ? "" : ":" + param_label(params));
  d.seed = params.seed;
  d.field = fam.curves.empty() ? (params.p ? Field::prime(*params.p) : Field::rational()) : fam.curves.front().field();
  d.degree_cap = 0;
  for (const auto& c : fam.curves) {
    d.curves.push_back({format_poly(c.poly()), c.attestation()});
    d.degree_cap = std::max(d.degree_cap, c.degree());
  }
  return d;
}

Json report_to_json(const CountReport& r) {
  Json j = {{"schema", kSchemaVersion},
            {"arrangement-id", r.arrangement_id},
            {"field", field_to_json(r.field)},
            {"D", r.degree},
            {"n", r.n},
            {"kind", to_string(r.kind)},
            {"s", r.s},
            {"sigma-mult", r.sigma},
            {"incidences", r.incidence_count},
            {"tangent-pairs", r.tangent_pairs},
            {"bad-points", r.bad_points},
            {"vertical", r.vertical},
            {"isotropic", r.isotropic},
            {"unresolved", r.unresolved},
            {"partial", r.partial()},
            {"elided", r.elided},
            {"monitor", {{"applicable", r.monitor.applicable}, {"bound", r.monitor.bound}, {"ok", r.monitor.ok}}}};
  Json list = Json::array();
  for (const auto& inc : r.incidences) {
    Json e = {{"point", point_json(inc.point)},
              {"direction", Json::array({inc.direction.u().to_string(), inc.direction.v().to_string()})},
              {"curves", inc.curves},
              {"multiplicity", inc.multiplicity()}};
    if (inc.kind == IncidenceKind::Orthogonality) {
      e["perp-curves"] = inc.perp_curves;
      e["isotropic"] = inc.isotropic;
    }
    list.push_back(std::move(e));
  }
  j["points"] = std::move(list);
  return j;
}

std::string csv_header() { return "arrangement-id,field,D,n,kind,sigma-mult,incidences,bad-points,unresolved"; }

std::string csv_row(const CountReport& r) {
  std::ostringstream os;
  std::string id = r.arrangement_id;
  if (id.find_first_of(",\"") != std::string::npos) {
    std::string quoted = "\"";
    for (char c : id) quoted += c == '"' ? std::string("\"\"") : std::string(1, c);
    id = quoted + "\"";
  }
  os << id << ',' << r.field.name() << ',' << r.degree << ',' << r.n << ',' << to_string(r.kind) << ',' << r.sigma << ','
     << r.incidence_count << ',' << r.bad_points << ',' << r.unresolved;
  return os.str();
}

Json experiment_to_json(const ExperimentDoc& e) {
  return {{"schema", kSchemaVersion}, {"family", e.family}, {"vary", e.vary},         {"values", e.values},
          {"params", params_json(e.base)}, {"kind", e.kind}, {"s", e.s},             {"metric", e.metric},
          {"csv", e.csv_out},         {"json", e.json_out}};
}

ExperimentDoc experiment_from_json(const Json& j) {
  try {
    ExperimentDoc e;
    if (j.value("schema", kSchemaVersion) != kSchemaVersion) throw PreconditionError("unsupported schema version");
    e.family = j.at("family").get<std::string>();
    e.vary = j.value("vary", std::string("n"));
    e.values = j.at("values").get<std::vector<std::uint64_t>>();
    if (j.contains("params")) e.base = params_from(j.at("params"));
    e.kind = j.value("kind", std::string("tangency"));
    e.s = j.value("s", 2);
    e.metric = j.value("metric", std::string("sigma"));
    e.csv_out = j.value("csv", std::string());
    e.json_out = j.value("json", std::string());
    return e;
  } catch (const Json::exception& ex) {
    throw PreconditionError(std::string("malformed experiment document: ") + ex.what());
  }
}

CountReport analyze(const std::vector<PlaneCurve>& curves, const std::string& kind, int s, const CountOptions& opt) {
  if (kind == "tangency") return directed_tangencies(curves, opt);
  if (kind == "orthogonality") return directed_orthogonalities(curves, opt);
  if (kind == "s-tangency") return higher_order_tangencies(curves, s, opt);
  throw PreconditionError("unknown kind '" + kind + "'");
}

Json vanishing_fit_to_json(const LiftFit& f) {
  return {{"schema", kSchemaVersion},
          {"degree", f.fit.degree},
          {"R", format_poly(f.fit.r)},
          {"samples", f.fit.samples.size()},
          {"per-curve", f.per_curve},
          {"nullity", f.fit.nullity},
          {"minimal", f.fit.minimal},
          {"heldout", f.heldout},
          {"heldout-vanishing", f.heldout_vanishing},
          {"heldout-ok", f.heldout_ok()}};
}

SweepResult run_sweep(const ExperimentDoc& e, int threads) {
  if (e.values.empty()) throw PreconditionError("empty sweep");
  SweepResult out;
  const bool poly = e.kind == "polymethod";
  out.csv.push_back(poly ? "arrangement-id,field,n,degree,per-curve,nullity,heldout-ok" : csv_header());
  Json rows = Json::array();
  for (std::uint64_t v : e.values) {
    FamilyParams params = e.base;
    if (e.vary == "p") {
      params.p = v;
    } else if (e.vary == "q") {
      params.q = v;
    } else if (e.vary == "n") {
      params.n = static_cast<int>(v);
    } else if (e.vary == "m") {
      params.m = static_cast<int>(v);
    } else {
      throw PreconditionError("cannot sweep over '" + e.vary + "'");
    }
    const Family fam = make_family(e.family, params);
    const std::string id = e.family + ":" + param_label(params);
    const double n = static_cast<double>(fam.curves.size());
    if (poly) {
      std::vector<LiftedCurve> lifts;
      for (const auto& c : fam.curves) lifts.push_back(lift_curve(c, LiftKind::tangency(1)));
      FitOptions fo;
      fo.threads = threads;
      const LiftFit fit = fit_lifts(lifts, 8 * static_cast<int>(std::ceil(std::sqrt(n))) + 8, 20, fo);
      const std::string field = fam.curves.front().field().name();
      out.csv.push_back(id + "," + field + "," + std::to_string(fam.curves.size()) + "," + std::to_string(fit.fit.degree) +
                        "," + std::to_string(fit.per_curve) + "," + std::to_string(fit.fit.nullity) + "," +
                        (fit.heldout_ok() ? "true" : "false"));
      Json row = vanishing_fit_to_json(fit);
      row["arrangement-id"] = id;
      row.erase("R");
      rows.push_back(std::move(row));
      out.points.emplace_back(n, static_cast<double>(fit.fit.degree));
      continue;
    }
    CountOptions opt;
    opt.arrangement_id = id;
    opt.threads = threads;
    const CountReport r = analyze(fam.curves, e.kind, e.s, opt);
    out.csv.push_back(csv_row(r));
    Json row = report_to_json(r);
    row.erase("points");
    rows.push_back(std::move(row));
    double metric = static_cast<double>(r.sigma);
    if (e.metric == "tangent-pairs") {
      metric = static_cast<double>(r.tangent_pairs);
    } else if (e.metric == "incidences") {
      metric = static_cast<double>(r.incidence_count);
    } else if (e.metric != "sigma") {
      throw PreconditionError("unknown metric '" + e.metric + "'");
    }
    out.points.emplace_back(n, metric);
  }
  std::vector<std::pair<double, double>> positive;
  for (const auto& pt : out.points) {
    if (pt.first > 0 && pt.second > 0) positive.push_back(pt);
  }
  out.fit = fit_exponent(positive);
  out.json = {{"schema", kSchemaVersion},
              {"experiment", experiment_to_json(e)},
              {"rows", rows},
              {"fit", {{"slope", out.fit.slope}, {"intercept", out.fit.intercept}, {"residual", out.fit.residual}}}};
  return out;
}

}  // namespace tangency
