#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tangency/counting.hpp"
#include "tangency/families.hpp"
#include "tangency/polymethod.hpp"

namespace tangency {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

/// {"char": p}, "rational" or {"char2ext": k}.
Json field_to_json(const Field& f);
Field field_from_json(const Json& j);

struct CurveEntry {
  std::string poly;  // polynomial text
  Attestation attestation = Attestation::Asserted;
};

struct ArrangementDoc {
  int schema = kSchemaVersion;
  Field field;
  int degree_cap = 8;
  std::vector<CurveEntry> curves;
  std::uint64_t seed = 0;
  std::string id = "arrangement";
};

Json arrangement_to_json(const ArrangementDoc& d);
/// Curve entries are polynomial strings or {"poly", "attestation"} objects.
/// Throws PreconditionError on schema or field problems.
ArrangementDoc arrangement_from_json(const Json& j);

/// Parses every entry; family-attested entries keep their attestation, the
/// rest go through the irreducibility policy. Throws PreconditionError for
/// degrees above the cap.
std::vector<PlaneCurve> resolve_curves(const ArrangementDoc& d);

/// Parameters for generating a family by name; unused ones are ignored.
struct FamilyParams {
  std::optional<std::uint64_t> p;  // prime field size
  std::optional<std::uint64_t> q;  // power-of-two field size
  std::optional<int> n, m;
  std::uint64_t seed = 0;
};

/// unit-circles (p), unit-circles-subset (p, n), char2-parabolas (q, n),
/// grid (n, optional p), coaxial-pencils (m, optional p), incidence-tangency
/// (n). Throws PreconditionError for unknown names or missing parameters.
Family make_family(const std::string& name, const FamilyParams& params);

/// The family written out as a document, curve by curve.
ArrangementDoc family_doc(const std::string& name, const FamilyParams& params);

/// Schema-versioned report; the incidence list is included unless elided.
Json report_to_json(const CountReport& r);

/// arrangement-id,field,D,n,kind,sigma-mult,incidences,bad-points,unresolved
std::string csv_header();
std::string csv_row(const CountReport& r);

struct ExperimentDoc {
  std::string family;
  /// Parameter swept: "p", "q", "n" or "m".
  std::string vary = "n";
  std::vector<std::uint64_t> values;
  FamilyParams base;
  /// tangency | orthogonality | s-tangency | polymethod
  std::string kind = "tangency";
  int s = 2;
  /// sigma | tangent-pairs | incidences (ignored for polymethod, which fits degree)
  std::string metric = "sigma";
  std::string csv_out, json_out;
};

Json experiment_to_json(const ExperimentDoc& e);
ExperimentDoc experiment_from_json(const Json& j);

struct SweepResult {
  std::vector<std::string> csv;  // header first
  /// (curve count, metric) per sweep value.
  std::vector<std::pair<double, double>> points;
  ExponentFit fit;
  Json json;
};

/// Runs the sweep; the fit is taken over all points with a positive metric.
SweepResult run_sweep(const ExperimentDoc& e, int threads = 0);

/// The counting pass named by kind.
CountReport analyze(const std::vector<PlaneCurve>& curves, const std::string& kind, int s, const CountOptions& opt);

Json vanishing_fit_to_json(const LiftFit& f);

}  // namespace tangency
