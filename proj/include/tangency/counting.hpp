#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "tangency/curve.hpp"

namespace tangency {

enum class IncidenceKind : std::uint8_t { Tangency, Orthogonality, HigherTangency };

/// "tangency", "orthogonality", "s-tangency".
std::string to_string(IncidenceKind k);

struct DirectedIncidence {
  Point2 point;
  /// For orthogonality, the smaller of the two canonical representatives
  /// of {l, l-perp}.
  TangentDirection direction;
  IncidenceKind kind = IncidenceKind::Tangency;
  int s = 1;
  /// Curves smooth at the point and tangent to `direction` (to the jet
  /// class for s-tangency), ascending.
  std::vector<int> curves;
  /// Orthogonality only: curves tangent to the perpendicular direction.
  std::vector<int> perp_curves;
  bool isotropic = false;

  int multiplicity() const { return static_cast<int>(curves.size()); }
};

/// Growth bound check: sigma <= constant * D^2 * n^exponent.
struct MonitorResult {
  bool applicable = false;
  double bound = 0;
  bool ok = true;
};

struct CountReport {
  std::string arrangement_id;
  Field field;
  int degree = 0;  // D, the largest curve degree
  int n = 0;
  IncidenceKind kind = IncidenceKind::Tangency;
  int s = 1;
  /// Sum of multiplicities; the number of incidences for orthogonality.
  std::int64_t sigma = 0;
  std::int64_t incidence_count = 0;
  /// Curve pairs realizing the incidences: C(mult, 2) each, or
  /// |curves| * |perp_curves| for a non-isotropic orthogonality.
  std::int64_t tangent_pairs = 0;
  std::vector<DirectedIncidence> incidences;
  bool elided = false;  // list dropped above the cap
  /// Points met by at least two curves where one of them is singular.
  std::int64_t bad_points = 0;
  std::int64_t vertical = 0;   // incidences with a vertical direction
  std::int64_t isotropic = 0;  // orthogonality incidences along isotropic lines
  /// Over Q: pairwise intersections that could not be located.
  std::int64_t unresolved = 0;
  MonitorResult monitor;

  bool partial() const { return unresolved > 0; }
};

struct CountOptions {
  std::string arrangement_id = "arrangement";
  std::size_t incidence_cap = 100000;
  /// 0 = OpenMP default; 1 runs the serial reference path.
  int threads = 0;
  std::uint64_t scan_bound = kScanBound;
  double monitor_constant = 8.0;
  /// The monitor applies when n <= char^s / guard_divisor.
  double guard_divisor = 16.0;
};

/// Directed points of tangency: at least two curves smooth at p with the
/// same tangent line. Vertical tangents count like any other
/// direction and are also tallied. Throws PreconditionError for duplicate
/// (proportional) curves or mixed fields, ScanBoundExceeded for large
/// finite fields.
CountReport directed_tangencies(const std::vector<PlaneCurve>& curves, const CountOptions& opt = {});

/// One incidence per (p, {l, l-perp}) with a curve tangent to l and another
/// tangent to l-perp. An isotropic l needs two curves tangent to it and is
/// flagged. sigma is the incidence count.
CountReport directed_orthogonalities(const std::vector<PlaneCurve>& curves, const CountOptions& opt = {});

/// Classes of curves smooth at p whose branches meet with multiplicity
/// >= s (s = 2 is ordinary tangency). Vertical tangents use the chart
/// x = psi(y). Throws CharacteristicObstruction when s >= char.
CountReport higher_order_tangencies(const std::vector<PlaneCurve>& curves, int s, const CountOptions& opt = {});

struct ExponentFit {
  double slope = 0;
  double intercept = 0;
  double residual = 0;  // sum of squared residuals in log space
};

/// Least-squares slope of log(count) against log(n). Needs two or more
/// samples with distinct n, all positive.
ExponentFit fit_exponent(const std::vector<std::pair<double, double>>& samples);

/// sigma <= c D^2 n^((s+1)/s) (s = 2 for ordinary tangency and
/// orthogonality), applicable over Q or when char > D and
/// n <= char^s / guard_divisor.
MonitorResult tangency_monitor(const Field& f, int degree, int n, std::int64_t sigma, int s = 2,
                               double constant = 8.0, double guard_divisor = 16.0);

}  // namespace tangency
