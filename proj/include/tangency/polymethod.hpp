#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "tangency/lift.hpp"

namespace tangency {

/// A minimal-degree polynomial through a point set.
struct VanishingFit {
  int degree = -1;
  /// Monic in its grlex-leading term, which is the first monomial (ascending
  /// grlex) dependent on the smaller ones.
  TrivarPoly r;
  std::vector<SpacePoint> samples;
  /// Dimension of the space of degree <= `degree` polynomials through the samples.
  int nullity = 0;
  /// Degree - 1 admits only the zero polynomial.
  bool minimal = false;
};

struct FitOptions {
  /// 0 = OpenMP default; 1 runs the serial reference elimination.
  int threads = 0;
  /// Columns reduced together before sequential insertion.
  int batch = 64;
};

/// Every good fiber point of the lift, ordered by plane point. Finite fields
/// only; ScanBoundExceeded past the scan bound.
std::vector<SpacePoint> good_fiber_points(const LiftedCurve& l, std::uint64_t scan_bound = kScanBound);

/// m points per lift, spread evenly through good_fiber_points. Throws
/// PreconditionError when a lift has fewer than m good points.
std::vector<SpacePoint> sample_lift_points(const std::vector<LiftedCurve>& lifts, int m_per_curve);

/// Smallest d <= dmax with a nonzero polynomial of degree <= d vanishing on
/// every point. Exact: modular elimination over prime fields, fraction-free
/// over Q, plain elimination over GF(2^k). Throws NoVanishingPolynomial.
VanishingFit min_vanishing_poly(const std::vector<SpacePoint>& points, int dmax, const FitOptions& opt = {});

/// Independent dense re-check: true when only the zero polynomial of degree
/// <= d vanishes on the points (always true for d < 0).
bool only_zero_vanishes(const std::vector<SpacePoint>& points, int d);

/// Smallest d whose monomial count exceeds n (bound d + 1) samples: the
/// degree at which a fit over Bezout-sufficient samples must succeed.
int pigeonhole_degree(int n, int bound);

struct LiftFit {
  VanishingFit fit;
  int per_curve = 0;
  /// Held-out good fiber points per lift and how many R vanishes on.
  std::vector<int> heldout, heldout_vanishing;

  bool heldout_ok() const { return heldout == heldout_vanishing; }
};

/// Fit over lifts with enough samples per curve (bound * d + 1 for the
/// largest Bezout bound) that a degree-d polynomial through them contains
/// every lift, then evaluate R at up to `heldout` further points per lift.
LiftFit fit_lifts(const std::vector<LiftedCurve>& lifts, int dmax, int heldout = 20, const FitOptions& opt = {});

struct DzReport {
  TrivarPoly dz;
  bool identically_zero = false;
  /// dR/dz at each supplied point.
  std::vector<bool> vanishes_at;
  /// Fraction of good fiber points of each lift where dR/dz vanishes; over Q
  /// only the supplied points lying on the lift are used.
  std::vector<double> lift_fraction;

  bool all_points_vanish() const;
};

DzReport dz_vanishing_report(const TrivarPoly& r, const std::vector<LiftedCurve>& lifts,
                             const std::vector<SpacePoint>& points);

}  // namespace tangency
