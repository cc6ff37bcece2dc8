#pragma once

#include <cstdint>
#include <vector>

#include "tangency/curve.hpp"

namespace tangency {

/// A curve through a base-field point, with its gradient there. Coordinates
/// and gradient entries are raw words; gx = gy = 0 marks a singular point.
struct PointHit {
  std::uint64_t x = 0, y = 0;
  int curve = 0;
  std::uint64_t gx = 0, gy = 0;

  bool singular() const { return gx == 0 && gy == 0; }
  bool operator==(const PointHit&) const = default;
};

/// A curve compiled to raw-word term lists for fast evaluation.
struct CompiledCurve {
  struct Term {
    int ex, ey;
    std::uint64_t c;
  };
  std::vector<Term> p, px, py;
  int deg_x = 0, deg_y = 0;
};

CompiledCurve compile_curve(const PlaneCurve& c);

/// Every (point, curve) incidence over a finite field, sorted by (x, y,
/// curve) in raw-word order. Throws ScanBoundExceeded past `scan_bound`
/// field elements and PreconditionError over Q.
std::vector<PointHit> scan_hits_serial(const std::vector<PlaneCurve>& curves, std::uint64_t scan_bound = kScanBound);

/// Same result, with the x-coordinates split across OpenMP threads
/// (0 = runtime default).
std::vector<PointHit> scan_hits_parallel(const std::vector<PlaneCurve>& curves, int threads = 0,
                                         std::uint64_t scan_bound = kScanBound);

}  // namespace tangency
