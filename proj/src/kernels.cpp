#include "tangency/kernels.hpp"

#include <omp.h>

#include <algorithm>

namespace tangency {

namespace {

std::vector<CompiledCurve::Term> compile_terms(const BivarPoly& p) {
  std::vector<CompiledCurve::Term> out;
  out.reserve(p.term_count());
  for (const auto& [e, c] : p.terms()) out.push_back({e[0], e[1], c.raw()});
  return out;
}

std::uint64_t eval_terms(const Field& f, const std::vector<CompiledCurve::Term>& terms,
                         const std::vector<std::uint64_t>& xp, const std::vector<std::uint64_t>& yp) {
  std::uint64_t acc = 0;
  for (const auto& t : terms) acc = f.add(acc, f.mul(t.c, f.mul(xp[t.ex], yp[t.ey])));
  return acc;
}

std::vector<std::uint64_t> powers(const Field& f, std::uint64_t v, int d) {
  std::vector<std::uint64_t> out(d + 1, 1);
  for (int i = 1; i <= d; ++i) out[i] = f.mul(out[i - 1], v);
  return out;
}

const Field& check_scan(const std::vector<PlaneCurve>& curves, std::uint64_t scan_bound) {
  if (curves.empty()) throw PreconditionError("empty arrangement");
  const Field& f = curves.front().field();
  if (!f.is_finite()) throw PreconditionError("point scan needs a finite field");
  if (f.size() > scan_bound) {
    throw ScanBoundExceeded(f.name() + " exceeds the scan bound " + std::to_string(scan_bound));
  }
  for (const auto& c : curves) {
    if (!(c.field() == f)) throw FieldMismatch("arrangement mixes fields");
  }
  return f;
}

// Hits on the vertical line x = x0, in (y, curve) order.
void scan_column(const Field& f, const std::vector<CompiledCurve>& cc, std::uint64_t x0,
                 std::vector<PointHit>& out) {
  const std::uint64_t q = f.size();
  int dx = 0, dy = 0;
  for (const auto& c : cc) {
    dx = std::max(dx, c.deg_x);
    dy = std::max(dy, c.deg_y);
  }
  const std::vector<std::uint64_t> xp = powers(f, x0, dx);
  // P(x0, y) as coefficients in y, per curve.
  std::vector<std::vector<std::uint64_t>> col(cc.size());
  for (std::size_t i = 0; i < cc.size(); ++i) {
    col[i].assign(cc[i].deg_y + 1, 0);
    for (const auto& t : cc[i].p) col[i][t.ey] = f.add(col[i][t.ey], f.mul(t.c, xp[t.ex]));
  }
  for (std::uint64_t y0 = 0; y0 < q; ++y0) {
    std::vector<std::uint64_t> yp;
    for (std::size_t i = 0; i < cc.size(); ++i) {
      std::uint64_t v = 0;
      for (auto it = col[i].rbegin(); it != col[i].rend(); ++it) v = f.add(f.mul(v, y0), *it);
      if (v != 0) continue;
      if (yp.empty()) yp = powers(f, y0, dy);
      out.push_back({x0, y0, static_cast<int>(i), eval_terms(f, cc[i].px, xp, yp), eval_terms(f, cc[i].py, xp, yp)});
    }
  }
}

}  // namespace

CompiledCurve compile_curve(const PlaneCurve& c) {
  CompiledCurve out;
  out.p = compile_terms(c.poly());
  out.px = compile_terms(c.px());
  out.py = compile_terms(c.py());
  out.deg_x = std::max(c.poly().degree_in(0), 0);
  out.deg_y = std::max(c.poly().degree_in(1), 0);
  return out;
}

std::vector<PointHit> scan_hits_serial(const std::vector<PlaneCurve>& curves, std::uint64_t scan_bound) {
  const Field& f = check_scan(curves, scan_bound);
  std::vector<CompiledCurve> cc;
  for (const auto& c : curves) cc.push_back(compile_curve(c));
  std::vector<PointHit> out;
  for (std::uint64_t x0 = 0; x0 < f.size(); ++x0) scan_column(f, cc, x0, out);
  return out;
}

std::vector<PointHit> scan_hits_parallel(const std::vector<PlaneCurve>& curves, int threads,
                                         std::uint64_t scan_bound) {
  const Field f = check_scan(curves, scan_bound);
  std::vector<CompiledCurve> cc;
  for (const auto& c : curves) cc.push_back(compile_curve(c));
  const auto q = static_cast<std::int64_t>(f.size());
  std::vector<std::vector<PointHit>> columns(q);
  if (threads <= 0) threads = omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (std::int64_t x0 = 0; x0 < q; ++x0) scan_column(f, cc, static_cast<std::uint64_t>(x0), columns[x0]);
  std::vector<PointHit> out;
  for (auto& c : columns) out.insert(out.end(), c.begin(), c.end());
  return out;
}

}  // namespace tangency
