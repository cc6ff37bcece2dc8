#include "tangency/counting.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <map>
#include <omp.h>

#include "tangency/intersect.hpp"
#include "tangency/jets.hpp"
#include "tangency/kernels.hpp"

namespace tangency {

namespace {

struct Member {
  int curve;
  Scalar gx, gy;

  bool singular() const { return gx.is_zero() && gy.is_zero(); }
  TangentDirection direction() const { return TangentDirection(gy, -gx); }
};

// A base-field point met by at least two curves.
struct PointGroup {
  Point2 point;
  std::vector<Member> members;  // ascending curve index
};

int threads_for(const CountOptions& opt) { return opt.threads > 0 ? opt.threads : omp_get_max_threads(); }

const Field& validate(const std::vector<PlaneCurve>& curves) {
  static const Field q = Field::rational();
  if (curves.empty()) return q;
  const Field& f = curves.front().field();
  for (std::size_t i = 0; i < curves.size(); ++i) {
    if (!(curves[i].field() == f)) throw FieldMismatch("arrangement mixes fields");
    for (std::size_t j = 0; j < i; ++j) {
      if (proportional(curves[i].poly(), curves[j].poly())) {
        throw PreconditionError("duplicate curves " + std::to_string(j) + " and " + std::to_string(i));
      }
    }
  }
  return f;
}

std::vector<PointGroup> groups_finite(const std::vector<PlaneCurve>& curves, const CountOptions& opt) {
  const Field& f = curves.front().field();
  const std::vector<PointHit> hits =
      opt.threads == 1 ? scan_hits_serial(curves, opt.scan_bound) : scan_hits_parallel(curves, opt.threads, opt.scan_bound);
  std::vector<PointGroup> out;
  for (std::size_t i = 0; i < hits.size();) {
    std::size_t j = i;
    while (j < hits.size() && hits[j].x == hits[i].x && hits[j].y == hits[i].y) ++j;
    if (j - i >= 2) {
      PointGroup g{{Scalar::from_raw(f, hits[i].x), Scalar::from_raw(f, hits[i].y)}, {}};
      for (std::size_t k = i; k < j; ++k) {
        g.members.push_back({hits[k].curve, Scalar::from_raw(f, hits[k].gx), Scalar::from_raw(f, hits[k].gy)});
      }
      out.push_back(std::move(g));
    }
    i = j;
  }
  return out;
}

template <typename Fn>
void parallel_for(int n, int threads, Fn&& fn) {
  std::vector<std::exception_ptr> errors(n);
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (int k = 0; k < n; ++k) {
    try {
      fn(k);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::vector<PointGroup> groups_rational(const std::vector<PlaneCurve>& curves, const CountOptions& opt,
                                        std::int64_t& unresolved) {
  const int n = static_cast<int>(curves.size());
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  }
  const int threads = opt.threads == 1 ? 1 : threads_for(opt);
  std::vector<CommonPoints> found(pairs.size());
  parallel_for(static_cast<int>(pairs.size()), threads, [&](int k) {
    found[k] = common_points(curves[pairs[k].first].poly(), curves[pairs[k].second].poly());
  });
  std::vector<Point2> candidates;
  unresolved = 0;
  for (const auto& cp : found) {
    unresolved += cp.unresolved;
    candidates.insert(candidates.end(), cp.points.begin(), cp.points.end());
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  std::vector<PointGroup> out(candidates.size());
  parallel_for(static_cast<int>(candidates.size()), threads, [&](int k) {
    out[k].point = candidates[k];
    const auto a = candidates[k].arr();
    for (int i = 0; i < n; ++i) {
      if (!curves[i].contains(candidates[k])) continue;
      out[k].members.push_back({i, curves[i].px().eval(a), curves[i].py().eval(a)});
    }
  });
  return out;
}

struct Collected {
  std::vector<PointGroup> groups;
  std::int64_t bad_points = 0;
  std::int64_t unresolved = 0;
};

// Point groups with singular members removed; bad points tallied.
Collected collect(const std::vector<PlaneCurve>& curves, const CountOptions& opt) {
  Collected c;
  if (curves.size() < 2) return c;
  c.groups = curves.front().field().is_finite() ? groups_finite(curves, opt) : groups_rational(curves, opt, c.unresolved);
  for (auto& g : c.groups) {
    const auto before = g.members.size();
    std::erase_if(g.members, [](const Member& m) { return m.singular(); });
    if (g.members.size() != before) ++c.bad_points;
  }
  return c;
}

CountReport base_report(const std::vector<PlaneCurve>& curves, IncidenceKind kind, int s, const CountOptions& opt) {
  CountReport r;
  r.arrangement_id = opt.arrangement_id;
  r.field = curves.empty() ? Field::rational() : curves.front().field();
  r.n = static_cast<int>(curves.size());
  for (const auto& c : curves) r.degree = std::max(r.degree, c.degree());
  r.kind = kind;
  r.s = s;
  return r;
}

void finish(CountReport& r, std::vector<std::vector<DirectedIncidence>>& per_point, const Collected& c,
            const CountOptions& opt, int monitor_s) {
  r.bad_points = c.bad_points;
  r.unresolved = c.unresolved;
  for (auto& list : per_point) {
    std::sort(list.begin(), list.end(), [](const auto& a, const auto& b) { return a.direction < b.direction; });
    for (auto& inc : list) {
      ++r.incidence_count;
      if (inc.kind == IncidenceKind::Orthogonality) {
        r.sigma += 1;
      } else {
        r.sigma += inc.multiplicity();
      }
      const std::int64_t m = inc.multiplicity();
      if (inc.kind == IncidenceKind::Orthogonality && !inc.isotropic) {
        r.tangent_pairs += m * static_cast<std::int64_t>(inc.perp_curves.size());
      } else {
        r.tangent_pairs += m * (m - 1) / 2;
      }
      if (inc.direction.is_vertical()) ++r.vertical;
      if (inc.isotropic) ++r.isotropic;
      r.incidences.push_back(std::move(inc));
    }
  }
  if (r.incidences.size() > opt.incidence_cap) {
    r.incidences.clear();
    r.incidences.shrink_to_fit();
    r.elided = true;
  }
  r.monitor = tangency_monitor(r.field, r.degree, r.n, r.sigma, monitor_s, opt.monitor_constant, opt.guard_divisor);
}

std::map<TangentDirection, std::vector<int>> by_direction(const PointGroup& g) {
  std::map<TangentDirection, std::vector<int>> out;
  for (const auto& m : g.members) out[m.direction()].push_back(m.curve);
  return out;
}

// The same curve with x and y exchanged.
PlaneCurve swapped(const PlaneCurve& c) {
  const Field& f = c.field();
  const Scalar o = Scalar::one(f), z = Scalar::zero(f);
  return PlaneCurve(substitute_linear(c.poly(), {z, o, z, o, z, z}), c.attestation());
}

}  // namespace

std::string to_string(IncidenceKind k) {
  switch (k) {
    case IncidenceKind::Tangency:
      return "tangency";
    case IncidenceKind::Orthogonality:
      return "orthogonality";
    case IncidenceKind::HigherTangency:
      return "s-tangency";
  }
  return "unknown";
}

CountReport directed_tangencies(const std::vector<PlaneCurve>& curves, const CountOptions& opt) {
  validate(curves);
  CountReport r = base_report(curves, IncidenceKind::Tangency, 2, opt);
  const Collected c = collect(curves, opt);
  std::vector<std::vector<DirectedIncidence>> per_point(c.groups.size());
  for (std::size_t k = 0; k < c.groups.size(); ++k) {
    for (auto& [dir, ids] : by_direction(c.groups[k])) {
      if (ids.size() < 2) continue;
      per_point[k].push_back({c.groups[k].point, dir, IncidenceKind::Tangency, 2, ids, {}, false});
    }
  }
  finish(r, per_point, c, opt, 2);
  return r;
}

CountReport directed_orthogonalities(const std::vector<PlaneCurve>& curves, const CountOptions& opt) {
  validate(curves);
  CountReport r = base_report(curves, IncidenceKind::Orthogonality, 2, opt);
  const Collected c = collect(curves, opt);
  std::vector<std::vector<DirectedIncidence>> per_point(c.groups.size());
  for (std::size_t k = 0; k < c.groups.size(); ++k) {
    // canonical representative -> (tangent to it, tangent to its perpendicular)
    std::map<TangentDirection, std::pair<std::vector<int>, std::vector<int>>> buckets;
    for (const auto& m : c.groups[k].members) {
      const TangentDirection d = m.direction();
      const TangentDirection p = d.perp();
      if (p < d) {
        buckets[p].second.push_back(m.curve);
      } else {
        buckets[d].first.push_back(m.curve);
      }
    }
    for (auto& [dir, sides] : buckets) {
      const bool iso = dir.is_isotropic();
      if (iso ? sides.first.size() < 2 : (sides.first.empty() || sides.second.empty())) continue;
      per_point[k].push_back(
          {c.groups[k].point, dir, IncidenceKind::Orthogonality, 2, sides.first, sides.second, iso});
    }
  }
  finish(r, per_point, c, opt, 2);
  return r;
}

CountReport higher_order_tangencies(const std::vector<PlaneCurve>& curves, int s, const CountOptions& opt) {
  if (s < 1) throw PreconditionError("tangency order must be at least 1");
  const Field& f = validate(curves);
  if (f.is_finite() && static_cast<std::uint64_t>(s) >= f.characteristic()) {
    throw CharacteristicObstruction("order " + std::to_string(s) + " tangency needs s < char " + f.name());
  }
  CountReport r = base_report(curves, IncidenceKind::HigherTangency, s, opt);
  const Collected c = collect(curves, opt);
  std::vector<std::vector<DirectedIncidence>> per_point(c.groups.size());
  std::vector<std::optional<PlaneCurve>> swapped_curves(curves.size());
  for (std::size_t k = 0; k < c.groups.size(); ++k) {
    const PointGroup& g = c.groups[k];
    if (s == 1) {
      if (g.members.size() < 2) continue;
      std::vector<int> ids;
      for (const auto& m : g.members) ids.push_back(m.curve);
      per_point[k].push_back({g.point, g.members.front().direction(), IncidenceKind::HigherTangency, s, ids, {}, false});
      continue;
    }
    for (auto& [dir, ids] : by_direction(g)) {
      if (ids.size() < 2) continue;
      if (s == 2) {
        per_point[k].push_back({g.point, dir, IncidenceKind::HigherTangency, s, ids, {}, false});
        continue;
      }
      std::map<std::vector<Scalar>, std::vector<int>> classes;
      for (int id : ids) {
        std::vector<Scalar> key;
        if (dir.is_vertical()) {
          if (!swapped_curves[id]) swapped_curves[id] = swapped(curves[id]);
          key = hensel_phi(*swapped_curves[id], {g.point.y, g.point.x}, s - 1).coefficients();
        } else {
          key = hensel_phi(curves[id], g.point, s - 1).coefficients();
        }
        classes[key].push_back(id);
      }
      for (auto& [key, members] : classes) {
        if (members.size() < 2) continue;
        per_point[k].push_back({g.point, dir, IncidenceKind::HigherTangency, s, members, {}, false});
      }
    }
  }
  finish(r, per_point, c, opt, std::max(s, 2));
  return r;
}

ExponentFit fit_exponent(const std::vector<std::pair<double, double>>& samples) {
  if (samples.size() < 2) throw PreconditionError("exponent fit needs at least two samples");
  std::vector<double> lx, ly;
  for (const auto& [n, c] : samples) {
    if (!(n > 0) || !(c > 0)) throw PreconditionError("exponent fit needs positive samples");
    lx.push_back(std::log(n));
    ly.push_back(std::log(c));
  }
  const double m = static_cast<double>(lx.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sx += lx[i];
    sy += ly[i];
  }
  const double mx = sx / m, my = sy / m;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (sxx == 0) throw PreconditionError("exponent fit needs two distinct n");
  ExponentFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    const double e = ly[i] - (fit.intercept + fit.slope * lx[i]);
    fit.residual += e * e;
  }
  return fit;
}

MonitorResult tangency_monitor(const Field& f, int degree, int n, std::int64_t sigma, int s, double constant,
                               double guard_divisor) {
  MonitorResult m;
  if (f.is_finite()) {
    const auto ch = static_cast<double>(f.characteristic());
    if (ch <= degree || n > std::pow(ch, s) / guard_divisor) return m;
  }
  m.applicable = true;
  m.bound = constant * degree * degree * std::pow(static_cast<double>(n), static_cast<double>(s + 1) / s);
  m.ok = static_cast<double>(sigma) <= m.bound;
  return m;
}

}  // namespace tangency
