#include <benchmark/benchmark.h>

#include "tangency/counting.hpp"
#include "tangency/families.hpp"
#include "tangency/kernels.hpp"
#include "tangency/polymethod.hpp"

using namespace tangency;

namespace {

const std::vector<PlaneCurve>& circles(std::uint64_t p) {
  static std::map<std::uint64_t, std::vector<PlaneCurve>> cache;
  auto it = cache.find(p);
  if (it == cache.end()) it = cache.emplace(p, gen_unit_circles_fp(p).curves).first;
  return it->second;
}

std::vector<SpacePoint> lift_samples(int n) {
  std::vector<LiftedCurve> lifts;
  for (const auto& c : gen_unit_circles_subset(499, n, 0).curves) lifts.push_back(lift_curve(c, LiftKind::tangency(1)));
  int bound = 1;
  for (const auto& l : lifts) bound = std::max(bound, l.degree_bound());
  return sample_lift_points(lifts, bound * pigeonhole_degree(n, bound) + 1);
}

void BM_ScanSerial(benchmark::State& state) {
  const auto& cs = circles(static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(scan_hits_serial(cs));
}

void BM_ScanParallel(benchmark::State& state) {
  const auto& cs = circles(static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(scan_hits_parallel(cs));
}

void BM_TangencySerial(benchmark::State& state) {
  const auto& cs = circles(static_cast<std::uint64_t>(state.range(0)));
  CountOptions opt;
  opt.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(directed_tangencies(cs, opt).sigma);
}

void BM_TangencyParallel(benchmark::State& state) {
  const auto& cs = circles(static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(directed_tangencies(cs).sigma);
}

void BM_FitSerial(benchmark::State& state) {
  const auto pts = lift_samples(static_cast<int>(state.range(0)));
  FitOptions opt;
  opt.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(min_vanishing_poly(pts, 40, opt).degree);
}

void BM_FitParallel(benchmark::State& state) {
  const auto pts = lift_samples(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(min_vanishing_poly(pts, 40).degree);
}

}  // namespace

BENCHMARK(BM_ScanSerial)->Arg(31)->Arg(61)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScanParallel)->Arg(31)->Arg(61)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TangencySerial)->Arg(31)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TangencyParallel)->Arg(31)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FitSerial)->Arg(4)->Arg(9)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FitParallel)->Arg(4)->Arg(9)->Arg(16)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
