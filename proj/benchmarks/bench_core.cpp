#include <benchmark/benchmark.h>

#include <vector>

#include "rit/bounds.hpp"
#include "rit/engine.hpp"
#include "rit/geometry.hpp"
#include "rit/reachability_graph.hpp"
#include "rit/rng.hpp"
#include "rit/tour.hpp"

namespace {

std::vector<rit::DagItem> band_items(int n, std::uint64_t seed) {
  rit::SplitMix64 rng(seed);
  std::vector<rit::DagItem> items(n);
  for (int i = 0; i < n; ++i)
    items[i] = {i, 3.0 + 17.0 * rng.uniform01(),
                rit::kTwoPi * rng.uniform01()};
  return items;
}

void BM_Intercept(benchmark::State& state) {
  rit::SplitMix64 rng(7);
  for (auto _ : state) {
    rit::Vec2 p{10.0 * rng.uniform01() - 5.0, 10.0 * rng.uniform01() - 5.0};
    benchmark::DoNotOptimize(
        rit::intercept(p, 5.0 + 15.0 * rng.uniform01(),
                       rit::kTwoPi * rng.uniform01(), 0.5));
  }
}
BENCHMARK(BM_Intercept);

void BM_Erf(benchmark::State& state) {
  double x = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(rit::erf(x));
    x += 1e-6;
  }
}
BENCHMARK(BM_Erf);

void BM_BuildGraph(benchmark::State& state) {
  auto items = band_items(static_cast<int>(state.range(0)), 11);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        rit::build_reachability_graph(0.0, items, 0.5, 3.0));
}
BENCHMARK(BM_BuildGraph)->Arg(100)->Arg(1000);

void BM_LongestPath(benchmark::State& state) {
  auto items = band_items(static_cast<int>(state.range(0)), 13);
  rit::ReachabilityDag dag = rit::build_reachability_graph(0.0, items, 0.5, 3.0);
  for (auto _ : state) benchmark::DoNotOptimize(rit::longest_path(dag));
}
BENCHMARK(BM_LongestPath)->Arg(1000)->Arg(10000);

void BM_TourHeuristic(benchmark::State& state) {
  rit::SplitMix64 rng(17);
  std::vector<rit::Vec2> pts(state.range(0));
  for (rit::Vec2& p : pts)
    p = {18.0 * rng.uniform01() - 9.0, 18.0 * rng.uniform01() - 9.0};
  for (auto _ : state)
    benchmark::DoNotOptimize(rit::emhp_heuristic({0.0, 0.0}, pts));
}
BENCHMARK(BM_TourHeuristic)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_FcfsRun(benchmark::State& state) {
  rit::SimConfig cfg;
  cfg.lambda = 1.0;
  cfg.v = 0.5;
  cfg.horizon = 200.0;
  cfg.seed = 21;
  for (auto _ : state)
    benchmark::DoNotOptimize(rit::run_simulation(cfg, "fcfs"));
}
BENCHMARK(BM_FcfsRun)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
