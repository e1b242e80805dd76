#include <benchmark/benchmark.h>

#include <cmath>

#include "plnodal/annulus.hpp"
#include "plnodal/shooting.hpp"

using namespace plnodal;

namespace {

ProblemSpec cubic_1d(double rmax) {
  return ProblemSpec(2.0, 1, rmax, {{1.0, 4.0, nullptr}});
}

RadialFunction soliton(int m, double rmax) {
  auto grid = make_grid(1, 0.0, rmax, m);
  RadialFunction u;
  u.values.reserve(grid->nodes.size());
  for (double r : grid->nodes) u.values.push_back(std::sqrt(2.0) / std::cosh(r));
  u.grid = std::move(grid);
  u.values.back() = 0.0;
  return u;
}

void BM_Energy(benchmark::State& state) {
  const auto spec = cubic_1d(40.0);
  const auto u = soliton(static_cast<int>(state.range(0)), 40.0);
  for (auto _ : state) benchmark::DoNotOptimize(energy(spec, u));
}
BENCHMARK(BM_Energy)->Arg(1000)->Arg(4000);

void BM_Residual(benchmark::State& state) {
  const auto spec = cubic_1d(40.0);
  const auto u = soliton(static_cast<int>(state.range(0)), 40.0);
  for (auto _ : state) benchmark::DoNotOptimize(residual(spec, u));
}
BENCHMARK(BM_Residual)->Arg(1000)->Arg(4000);

void BM_NehariProject(benchmark::State& state) {
  const auto spec = cubic_1d(40.0);
  const auto u = soliton(2000, 40.0);
  for (auto _ : state) benchmark::DoNotOptimize(project(spec, u));
}
BENCHMARK(BM_NehariProject);

void BM_GroundState(benchmark::State& state) {
  const auto spec = cubic_1d(40.0);
  SolverConfig cfg;
  cfg.grid_m = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto sol = solve_ground_state(spec, 0.0, 40.0, Sign::plus, cfg);
    benchmark::DoNotOptimize(sol.energy);
  }
}
BENCHMARK(BM_GroundState)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_Shoot(benchmark::State& state) {
  const auto spec = cubic_1d(40.0);
  SolverConfig cfg;
  for (auto _ : state) {
    auto t = shoot(spec, 1.3, cfg);
    benchmark::DoNotOptimize(t.node_count);
  }
}
BENCHMARK(BM_Shoot)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
