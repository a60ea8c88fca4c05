#include <benchmark/benchmark.h>

#include <memory>
#include <random>
#include <vector>

#include "mid/cubic.hpp"
#include "mid/potential.hpp"
#include "mid/sweep.hpp"
#include "mid/uvsolve.hpp"

namespace {

void BM_Solve(benchmark::State& state) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  std::vector<mid::ScaledParams> pts(1024);
  for (auto& p : pts) p = {u(rng), u(rng)};
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mid::solve(pts[i++ & 1023]));
  }
}
BENCHMARK(BM_Solve);

void BM_Oracle(benchmark::State& state) {
  const mid::ScaledParams sp{-3.1, 0.4};
  for (auto _ : state) benchmark::DoNotOptimize(mid::oracle_roots(sp));
}
BENCHMARK(BM_Oracle);

void BM_RegionMap(benchmark::State& state) {
  mid::SweepSpec s;
  s.mode = mid::SweepMode::RegionMap;
  const int n = static_cast<int>(state.range(0));
  s.ranges = {{"k_hat", -5.0, 5.0, n}, {"beta_hat", -5.0, 5.0, n}};
  for (auto _ : state) benchmark::DoNotOptimize(mid::run_sweep(s));
  state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_RegionMap)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_BranchSweep(benchmark::State& state) {
  const auto s = mid::figure_spec("fig05");
  for (auto _ : state) benchmark::DoNotOptimize(mid::run_sweep(s));
}
BENCHMARK(BM_BranchSweep)->Unit(benchmark::kMillisecond);

void BM_InvertD(benchmark::State& state) {
  const double gamma = state.range(0) / 10.0;
  double x = 0.01;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mid::invert_D(x, 1.0, gamma));
    x = x < 0.4 ? x + 0.001 : 0.01;
  }
}
BENCHMARK(BM_InvertD)->Arg(10)->Arg(20)->Arg(25);

void BM_BuildProfile(benchmark::State& state) {
  const double gamma = state.range(0) / 10.0;
  for (auto _ : state) benchmark::DoNotOptimize(mid::build_profile(gamma, 1.0));
}
BENCHMARK(BM_BuildProfile)->Arg(10)->Arg(25)->Unit(benchmark::kMillisecond);

void BM_Picard(benchmark::State& state) {
  auto pot = std::make_shared<const mid::PotentialProfile>(mid::build_profile(1.0, 1.0));
  const double delta = mid::choose_delta(*pot);
  for (auto _ : state) benchmark::DoNotOptimize(mid::picard_solve_local(pot, 0.0, 1.4142135623730951, delta));
}
BENCHMARK(BM_Picard)->Unit(benchmark::kMillisecond);

void BM_Continuation(benchmark::State& state) {
  auto pot = std::make_shared<const mid::PotentialProfile>(mid::build_profile(1.0, 1.0));
  const auto local = mid::picard_solve_local(pot, 0.0, 1.4142135623730951, mid::choose_delta(*pot));
  for (auto _ : state) benchmark::DoNotOptimize(mid::continue_solution(local, 5.0));
}
BENCHMARK(BM_Continuation)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
