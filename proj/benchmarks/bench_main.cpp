#include <benchmark/benchmark.h>

#include <cmath>

#include "slowlight/kramers_kronig.hpp"
#include "slowlight/medium.hpp"
#include "slowlight/propagate_fd.hpp"
#include "slowlight/propagate_td.hpp"

using namespace slowlight;

static void BM_ForwardTransform(benchmark::State& state) {
  const auto grid = TimeGrid::centered(0.02, static_cast<std::size_t>(state.range(0)));
  const auto pulse = synthesize_pulse({PulseShape::gaussian, Duration{0.65}}, grid);
  for (auto _ : state) benchmark::DoNotOptimize(forward_transform(pulse));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ForwardTransform)->RangeMultiplier(4)->Range(1 << 10, 1 << 16)->Complexity();

static void BM_FdPropagate(benchmark::State& state) {
  const auto grid = TimeGrid::centered(0.02, 1 << 14);
  const auto pulse = synthesize_pulse({PulseShape::flat_top_spectrum, Bandwidth{1.8}}, grid);
  const auto h = transfer_function(sample_chi(from_target_depth(2.5, 1.0, 6.8, 1.0, 1.0), grid.conjugate()), 1.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(propagate(pulse, h));
}
BENCHMARK(BM_FdPropagate);

static void BM_TdSolve(benchmark::State& state) {
  const auto grid = TimeGrid::centered(0.02, 1 << 14);
  const auto pulse = synthesize_pulse({PulseShape::flat_top_spectrum, Bandwidth{1.8}}, grid);
  const auto medium = from_target_depth(2.5, 1.0, 6.8, 1.0, 1.0);
  const SolverSettings settings{static_cast<std::size_t>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(solve(medium, ControlField::constant(), pulse, settings));
}
BENCHMARK(BM_TdSolve)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

static void BM_KramersKronig(benchmark::State& state) {
  const auto grid = FrequencyGrid::spanning(136.0, static_cast<std::size_t>(state.range(0)));
  const auto chi = sample_chi(from_target_depth(2.5, 1.0, 6.8, 1.0, 1.0), grid);
  const auto depth = depth_from_susceptibility(chi, 1.0, 1.0, 765.0);
  for (auto _ : state) benchmark::DoNotOptimize(kk_real_from_imag(depth, 1.0, 1.0));
}
BENCHMARK(BM_KramersKronig)->Arg(1 << 12)->Arg(1 << 14);

BENCHMARK_MAIN();
