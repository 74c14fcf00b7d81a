#include <benchmark/benchmark.h>

#include "peerreview/calibration.hpp"
#include "peerreview/mc_validator.hpp"
#include "peerreview/reform_solver.hpp"
#include "peerreview/signal_model.hpp"

using namespace peerreview;

static void BM_threshold_gaussian(benchmark::State& state) {
  const auto c = baseline_calibration();
  for (auto _ : state) {
    benchmark::DoNotOptimize(signal::threshold_and_density(0.4, 0.25, 0.3, c, DensityMode::gaussian_approx));
  }
}
BENCHMARK(BM_threshold_gaussian);

static void BM_threshold_exact(benchmark::State& state) {
  const auto c = baseline_calibration();
  for (auto _ : state) {
    benchmark::DoNotOptimize(signal::threshold_and_density(0.4, 0.25, 0.3, c, DensityMode::exact_convolution));
  }
}
BENCHMARK(BM_threshold_exact);

static void BM_solve_reform(benchmark::State& state) {
  const auto c = baseline_calibration();
  const double gamma = state.range(0) / 100.0;
  for (auto _ : state) benchmark::DoNotOptimize(reform::solve_reform(gamma, c));
}
BENCHMARK(BM_solve_reform)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

static void BM_simulate(benchmark::State& state) {
  const auto c = baseline_calibration();
  mc::SimConfig sim;
  sim.papers = state.range(0);
  sim.replicates = 1;
  for (auto _ : state) benchmark::DoNotOptimize(mc::simulate({2, 0.3, 0.2}, 0.125, 0.5, c, sim));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_simulate)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
