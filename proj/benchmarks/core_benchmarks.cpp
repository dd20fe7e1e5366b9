#include <benchmark/benchmark.h>

#include <random>

#include "sks/noisy_graph.hpp"
#include "sks/skellam.hpp"
#include "sks/special_functions.hpp"
#include "sks/stein.hpp"
#include "sks/tv_metrics.hpp"

namespace {

void BM_BesselScaled(benchmark::State& state) {
  const double x = static_cast<double>(state.range(0));
  std::int64_t k = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sks::bessel_i(k, x, true));
    k = (k + 1) % 64;
  }
}
BENCHMARK(BM_BesselScaled)->Arg(5)->Arg(50)->Arg(5000);

void BM_SkellamToDist(benchmark::State& state) {
  const double l = static_cast<double>(state.range(0));
  const auto p = sks::SkellamParams::strict(l, 0.5 * l);
  for (auto _ : state) benchmark::DoNotOptimize(sks::to_dist(p, 1e-12));
}
BENCHMARK(BM_SkellamToDist)->Arg(1)->Arg(100)->Arg(10000);

void BM_Convolve(benchmark::State& state) {
  const auto a = sks::to_dist(sks::SkellamParams::strict(static_cast<double>(state.range(0)), 3.0), 1e-14);
  const auto b = sks::poisson_dist(static_cast<double>(state.range(0)), 1e-14);
  for (auto _ : state) benchmark::DoNotOptimize(sks::convolve(a, b));
}
BENCHMARK(BM_Convolve)->Arg(10)->Arg(1000);

void BM_SteinSolution(benchmark::State& state) {
  const auto p = sks::SkellamParams::strict(5, 3);
  const auto f = sks::TestSet::at_least(1);
  for (auto _ : state) benchmark::DoNotOptimize(sks::stein_solution(p, f, {4, 2}));
}
BENCHMARK(BM_SteinSolution)->Unit(benchmark::kMillisecond);

void BM_KernelSweep(benchmark::State& state) {
  const double l = static_cast<double>(state.range(0));
  const auto p = sks::SkellamParams::strict(l, l);
  const std::int64_t m = sks::default_state_grid(p);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sks::sweep_difference_kernels(p, 0, m, 0, m, 1e-8));
  }
  state.counters["states"] = static_cast<double>((m + 1) * (m + 1));
}
BENCHMARK(BM_KernelSweep)->Arg(1)->Arg(5)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_EdgeDifferenceDist(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto m = sks::graph::NoisyGraphModel::homogeneous(n, 0.3, 0.1, 0.05);
  for (auto _ : state) benchmark::DoNotOptimize(sks::graph::edge_difference_dist(m));
}
BENCHMARK(BM_EdgeDifferenceDist)->Arg(50)->Arg(5000)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
