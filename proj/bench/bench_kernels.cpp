#include <benchmark/benchmark.h>

#include <cmath>

#include "rggmst/config.hpp"
#include "rggmst/mst.hpp"
#include "rggmst/rgg.hpp"
#include "rggmst/sampling.hpp"
#include "rggmst/trial_kernels.hpp"

namespace {

using namespace rggmst;

ExperimentConfig bench_config() {
  ExperimentConfig cfg;
  cfg.alpha = 1.0;
  cfg.weights = WeightSpec::constant(1.0);
  cfg.radius_rule = {RadiusRule::Kind::Power, 1.0, 1.0 / 3.0};
  cfg.a_box = 1.0;
  cfg.master_seed = 7;
  return cfg;
}

Rgg bench_graph(std::uint64_t n) {
  const double r = std::pow(static_cast<double>(n), -1.0 / 3.0);
  return build_rgg(sample_binomial(n, DensitySpec::uniform(), 11), r, WeightSpec::constant(1.0));
}

void BM_TrialsSerial(benchmark::State& state) {
  const auto cfg = bench_config();
  const auto point = prepare_sweep_point(cfg, static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(reference::run_trials_serial(cfg, point, 0, 16));
  }
}

void BM_TrialsParallel(benchmark::State& state) {
  const auto cfg = bench_config();
  const auto point = prepare_sweep_point(cfg, static_cast<std::uint64_t>(state.range(0)));
  const int workers = static_cast<int>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_trials(cfg, point, 0, 16, workers));
  }
}

void BM_KruskalFullSort(benchmark::State& state) {
  const Rgg g = bench_graph(static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(reference::kruskal_full_sort(g).total_weight);
  state.counters["edges"] = static_cast<double>(g.edges().size());
}

void BM_FilterKruskal(benchmark::State& state) {
  const Rgg g = bench_graph(static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(minimum_spanning_forest(g).total_weight);
  state.counters["edges"] = static_cast<double>(g.edges().size());
}

}  // namespace

BENCHMARK(BM_TrialsSerial)->Arg(2000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TrialsParallel)
    ->Args({2000, 1})
    ->Args({2000, 4})
    ->Args({10000, 1})
    ->Args({10000, 4})
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_KruskalFullSort)->Arg(10000)->Arg(50000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FilterKruskal)->Arg(10000)->Arg(50000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
