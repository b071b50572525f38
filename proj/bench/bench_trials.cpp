// SPDX-License-Identifier: Apache-2.0
//
// Serial reference against the OpenMP trial loop on one Rayleigh grid point.
#include <benchmark/benchmark.h>

#include "ris/harness.hpp"

namespace {

ris::ExperimentSpec bench_spec(int n_i) {
  ris::ExperimentSpec spec;
  spec.scenario.kind = ris::FadingKind::kRayleigh;
  spec.l_grid = {2};
  spec.n_i_grid = {n_i};
  spec.trials = 32;
  spec.models = {ris::ModelSelection::kPhysics, ris::ModelSelection::kWidelyUsed};
  spec.architectures = {ris::Architecture::kDiagonal};
  return spec;
}

void BM_TrialsSerial(benchmark::State& state) {
  const auto spec = bench_spec(static_cast<int>(state.range(0)));
  const auto point = ris::grid_points(spec).front();
  for (auto _ : state) benchmark::DoNotOptimize(ris::run_point_serial(spec, point));
  state.SetItemsProcessed(state.iterations() * spec.trials);
}

void BM_TrialsParallel(benchmark::State& state) {
  const auto spec = bench_spec(static_cast<int>(state.range(0)));
  const auto point = ris::grid_points(spec).front();
  const int threads = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(ris::run_point_parallel(spec, point, threads));
  state.SetItemsProcessed(state.iterations() * spec.trials);
}

}  // namespace

BENCHMARK(BM_TrialsSerial)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TrialsParallel)->Args({16, 2})->Args({16, 4})->Args({32, 2})->Args({32, 4})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
