// Copyright 2026 The mgl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Serial vs OpenMP seed loop on the standard experiments.
#include <benchmark/benchmark.h>

#include "mgl/harness.hpp"
#include "mgl/presets.hpp"

namespace {

mgl::RunConfig config(int which, std::int64_t seeds) {
  mgl::RunConfig c;
  switch (which) {
    case 0: c = mgl::rps_selfplay("ucb"); break;
    case 1: c = mgl::rps_selfplay("klearn"); break;
    default: c = mgl::robust_bandit("ts", mgl::RobustOpponent::kNature); break;
  }
  c.seeds = mgl::seed_range(0, static_cast<std::size_t>(seeds));
  c.horizon = 500;
  return c;
}

const char* label(int which) {
  return which == 0 ? "rps_ucb" : which == 1 ? "rps_klearn" : "robust_ts";
}

void BM_Serial(benchmark::State& state) {
  const auto c = config(static_cast<int>(state.range(0)), state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(mgl::run_seeds_serial(c));
  state.SetLabel(label(static_cast<int>(state.range(0))));
  state.SetItemsProcessed(state.iterations() * state.range(1));
}

void BM_Parallel(benchmark::State& state) {
  const auto c = config(static_cast<int>(state.range(0)), state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(mgl::run_seeds(c));
  state.SetLabel(label(static_cast<int>(state.range(0))));
  state.SetItemsProcessed(state.iterations() * state.range(1));
}

}  // namespace

BENCHMARK(BM_Serial)->ArgsProduct({{0, 1, 2}, {16}})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Parallel)->ArgsProduct({{0, 1, 2}, {16}})->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
