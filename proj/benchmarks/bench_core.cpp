// Copyright 2026 The asrscale Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <random>

#include "asrscale/analysis.hpp"
#include "asrscale/flops.hpp"
#include "asrscale/metrics.hpp"
#include "asrscale/runs.hpp"
#include "asrscale/scaling.hpp"

namespace {

using namespace asrscale;

std::u32string random_text(std::mt19937& rng, std::size_t n) {
  std::uniform_int_distribution<int> c(0x4E00, 0x4E00 + 200);
  std::u32string s;
  for (std::size_t i = 0; i < n; ++i) s.push_back(static_cast<char32_t>(c(rng)));
  return s;
}

void BM_EditDistance(benchmark::State& state) {
  std::mt19937 rng(1);
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = random_text(rng, n), b = random_text(rng, n);
  for (auto _ : state) benchmark::DoNotOptimize(edit_distance(a, b));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_EditDistance)->RangeMultiplier(4)->Range(16, 1024)->Complexity(benchmark::oNSquared);

void BM_NormalizeText(benchmark::State& state) {
  const std::string text = "今天 天气 很好，我们 去 公园 散步 吧。 ABC ｆｕｌｌ－ｗｉｄｔｈ";
  for (auto _ : state) benchmark::DoNotOptimize(normalize_text(text));
}
BENCHMARK(BM_NormalizeText);

std::vector<SamplePoint> efin_points() {
  std::vector<SamplePoint> out;
  for (const auto& r : load_fixtures(3)) {
    if (r.strategy_id == "S5-preliminary") out.push_back({r.total_flops, average_cer(r.scores)});
  }
  return out;
}

void BM_FitLogLog(benchmark::State& state) {
  const auto pts = efin_points();
  for (auto _ : state) benchmark::DoNotOptimize(fit_power_law(pts, FitMethod::kLogLogOls));
}
BENCHMARK(BM_FitLogLog);

void BM_FitNonlinear(benchmark::State& state) {
  const auto pts = efin_points();
  for (auto _ : state) benchmark::DoNotOptimize(fit_power_law(pts, FitMethod::kNonlinearLs));
}
BENCHMARK(BM_FitNonlinear);

void BM_FitSaturating(benchmark::State& state) {
  SaturatingFitConfig cfg;
  cfg.grid_size = static_cast<std::size_t>(state.range(0));
  const auto pts = efin_points();
  for (auto _ : state) benchmark::DoNotOptimize(fit_saturating_power_law(pts, cfg));
}
BENCHMARK(BM_FitSaturating)->Arg(100)->Arg(1000)->Arg(10000);

void BM_ParetoFrontier(benchmark::State& state) {
  std::mt19937 rng(2);
  std::uniform_real_distribution<double> u(1.0, 100.0);
  std::vector<StrategyOutcome> outcomes;
  for (int i = 0; i < state.range(0); ++i) outcomes.push_back({"s" + std::to_string(i), 1, u(rng), u(rng)});
  for (auto _ : state) benchmark::DoNotOptimize(pareto_frontier(outcomes));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ParetoFrontier)->RangeMultiplier(8)->Range(8, 32768)->Complexity(benchmark::oNLogN);

void BM_StrategyFlops(benchmark::State& state) {
  const auto arch = default_architecture();
  const auto strategies = builtin_strategies(arch);
  for (auto _ : state) {
    for (const auto& s : strategies) benchmark::DoNotOptimize(strategy_flops(s, arch));
  }
}
BENCHMARK(BM_StrategyFlops);

}  // namespace

BENCHMARK_MAIN();
