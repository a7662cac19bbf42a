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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "asrscale/analysis.hpp"
#include "asrscale/error.hpp"
#include "oracles.hpp"

namespace asrscale {
namespace {

const std::vector<StrategyOutcome> kTable1 = {
    {"S1", 10000, 17.80, 803.77},  {"S2", 10000, 11.31, 1278.39}, {"S3", 10000, 10.425, 1898.16},
    {"S4", 10000, 9.855, 1162.58}, {"S5", 10000, 8.275, 1637.20}, {"S6", 10000, 10.405, 2102.03}};

std::vector<std::string> ids(const std::vector<StrategyOutcome>& v) {
  std::vector<std::string> out;
  for (const auto& o : v) out.push_back(o.strategy_id);
  return out;
}

std::vector<std::string> oracle_ids(const std::vector<StrategyOutcome>& v) {
  std::vector<oracle::Outcome> raw;
  for (const auto& o : v) raw.push_back({o.total_flops, o.avg_cer});
  std::vector<StrategyOutcome> kept;
  for (std::size_t i : oracle::non_dominated(raw)) kept.push_back(v[i]);
  std::stable_sort(kept.begin(), kept.end(),
                   [](const auto& a, const auto& b) { return a.total_flops < b.total_flops; });
  return ids(kept);
}

TEST(Pareto, TableOneFrontier) {
  const auto f = pareto_frontier(kTable1);
  EXPECT_EQ(ids(f), (std::vector<std::string>{"S1", "S4", "S5"}));
  EXPECT_EQ(ids(f), oracle_ids(kTable1));
}

TEST(Pareto, EdgeCases) {
  EXPECT_TRUE(pareto_frontier(std::vector<StrategyOutcome>{}).empty());
  const std::vector<StrategyOutcome> one = {{"A", 1, 5, 10}};
  EXPECT_EQ(pareto_frontier(one), one);
  const std::vector<StrategyOutcome> twins = {{"A", 1, 5, 10}, {"B", 1, 5, 10}};
  EXPECT_EQ(ids(pareto_frontier(twins)), (std::vector<std::string>{"A", "B"}));
  // Same budget, worse error: dominated.
  const std::vector<StrategyOutcome> same_budget = {{"A", 1, 5, 10}, {"B", 1, 6, 10}};
  EXPECT_EQ(ids(pareto_frontier(same_budget)), (std::vector<std::string>{"A"}));
  // Same error, larger budget: dominated.
  const std::vector<StrategyOutcome> same_err = {{"A", 1, 5, 10}, {"B", 1, 5, 12}};
  EXPECT_EQ(ids(pareto_frontier(same_err)), (std::vector<std::string>{"A"}));
}

TEST(Pareto, MatchesOracleOnRandomSetsAndIsIdempotent) {
  std::mt19937 rng(41);
  // Small integer grids force plenty of ties.
  std::uniform_int_distribution<int> v(0, 6);
  for (int iter = 0; iter < 2000; ++iter) {
    std::vector<StrategyOutcome> set;
    const int n = static_cast<int>(rng() % 9);
    for (int i = 0; i < n; ++i) {
      set.push_back({"s" + std::to_string(i), 1, static_cast<double>(v(rng)), static_cast<double>(v(rng))});
    }
    const auto f = pareto_frontier(set);
    ASSERT_EQ(ids(f), oracle_ids(set));
    ASSERT_EQ(pareto_frontier(f), f);
    for (std::size_t i = 1; i < f.size(); ++i) ASSERT_LE(f[i - 1].total_flops, f[i].total_flops);
    for (const auto& a : f) {
      for (const auto& b : f) ASSERT_FALSE(dominates(a, b));
    }
  }
}

TEST(Dominates, Definition) {
  EXPECT_TRUE(dominates({"a", 1, 5, 10}, {"b", 1, 6, 10}));
  EXPECT_TRUE(dominates({"a", 1, 5, 9}, {"b", 1, 5, 10}));
  EXPECT_FALSE(dominates({"a", 1, 5, 10}, {"b", 1, 5, 10}));
  EXPECT_FALSE(dominates({"a", 1, 4, 11}, {"b", 1, 5, 10}));
}

TEST(Compare, HeadlineRatios) {
  const std::vector<StrategyOutcome> set = {
      {"S1", 10000, 17.80, 803.77}, {"S3", 10000, 10.43, 1898.16}, {"S5-preliminary", 10000, 8.23, 948.26}};
  const auto vs3 = compare_strategies(set, "S3");
  ASSERT_EQ(vs3.size(), 3u);
  EXPECT_NEAR(vs3[2].cerr, 0.211, 5e-4);
  EXPECT_NEAR(vs3[2].flops_ratio, 0.499, 1e-3);
  EXPECT_DOUBLE_EQ(vs3[1].cerr, 0.0);
  EXPECT_DOUBLE_EQ(vs3[1].flops_ratio, 1.0);

  const auto vs1 = compare_strategies(set, "S1");
  EXPECT_NEAR(vs1[2].cerr, 0.538, 5e-4);
  EXPECT_NEAR(vs1[2].flops_ratio, 1.18, 1e-3);
}

TEST(Compare, BaselinePerScale) {
  const std::vector<StrategyOutcome> set = {
      {"S1", 2000, 20, 100}, {"S1", 5000, 10, 250}, {"X", 2000, 15, 50}, {"X", 5000, 5, 500}};
  const auto rows = compare_strategies(set, "S1");
  EXPECT_DOUBLE_EQ(rows[2].flops_ratio, 0.5);
  EXPECT_DOUBLE_EQ(rows[3].flops_ratio, 2.0);
  EXPECT_DOUBLE_EQ(rows[3].cerr, 0.5);
}

TEST(Compare, MissingBaselineIsConfigError) {
  EXPECT_THROW(compare_strategies(kTable1, "S9"), ConfigError);
  const std::vector<StrategyOutcome> set = {{"S1", 2000, 20, 100}, {"X", 5000, 5, 500}};
  EXPECT_THROW(compare_strategies(set, "S1"), ConfigError);
}

CheckpointCurve curve_of(const std::vector<double>& cer) {
  CheckpointCurve c;
  for (std::size_t i = 0; i < cer.size(); ++i) {
    c.points.push_back({static_cast<double>(i + 1) * 10.0, cer[i], StageKind::kAlignment});
  }
  return c;
}

TEST(Convergence, ConstructedCurve) {
  const auto c = curve_of({20, 12, 10, 9.8, 9.79});
  const ConvergencePolicy p{2, 0.05, 0.01};
  EXPECT_EQ(detect_convergence(c, p, Convergence::kFull), 4u);
  // 10 -> 9.8 is a 2% step, already under 5%.
  EXPECT_EQ(detect_convergence(c, p, Convergence::kPreliminary), 3u);
}

TEST(Convergence, GeometricNeverConverges) {
  std::vector<double> cer;
  double v = 50.0;
  for (int i = 0; i < 40; ++i, v *= 0.9) cer.push_back(v);
  EXPECT_FALSE(detect_convergence(curve_of(cer), {2, 0.05, 0.01}, Convergence::kPreliminary));
}

TEST(Convergence, ExponentialDecayMatchesScanOracle) {
  std::vector<double> cer;
  for (int k = 0; k < 30; ++k) cer.push_back(8.0 + 12.0 * std::exp(-k / 3.0));
  const ConvergencePolicy p{3, 0.05, 0.01};
  const auto pre = detect_convergence(curve_of(cer), p, Convergence::kPreliminary);
  const auto full = detect_convergence(curve_of(cer), p, Convergence::kFull);
  EXPECT_EQ(pre, oracle::convergence_scan(cer, 3, 0.05));
  EXPECT_EQ(full, oracle::convergence_scan(cer, 3, 0.01));
  EXPECT_EQ(pre, 10u);
  EXPECT_EQ(full, 15u);
}

TEST(Convergence, RandomCurvesMatchScanOracle) {
  std::mt19937 rng(43);
  std::uniform_real_distribution<double> drop(0.0, 0.2);
  for (int iter = 0; iter < 500; ++iter) {
    std::vector<double> cer{30.0};
    const int n = 2 + static_cast<int>(rng() % 20);
    while (static_cast<int>(cer.size()) < n) cer.push_back(cer.back() * (1.0 - drop(rng)));
    const std::size_t w = 2 + rng() % 3;
    if (cer.size() < w) continue;
    const ConvergencePolicy p{w, 0.05, 0.01};
    EXPECT_EQ(detect_convergence(curve_of(cer), p, Convergence::kPreliminary),
              oracle::convergence_scan(cer, w, 0.05));
    EXPECT_EQ(detect_convergence(curve_of(cer), p, Convergence::kFull),
              oracle::convergence_scan(cer, w, 0.01));
  }
}

TEST(Convergence, Errors) {
  EXPECT_THROW(detect_convergence(curve_of({5}), {2, 0.05, 0.01}, Convergence::kFull), InvalidArgument);
  EXPECT_THROW(validate_policy({1, 0.05, 0.01}), InvalidArgument);
  EXPECT_THROW(validate_policy({2, 0.01, 0.05}), InvalidArgument);
  EXPECT_THROW(validate_policy({2, 1.0, 0.01}), InvalidArgument);
  auto c = curve_of({5, 4, 3});
  c.points[2].cumulative_flops = c.points[1].cumulative_flops;
  EXPECT_THROW(validate_curve(c), InvalidArgument);
}

TEST(Decomposition, StrategyOneIsLinearThroughOrigin) {
  const std::vector<StrategyOutcome> s1 = {
      {"S1", 2000, 0, 160.75}, {"S1", 5000, 0, 401.88}, {"S1", 8000, 0, 643.01}, {"S1", 10000, 0, 803.77}};
  const auto d = stage_cost_decomposition(s1);
  EXPECT_NEAR(d.slope, 80.377, 1e-3);
  EXPECT_NEAR(d.intercept, 0.0, 0.01);
  EXPECT_LT(d.residual_max_relative, 1e-3);
}

TEST(Decomposition, StrategyFourInterceptIsEncoderFinetune) {
  const std::vector<StrategyOutcome> s4 = {
      {"S4", 2000, 0, 519.57}, {"S4", 5000, 0, 760.69}, {"S4", 8000, 0, 1001.83}, {"S4", 10000, 0, 1162.58}};
  const auto d = stage_cost_decomposition(s4);
  EXPECT_NEAR(d.intercept, 358.813, 1e-3);
  for (double diff : {519.57 - 160.75, 760.69 - 401.88, 1001.83 - 643.01, 1162.58 - 803.77}) {
    EXPECT_NEAR(d.intercept, diff, 0.02);
  }
}

TEST(Decomposition, ConstantCost) {
  const std::vector<StrategyOutcome> c = {{"X", 1000, 0, 42.0}, {"X", 3000, 0, 42.0}};
  const auto d = stage_cost_decomposition(c);
  EXPECT_NEAR(d.slope, 0.0, 1e-12);
  EXPECT_NEAR(d.intercept, 42.0, 1e-12);
}

TEST(Decomposition, NeedsTwoScales) {
  const std::vector<StrategyOutcome> c = {{"X", 1000, 0, 42.0}, {"X", 1000, 0, 43.0}};
  EXPECT_THROW(stage_cost_decomposition(c), InvalidArgument);
}

}  // namespace
}  // namespace asrscale
