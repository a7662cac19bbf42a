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

#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "asrscale/model.hpp"

namespace asrscale {

/// One (compute, error) result of a strategy at a data scale.
struct StrategyOutcome {
  std::string strategy_id;
  double data_hours = 0.0;
  /// Percent.
  double avg_cer = 0.0;
  /// Units of 1e15 FLOPs.
  double total_flops = 0.0;

  bool operator==(const StrategyOutcome&) const = default;
};

/// True when `a` is no worse than `b` on both axes and strictly better on one.
bool dominates(const StrategyOutcome& a, const StrategyOutcome& b);

/// Non-dominated outcomes sorted by total_flops (then avg_cer). Exact
/// duplicates are all kept.
std::vector<StrategyOutcome> pareto_frontier(std::span<const StrategyOutcome> outcomes);

struct ComparisonRow {
  std::string strategy_id;
  double data_hours = 0.0;
  double avg_cer = 0.0;
  double total_flops = 0.0;
  /// Relative CER reduction against the baseline, as a fraction.
  double cerr = 0.0;
  double flops_ratio = 0.0;
};

/// Compares every outcome to the baseline strategy's outcome at the same
/// data_hours. Throws ConfigError if the baseline is missing at any scale
/// that appears in `outcomes`.
std::vector<ComparisonRow> compare_strategies(std::span<const StrategyOutcome> outcomes,
                                              const std::string& baseline_id);

struct Checkpoint {
  double cumulative_flops = 0.0;
  double avg_cer = 0.0;
  StageKind stage_kind = StageKind::kAlignment;

  bool operator==(const Checkpoint&) const = default;
};

struct CheckpointCurve {
  std::vector<Checkpoint> points;

  bool operator==(const CheckpointCurve&) const = default;
};

/// Throws InvalidArgument unless cumulative_flops is strictly increasing.
void validate_curve(const CheckpointCurve& curve);

struct ConvergencePolicy {
  std::size_t window = 2;
  double preliminary_threshold = 0.05;
  double full_threshold = 0.01;
};

void validate_policy(const ConvergencePolicy& policy);

/// First index i >= window-1 whose relative improvement over the trailing
/// window, (cer[i-window+1] - cer[i]) / cer[i-window+1], falls below the
/// level's threshold.
std::optional<std::size_t> detect_convergence(const CheckpointCurve& curve,
                                              const ConvergencePolicy& policy,
                                              Convergence level);

struct StageCostDecomposition {
  /// 1e15 FLOPs per 1000 hours.
  double slope = 0.0;
  /// 1e15 FLOPs; fixed costs independent of the data scale.
  double intercept = 0.0;
  double residual_max_relative = 0.0;
};

/// OLS of total_flops on data_hours. Throws InvalidArgument unless at least
/// two distinct data_hours values are present.
StageCostDecomposition stage_cost_decomposition(std::span<const StrategyOutcome> runs);

}  // namespace asrscale
