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

#include "asrscale/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "asrscale/error.hpp"

namespace asrscale {

bool dominates(const StrategyOutcome& a, const StrategyOutcome& b) {
  return a.total_flops <= b.total_flops && a.avg_cer <= b.avg_cer &&
         (a.total_flops < b.total_flops || a.avg_cer < b.avg_cer);
}

std::vector<StrategyOutcome> pareto_frontier(std::span<const StrategyOutcome> outcomes) {
  std::vector<StrategyOutcome> sorted(outcomes.begin(), outcomes.end());
  std::stable_sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    if (a.total_flops != b.total_flops) return a.total_flops < b.total_flops;
    return a.avg_cer < b.avg_cer;
  });

  std::vector<StrategyOutcome> frontier;
  double best_cer = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < sorted.size();) {
    // Group of equal budgets; sorted so the group minimum comes first.
    std::size_t j = i;
    while (j < sorted.size() && sorted[j].total_flops == sorted[i].total_flops) ++j;
    const double group_min = sorted[i].avg_cer;
    if (group_min < best_cer) {
      for (std::size_t k = i; k < j && sorted[k].avg_cer == group_min; ++k) {
        frontier.push_back(sorted[k]);
      }
      best_cer = group_min;
    }
    i = j;
  }
  return frontier;
}

std::vector<ComparisonRow> compare_strategies(std::span<const StrategyOutcome> outcomes,
                                              const std::string& baseline_id) {
  auto baseline_at = [&](double hours) -> const StrategyOutcome* {
    for (const StrategyOutcome& o : outcomes) {
      if (o.strategy_id == baseline_id && o.data_hours == hours) return &o;
    }
    return nullptr;
  };
  std::vector<ComparisonRow> rows;
  rows.reserve(outcomes.size());
  for (const StrategyOutcome& o : outcomes) {
    const StrategyOutcome* base = baseline_at(o.data_hours);
    if (base == nullptr) {
      throw ConfigError("baseline '" + baseline_id + "' has no outcome at " +
                        std::to_string(o.data_hours) + " hours");
    }
    ComparisonRow row;
    row.strategy_id = o.strategy_id;
    row.data_hours = o.data_hours;
    row.avg_cer = o.avg_cer;
    row.total_flops = o.total_flops;
    row.cerr = (base->avg_cer - o.avg_cer) / base->avg_cer;
    row.flops_ratio = o.total_flops / base->total_flops;
    rows.push_back(std::move(row));
  }
  return rows;
}

void validate_curve(const CheckpointCurve& curve) {
  for (std::size_t i = 1; i < curve.points.size(); ++i) {
    if (!(curve.points[i].cumulative_flops > curve.points[i - 1].cumulative_flops)) {
      throw InvalidArgument("checkpoint cumulative_flops must be strictly increasing (index " +
                            std::to_string(i) + ")");
    }
  }
}

void validate_policy(const ConvergencePolicy& p) {
  if (p.window < 2) throw InvalidArgument("convergence window must be >= 2");
  if (!(p.full_threshold > 0.0 && p.full_threshold <= p.preliminary_threshold &&
        p.preliminary_threshold < 1.0)) {
    throw InvalidArgument("convergence thresholds must satisfy 0 < full <= preliminary < 1");
  }
}

std::optional<std::size_t> detect_convergence(const CheckpointCurve& curve,
                                              const ConvergencePolicy& policy,
                                              Convergence level) {
  validate_policy(policy);
  validate_curve(curve);
  const auto& pts = curve.points;
  if (pts.size() < policy.window) {
    throw InvalidArgument("curve has " + std::to_string(pts.size()) +
                          " checkpoints, fewer than the window of " +
                          std::to_string(policy.window));
  }
  const double threshold =
      level == Convergence::kFull ? policy.full_threshold : policy.preliminary_threshold;
  for (std::size_t i = policy.window - 1; i < pts.size(); ++i) {
    const double start = pts[i - policy.window + 1].avg_cer;
    if ((start - pts[i].avg_cer) / start < threshold) return i;
  }
  return std::nullopt;
}

StageCostDecomposition stage_cost_decomposition(std::span<const StrategyOutcome> runs) {
  const bool distinct = std::any_of(runs.begin(), runs.end(), [&](const StrategyOutcome& o) {
    return o.data_hours != runs.front().data_hours;
  });
  if (runs.size() < 2 || !distinct) {
    throw InvalidArgument("stage cost decomposition needs at least two distinct data scales");
  }
  const double n = static_cast<double>(runs.size());
  double mx = 0.0, my = 0.0;
  for (const StrategyOutcome& o : runs) {
    mx += o.data_hours;
    my += o.total_flops;
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (const StrategyOutcome& o : runs) {
    sxx += (o.data_hours - mx) * (o.data_hours - mx);
    sxy += (o.data_hours - mx) * (o.total_flops - my);
  }
  const double per_hour = sxy / sxx;
  StageCostDecomposition out;
  out.slope = per_hour * 1000.0;
  out.intercept = my - per_hour * mx;
  for (const StrategyOutcome& o : runs) {
    const double fitted = out.intercept + per_hour * o.data_hours;
    out.residual_max_relative =
        std::max(out.residual_max_relative, std::abs(fitted - o.total_flops) / o.total_flops);
  }
  return out;
}

}  // namespace asrscale
