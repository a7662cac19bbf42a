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

// Token budgets and training FLOPs under a per-parameter, per-token cost model.
//
// Each module m in the forward path is charged
//   forward             = c_fwd     * effective_params(m) * tokens(m)
//   activation_backward = c_act_bwd * effective_params(m) * tokens(m)
//                         (only at or downstream of the earliest trainable module)
//   weight_gradient     = c_wgrad   * trainable_params(m) * tokens(m)
// where tokens(encoder) = encoder frames, tokens(projection) = speech tokens and
// tokens(language model) = speech + text tokens. Results are in units of 1e15.

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "asrscale/model.hpp"

namespace asrscale {

inline constexpr double kFlopsUnit = 1e15;

struct TokenCounts {
  std::int64_t encoder_tokens = 0;
  std::int64_t llm_speech_tokens = 0;
  std::int64_t llm_text_tokens = 0;

  bool operator==(const TokenCounts&) const = default;
};

struct CostModelConfig {
  double c_fwd = 2.0;
  double c_act_bwd = 2.0;
  double c_wgrad = 2.0;

  bool operator==(const CostModelConfig&) const = default;
};

void validate_cost_model(const CostModelConfig& cost);

struct PhaseFlops {
  double forward = 0.0;
  double activation_backward = 0.0;
  double weight_gradient = 0.0;

  double sum() const { return forward + activation_backward + weight_gradient; }
  bool operator==(const PhaseFlops&) const = default;
};

struct FlopsBreakdown {
  /// Keyed by module name; units of 1e15 FLOPs.
  std::map<std::string, PhaseFlops> per_module;
  double total = 0.0;
};

struct StrategyFlops {
  double total = 0.0;
  std::vector<FlopsBreakdown> per_stage;
};

/// One module of a forward chain as seen by the cost model.
struct ChainLink {
  std::string name;
  double effective_params = 0.0;
  double trainable_params = 0.0;
  double tokens = 0.0;
  /// True when base or adapter weights of this module are updated.
  bool trainable = false;
};

/// Applies the cost model to `links` in dataflow order. Entries are raw FLOPs
/// (not scaled to 1e15).
FlopsBreakdown chain_flops(const std::vector<ChainLink>& links, const CostModelConfig& cost);

TokenCounts token_budget(const DatasetSpec& dataset);

/// Parameters added by `adapter`; alpha does not enter. Throws InvalidArgument
/// if the adapter is invalid.
std::int64_t adapter_params(const AdapterSpec& adapter);

/// Base parameters plus attached adapter parameters.
std::int64_t effective_params(const ModuleSpec& module);

FlopsBreakdown stage_flops(const StageSpec& stage, const ArchitectureGraph& arch,
                           const CostModelConfig& cost = {});

StrategyFlops strategy_flops(const StrategySpec& strategy, const ArchitectureGraph& arch,
                             const CostModelConfig& cost = {});

}  // namespace asrscale
