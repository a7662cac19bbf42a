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

#include "asrscale/flops.hpp"

#include <cmath>

#include "asrscale/error.hpp"

namespace asrscale {
namespace {

std::int64_t floor_count(double value) {
  return static_cast<std::int64_t>(std::floor(value));
}

double module_tokens(const ModuleSpec& m, const TokenCounts& tokens) {
  switch (m.role) {
    case ModuleRole::kSpeechEncoder:
      return static_cast<double>(tokens.encoder_tokens);
    case ModuleRole::kProjection:
      return static_cast<double>(tokens.llm_speech_tokens);
    case ModuleRole::kLanguageModel:
      return static_cast<double>(tokens.llm_speech_tokens + tokens.llm_text_tokens);
  }
  return 0.0;
}

}  // namespace

void validate_cost_model(const CostModelConfig& cost) {
  if (!(cost.c_fwd > 0.0) || !(cost.c_act_bwd > 0.0) || !(cost.c_wgrad > 0.0)) {
    throw InvalidArgument("cost model constants must be positive");
  }
}

TokenCounts token_budget(const DatasetSpec& d) {
  validate_dataset(d);
  const double seconds = d.hours * 3600.0 * d.epochs;
  TokenCounts t;
  t.encoder_tokens = floor_count(seconds * d.frame_rate);
  t.llm_speech_tokens = t.encoder_tokens / d.downsample;
  t.llm_text_tokens = floor_count(seconds * d.text_tokens_per_second);
  return t;
}

std::int64_t adapter_params(const AdapterSpec& adapter) {
  validate_adapter(adapter);
  std::int64_t per_layer = 0;
  for (const auto& [d_in, d_out] : adapter.target_dims) per_layer += adapter.rank * (d_in + d_out);
  return adapter.layer_count * per_layer;
}

std::int64_t effective_params(const ModuleSpec& module) {
  return module.param_count + (module.adapter ? adapter_params(*module.adapter) : 0);
}

FlopsBreakdown chain_flops(const std::vector<ChainLink>& links, const CostModelConfig& cost) {
  validate_cost_model(cost);
  std::size_t earliest_trainable = links.size();
  for (std::size_t i = 0; i < links.size(); ++i) {
    if (links[i].trainable) {
      earliest_trainable = i;
      break;
    }
  }
  FlopsBreakdown out;
  for (std::size_t i = 0; i < links.size(); ++i) {
    const ChainLink& link = links[i];
    PhaseFlops phase;
    phase.forward = cost.c_fwd * link.effective_params * link.tokens;
    if (i >= earliest_trainable) {
      phase.activation_backward = cost.c_act_bwd * link.effective_params * link.tokens;
    }
    phase.weight_gradient = cost.c_wgrad * link.trainable_params * link.tokens;
    out.total += phase.sum();
    out.per_module[link.name] = phase;
  }
  return out;
}

FlopsBreakdown stage_flops(const StageSpec& stage, const ArchitectureGraph& arch,
                           const CostModelConfig& cost) {
  validate_architecture(arch);
  for (const TrainableModule& t : stage.trainable) {
    const ModuleSpec& m = arch.modules[arch.index_of(t.module)];
    if (t.adapter && !m.adapter) {
      throw ConfigError("stage trains the adapter of '" + m.name + "' which has none");
    }
  }

  const TokenCounts tokens = token_budget(stage.dataset);
  // Encoder fine-tuning runs the encoder in its original setup, without the
  // projection or language model attached.
  const bool encoder_only = stage.kind == StageKind::kEncoderFinetune;

  std::vector<ChainLink> links;
  for (const ModuleSpec& m : arch.modules) {
    ChainLink link;
    link.name = m.name;
    if (!encoder_only || m.role == ModuleRole::kSpeechEncoder) {
      link.effective_params = static_cast<double>(effective_params(m));
      link.tokens = module_tokens(m, tokens);
      if (const TrainableModule* t = stage.find_trainable(m.name)) {
        std::int64_t trainable = 0;
        if (t->base) trainable += m.param_count;
        if (t->adapter) trainable += adapter_params(*m.adapter);
        link.trainable_params = static_cast<double>(trainable);
        link.trainable = t->base || t->adapter;
      }
    }
    links.push_back(std::move(link));
  }

  FlopsBreakdown raw = chain_flops(links, cost);
  FlopsBreakdown out;
  for (const auto& [name, p] : raw.per_module) {
    PhaseFlops scaled{p.forward / kFlopsUnit, p.activation_backward / kFlopsUnit,
                      p.weight_gradient / kFlopsUnit};
    out.total += scaled.sum();
    out.per_module.emplace(name, scaled);
  }
  return out;
}

StrategyFlops strategy_flops(const StrategySpec& strategy, const ArchitectureGraph& arch,
                             const CostModelConfig& cost) {
  const ValidationResult v = validate_strategy(strategy);
  if (!v.ok()) {
    throw ConfigError("strategy '" + strategy.id + "' is invalid: " + v.violations.front().message);
  }
  StrategyFlops out;
  out.per_stage.reserve(strategy.stages.size());
  for (const StageSpec& stage : strategy.stages) {
    out.per_stage.push_back(stage_flops(stage, arch, cost));
    out.total += out.per_stage.back().total;
  }
  return out;
}

}  // namespace asrscale
