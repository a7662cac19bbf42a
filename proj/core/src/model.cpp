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

#include "asrscale/model.hpp"

#include <algorithm>
#include <array>
#include <string>

#include "asrscale/error.hpp"

namespace asrscale {
namespace {

constexpr std::array kRoleNames = {"speech-encoder", "projection", "language-model"};
constexpr std::array kStageNames = {"encoder-finetune", "alignment", "llm-adaptation",
                                    "full-joint"};
constexpr std::array kConvergenceNames = {"preliminary", "full"};

template <typename Enum, std::size_t N>
Enum enum_from(std::string_view text, const std::array<const char*, N>& names,
               std::string_view what) {
  for (std::size_t i = 0; i < N; ++i) {
    if (text == names[i]) return static_cast<Enum>(i);
  }
  throw ConfigError("unknown " + std::string(what) + " '" + std::string(text) + "'");
}

}  // namespace

std::string_view to_string(ModuleRole role) { return kRoleNames[static_cast<int>(role)]; }
std::string_view to_string(StageKind kind) { return kStageNames[static_cast<int>(kind)]; }
std::string_view to_string(Convergence c) { return kConvergenceNames[static_cast<int>(c)]; }

ModuleRole module_role_from_string(std::string_view text) {
  return enum_from<ModuleRole>(text, kRoleNames, "module role");
}
StageKind stage_kind_from_string(std::string_view text) {
  return enum_from<StageKind>(text, kStageNames, "stage kind");
}
Convergence convergence_from_string(std::string_view text) {
  return enum_from<Convergence>(text, kConvergenceNames, "convergence policy");
}

const ModuleSpec* ArchitectureGraph::find(std::string_view name) const {
  auto it = std::find_if(modules.begin(), modules.end(),
                         [&](const ModuleSpec& m) { return m.name == name; });
  return it == modules.end() ? nullptr : &*it;
}

const ModuleSpec& ArchitectureGraph::by_role(ModuleRole role) const {
  auto it = std::find_if(modules.begin(), modules.end(),
                         [&](const ModuleSpec& m) { return m.role == role; });
  if (it == modules.end()) {
    throw ConfigError("architecture has no " + std::string(to_string(role)) + " module");
  }
  return *it;
}

std::size_t ArchitectureGraph::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < modules.size(); ++i) {
    if (modules[i].name == name) return i;
  }
  throw ConfigError("unknown module '" + std::string(name) + "'");
}

void validate_adapter(const AdapterSpec& adapter) {
  if (adapter.rank < 1) throw InvalidArgument("adapter rank must be >= 1");
  if (adapter.layer_count < 1) throw InvalidArgument("adapter layer_count must be >= 1");
  if (!(adapter.alpha > 0.0)) throw InvalidArgument("adapter alpha must be positive");
  if (adapter.targets_per_layer != static_cast<std::int64_t>(adapter.target_dims.size())) {
    throw InvalidArgument("adapter targets_per_layer must equal the number of target_dims");
  }
  for (const auto& [d_in, d_out] : adapter.target_dims) {
    if (d_in < 1 || d_out < 1) throw InvalidArgument("adapter target dims must be positive");
  }
}

void validate_architecture(const ArchitectureGraph& arch) {
  constexpr std::array order = {ModuleRole::kSpeechEncoder, ModuleRole::kProjection,
                                ModuleRole::kLanguageModel};
  if (arch.modules.size() != order.size()) {
    throw ConfigError("architecture must have exactly one encoder, projection and language model");
  }
  for (std::size_t i = 0; i < order.size(); ++i) {
    const ModuleSpec& m = arch.modules[i];
    if (m.role != order[i]) {
      throw ConfigError("module '" + m.name + "' is out of dataflow order; expected " +
                        std::string(to_string(order[i])) + " at position " +
                        std::to_string(i));
    }
    if (m.name.empty()) throw ConfigError("module names must be non-empty");
    if (m.param_count <= 0) throw ConfigError("module '" + m.name + "' needs param_count > 0");
    if (m.adapter) {
      try {
        validate_adapter(*m.adapter);
      } catch (const InvalidArgument& e) {
        throw ConfigError("module '" + m.name + "': " + e.what());
      }
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (arch.modules[j].name == m.name) throw ConfigError("duplicate module name '" + m.name + "'");
    }
  }
}

AdapterSpec default_llm_adapter() {
  constexpr std::int64_t hidden = 3584;
  constexpr std::int64_t kv = 512;
  constexpr std::int64_t ffn = 18944;
  AdapterSpec a;
  a.rank = 64;
  a.alpha = 16.0;
  a.layer_count = 28;
  // q, k, v, o, up, gate, down
  a.target_dims = {{hidden, hidden}, {hidden, kv},  {hidden, kv},   {hidden, hidden},
                   {hidden, ffn},    {hidden, ffn}, {ffn, hidden}};
  a.targets_per_layer = static_cast<std::int64_t>(a.target_dims.size());
  return a;
}

ArchitectureGraph default_architecture() {
  ArchitectureGraph arch;
  arch.modules = {
      {"encoder", ModuleRole::kSpeechEncoder, 307'000'000, std::nullopt},
      // 4096 -> 3584 -> 3584 with biases.
      {"projection", ModuleRole::kProjection, 27'532'288, std::nullopt},
      {"llm", ModuleRole::kLanguageModel, 7'615'616'512, default_llm_adapter()},
  };
  return arch;
}

void validate_dataset(const DatasetSpec& d) {
  if (!(d.hours >= 0.0)) throw InvalidArgument("dataset hours must be non-negative");
  if (!(d.frame_rate > 0.0)) throw InvalidArgument("dataset frame_rate must be positive");
  if (d.downsample < 1) throw InvalidArgument("dataset downsample must be >= 1");
  if (!(d.text_tokens_per_second >= 0.0)) {
    throw InvalidArgument("dataset text_tokens_per_second must be non-negative");
  }
  if (!(d.epochs > 0.0)) throw InvalidArgument("dataset epochs must be positive");
}

DatasetSpec default_dataset(double hours) {
  DatasetSpec d;
  d.hours = hours;
  return d;
}

const TrainableModule* StageSpec::find_trainable(std::string_view module) const {
  auto it = std::find_if(trainable.begin(), trainable.end(),
                         [&](const TrainableModule& t) { return t.module == module; });
  return it == trainable.end() ? nullptr : &*it;
}

std::vector<TrainableModule> canonical_trainable(StageKind kind, const ArchitectureGraph& arch) {
  const std::string& enc = arch.by_role(ModuleRole::kSpeechEncoder).name;
  const std::string& proj = arch.by_role(ModuleRole::kProjection).name;
  const std::string& llm = arch.by_role(ModuleRole::kLanguageModel).name;
  switch (kind) {
    case StageKind::kEncoderFinetune:
      return {{enc, true, false}};
    case StageKind::kAlignment:
      return {{proj, true, false}};
    case StageKind::kLlmAdaptation:
      return {{proj, true, false}, {llm, false, true}};
    case StageKind::kFullJoint:
      return {{enc, true, false}, {proj, true, false}, {llm, false, true}};
  }
  return {};
}

StageSpec make_stage(StageKind kind, const ArchitectureGraph& arch, DatasetSpec dataset,
                     Convergence convergence) {
  return StageSpec{kind, canonical_trainable(kind, arch), convergence, dataset};
}

ValidationResult validate_strategy(const StrategySpec& spec) {
  ValidationResult result;
  if (spec.stages.empty()) {
    result.violations.push_back({"stages-non-empty", std::nullopt, "stages non-empty"});
    return result;
  }
  int last_kind = -1;
  for (std::size_t i = 0; i < spec.stages.size(); ++i) {
    const StageKind kind = spec.stages[i].kind;
    const int k = static_cast<int>(kind);
    if (kind == StageKind::kEncoderFinetune && i != 0) {
      result.violations.push_back(
          {"encoder-finetune-first", i, "encoder-finetune must be first"});
    } else if (k == last_kind) {
      result.violations.push_back({"stage-kind-unique", i,
                                   "stage kind '" + std::string(to_string(kind)) +
                                       "' appears more than once"});
    } else if (k < last_kind) {
      result.violations.push_back(
          {"canonical-order", i,
           "stage kind '" + std::string(to_string(kind)) +
               "' is out of order (encoder-finetune -> alignment -> llm-adaptation -> "
               "full-joint)"});
    }
    last_kind = std::max(last_kind, k);
  }
  return result;
}

ValidationResult validate_strategy(const StrategySpec& spec, const ArchitectureGraph& arch) {
  ValidationResult result = validate_strategy(spec);
  for (std::size_t i = 0; i < spec.stages.size(); ++i) {
    const StageSpec& stage = spec.stages[i];
    for (const TrainableModule& t : stage.trainable) {
      if (arch.find(t.module) == nullptr) {
        result.violations.push_back(
            {"known-module", i, "trainable set names unknown module '" + t.module + "'"});
      }
    }
    auto normalized = [](std::vector<TrainableModule> v) {
      std::erase_if(v, [](const TrainableModule& t) { return !t.base && !t.adapter; });
      std::sort(v.begin(), v.end(),
                [](const auto& a, const auto& b) { return a.module < b.module; });
      return v;
    };
    if (normalized(stage.trainable) != normalized(canonical_trainable(stage.kind, arch))) {
      result.violations.push_back(
          {"stage-trainable-set", i,
           "trainable set does not match stage kind '" + std::string(to_string(stage.kind)) +
               "'"});
    }
    try {
      validate_dataset(stage.dataset);
    } catch (const InvalidArgument& e) {
      result.violations.push_back({"dataset", i, e.what()});
    }
  }
  return result;
}

std::vector<StrategySpec> builtin_strategies(const ArchitectureGraph& arch,
                                             const DatasetSpec& dataset) {
  using enum StageKind;
  auto stage = [&](StageKind kind, Convergence c = Convergence::kFull) {
    return make_stage(kind, arch, dataset, c);
  };
  return {
      {"S1", {stage(kAlignment)}},
      {"S2", {stage(kAlignment), stage(kLlmAdaptation)}},
      {"S3", {stage(kAlignment), stage(kLlmAdaptation), stage(kFullJoint)}},
      {"S4", {stage(kEncoderFinetune), stage(kAlignment)}},
      {"S5", {stage(kEncoderFinetune), stage(kAlignment), stage(kLlmAdaptation)}},
      {"S5-preliminary",
       {stage(kEncoderFinetune), stage(kAlignment, Convergence::kPreliminary),
        stage(kLlmAdaptation)}},
      {"S6", {stage(kEncoderFinetune), stage(kAlignment), stage(kLlmAdaptation),
              stage(kFullJoint)}},
  };
}

StrategySpec builtin_strategy(std::string_view id, const ArchitectureGraph& arch,
                              const DatasetSpec& dataset) {
  for (auto& s : builtin_strategies(arch, dataset)) {
    if (s.id == id) return s;
  }
  throw ConfigError("unknown strategy '" + std::string(id) + "'");
}

}  // namespace asrscale
