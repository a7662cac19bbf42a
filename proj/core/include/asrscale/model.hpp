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

// Architecture graph, stage taxonomy and the registry of built-in training
// strategies for encoder -> projection -> LLM speech recognizers.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace asrscale {

enum class ModuleRole { kSpeechEncoder, kProjection, kLanguageModel };

std::string_view to_string(ModuleRole role);
ModuleRole module_role_from_string(std::string_view text);

/// Low-rank adapter attached to every layer of a module.
struct AdapterSpec {
  std::int64_t rank = 64;
  double alpha = 16.0;
  std::int64_t targets_per_layer = 0;
  std::int64_t layer_count = 1;
  /// One (d_in, d_out) pair per adapted projection kind within a layer.
  std::vector<std::pair<std::int64_t, std::int64_t>> target_dims;

  bool operator==(const AdapterSpec&) const = default;
};

struct ModuleSpec {
  std::string name;
  ModuleRole role = ModuleRole::kSpeechEncoder;
  std::int64_t param_count = 0;
  std::optional<AdapterSpec> adapter;

  bool operator==(const ModuleSpec&) const = default;
};

/// Where the three input streams enter the graph and where the output leaves.
struct ChannelRoles {
  std::string prompt = "language-model input (embedded prompt tokens)";
  std::string speech = "speech-encoder input (acoustic features)";
  std::string transcript = "language-model input (embedded transcript tokens)";
  std::string output = "language-model output (autoregressive transcription)";

  bool operator==(const ChannelRoles&) const = default;
};

/// Modules in forward-dataflow order: encoder, projection, language model.
struct ArchitectureGraph {
  std::vector<ModuleSpec> modules;
  ChannelRoles channel_roles;

  const ModuleSpec* find(std::string_view name) const;
  const ModuleSpec& by_role(ModuleRole role) const;
  /// Position of `name` in dataflow order; throws ConfigError if absent.
  std::size_t index_of(std::string_view name) const;

  bool operator==(const ArchitectureGraph&) const = default;
};

/// Throws InvalidArgument when an adapter breaks its invariants.
void validate_adapter(const AdapterSpec& adapter);
/// Throws ConfigError when the graph breaks its invariants.
void validate_architecture(const ArchitectureGraph& arch);

/// Qwen2.5-7B style adapter: rank 64, alpha 16, seven projections per layer
/// over 28 layers.
AdapterSpec default_llm_adapter();

/// Whisper-medium encoder, two-layer projection and a 7B LLM with the
/// default adapter attached. Parameter counts are declared approximations.
ArchitectureGraph default_architecture();

struct DatasetSpec {
  double hours = 0.0;
  double frame_rate = 50.0;
  std::int64_t downsample = 4;
  double text_tokens_per_second = 3.0;
  double epochs = 1.0;

  bool operator==(const DatasetSpec&) const = default;
};

void validate_dataset(const DatasetSpec& dataset);

enum class StageKind { kEncoderFinetune, kAlignment, kLlmAdaptation, kFullJoint };
enum class Convergence { kPreliminary, kFull };

std::string_view to_string(StageKind kind);
std::string_view to_string(Convergence convergence);
StageKind stage_kind_from_string(std::string_view text);
Convergence convergence_from_string(std::string_view text);

struct TrainableModule {
  std::string module;
  bool base = false;
  bool adapter = false;

  bool operator==(const TrainableModule&) const = default;
};

struct StageSpec {
  StageKind kind = StageKind::kAlignment;
  std::vector<TrainableModule> trainable;
  Convergence convergence = Convergence::kFull;
  DatasetSpec dataset;

  const TrainableModule* find_trainable(std::string_view module) const;

  bool operator==(const StageSpec&) const = default;
};

/// Trainable set a stage of `kind` must have over `arch`'s module names.
std::vector<TrainableModule> canonical_trainable(StageKind kind,
                                                 const ArchitectureGraph& arch);

/// Stage of the given kind with its canonical trainable set.
StageSpec make_stage(StageKind kind, const ArchitectureGraph& arch,
                     DatasetSpec dataset,
                     Convergence convergence = Convergence::kFull);

struct StrategySpec {
  std::string id;
  std::vector<StageSpec> stages;

  bool operator==(const StrategySpec&) const = default;
};

enum class ScalingVariable { kModelSize, kDataSize, kComputeBudget };

struct Violation {
  std::string rule;
  /// Offending stage, absent for strategy-level rules.
  std::optional<std::size_t> stage_index;
  std::string message;

  bool operator==(const Violation&) const = default;
};

struct ValidationResult {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  explicit operator bool() const { return ok(); }
};

/// Checks ordering rules only: non-empty, encoder-finetune first, canonical
/// kind order with each kind at most once.
ValidationResult validate_strategy(const StrategySpec& spec);

/// Ordering rules plus the per-kind trainable-set rules against `arch`.
ValidationResult validate_strategy(const StrategySpec& spec,
                                   const ArchitectureGraph& arch);

DatasetSpec default_dataset(double hours = 10000.0);

/// S1..S6 plus S5-preliminary, every stage on `dataset`.
std::vector<StrategySpec> builtin_strategies(
    const ArchitectureGraph& arch = default_architecture(),
    const DatasetSpec& dataset = default_dataset());

/// Looks up a built-in strategy by id; throws ConfigError if unknown.
StrategySpec builtin_strategy(std::string_view id,
                              const ArchitectureGraph& arch = default_architecture(),
                              const DatasetSpec& dataset = default_dataset());

}  // namespace asrscale
