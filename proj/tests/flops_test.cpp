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

#include <random>

#include "asrscale/error.hpp"
#include "asrscale/flops.hpp"

namespace asrscale {
namespace {

using enum StageKind;

TEST(TokenBudget, OneHour) {
  DatasetSpec d = default_dataset(1.0);
  EXPECT_EQ(token_budget(d), (TokenCounts{180000, 45000, 10800}));
}

TEST(TokenBudget, ZeroHours) { EXPECT_EQ(token_budget(default_dataset(0.0)), (TokenCounts{0, 0, 0})); }

TEST(TokenBudget, FullCorpus) {
  EXPECT_EQ(token_budget(default_dataset(10000.0)),
            (TokenCounts{1'800'000'000, 450'000'000, 108'000'000}));
}

TEST(TokenBudget, FloorsFractionalCounts) {
  DatasetSpec d = default_dataset(1.0 / 3600.0);  // one second
  d.frame_rate = 7.5;
  d.downsample = 4;
  d.text_tokens_per_second = 2.9;
  const TokenCounts t = token_budget(d);
  EXPECT_EQ(t.encoder_tokens, 7);
  EXPECT_EQ(t.llm_speech_tokens, 1);
  EXPECT_EQ(t.llm_text_tokens, 2);
}

TEST(TokenBudget, RejectsInvalidDataset) {
  DatasetSpec d = default_dataset(1.0);
  d.downsample = 0;
  EXPECT_THROW(token_budget(d), InvalidArgument);
  d = default_dataset(-1.0);
  EXPECT_THROW(token_budget(d), InvalidArgument);
}

TEST(AdapterParams, SingleSquareTarget) {
  AdapterSpec a{64, 16.0, 1, 1, {{4096, 4096}}};
  EXPECT_EQ(adapter_params(a), 524288);
}

TEST(AdapterParams, RankZeroIsPreconditionViolation) {
  AdapterSpec a{0, 16.0, 1, 1, {{4096, 4096}}};
  EXPECT_THROW(adapter_params(a), InvalidArgument);
}

TEST(AdapterParams, AlphaDoesNotMatter) {
  AdapterSpec a{8, 16.0, 1, 2, {{10, 20}}};
  AdapterSpec b = a;
  b.alpha = 1.0;
  EXPECT_EQ(adapter_params(a), adapter_params(b));
}

// Hand sum: 28 layers * 64 * (7168 + 4096 + 4096 + 7168 + 22528 + 22528 + 22528).
TEST(AdapterParams, QwenLikeSevenTargets) { EXPECT_EQ(adapter_params(default_llm_adapter()), 161'480'704); }

TEST(AdapterParams, TargetCountMustMatchDims) {
  AdapterSpec a{64, 16.0, 2, 1, {{4, 4}}};
  EXPECT_THROW(adapter_params(a), InvalidArgument);
}

std::vector<ChainLink> chain(bool a_trainable, bool b_trainable) {
  return {{"A", 10, a_trainable ? 10.0 : 0.0, 100, a_trainable},
          {"B", 5, b_trainable ? 5.0 : 0.0, 100, b_trainable}};
}

TEST(ChainFlops, DownstreamTrainable) {
  const auto f = chain_flops(chain(false, true), {});
  EXPECT_DOUBLE_EQ(f.per_module.at("A").forward + f.per_module.at("B").forward, 3000);
  EXPECT_DOUBLE_EQ(f.per_module.at("A").activation_backward, 0);
  EXPECT_DOUBLE_EQ(f.per_module.at("B").activation_backward, 1000);
  EXPECT_DOUBLE_EQ(f.per_module.at("B").weight_gradient, 1000);
  EXPECT_DOUBLE_EQ(f.total, 5000);
}

TEST(ChainFlops, AllFrozen) {
  const auto f = chain_flops(chain(false, false), {});
  EXPECT_DOUBLE_EQ(f.total, 3000);
}

// Gradients reach A only through B, so both carry activation backward:
// 2*10*100 + 2*5*100 = 3000. Weight gradient is A's alone.
TEST(ChainFlops, UpstreamTrainableChargesBackwardThroughFrozen) {
  const auto f = chain_flops(chain(true, false), {});
  EXPECT_DOUBLE_EQ(f.per_module.at("A").activation_backward, 2000);
  EXPECT_DOUBLE_EQ(f.per_module.at("B").activation_backward, 1000);
  EXPECT_DOUBLE_EQ(f.per_module.at("A").weight_gradient, 2000);
  EXPECT_DOUBLE_EQ(f.per_module.at("B").weight_gradient, 0);
  EXPECT_DOUBLE_EQ(f.total, 8000);
}

TEST(ChainFlops, RejectsNonPositiveConstants) {
  EXPECT_THROW(chain_flops(chain(true, true), {0.0, 2.0, 2.0}), InvalidArgument);
}

// Toy graph: encoder 100, projection 10, LM 1000 with a rank-1 (2,3) adapter
// (5 params); one hour at 50 fps, downsample 4, 3 text tokens/s.
ArchitectureGraph toy_arch() {
  ArchitectureGraph arch;
  arch.modules = {{"enc", ModuleRole::kSpeechEncoder, 100, std::nullopt},
                  {"proj", ModuleRole::kProjection, 10, std::nullopt},
                  {"lm", ModuleRole::kLanguageModel, 1000, AdapterSpec{1, 1.0, 1, 1, {{2, 3}}}}};
  return arch;
}

TEST(StageFlops, ToyAlignmentPerModule) {
  const auto arch = toy_arch();
  const auto f = stage_flops(make_stage(kAlignment, arch, default_dataset(1.0)), arch);
  const auto& enc = f.per_module.at("enc");
  const auto& proj = f.per_module.at("proj");
  const auto& lm = f.per_module.at("lm");
  EXPECT_DOUBLE_EQ(enc.forward * 1e15, 2.0 * 100 * 180000);
  EXPECT_DOUBLE_EQ(enc.activation_backward, 0.0);
  EXPECT_DOUBLE_EQ(enc.weight_gradient, 0.0);
  EXPECT_DOUBLE_EQ(proj.forward * 1e15, 2.0 * 10 * 45000);
  EXPECT_DOUBLE_EQ(proj.weight_gradient * 1e15, 2.0 * 10 * 45000);
  EXPECT_DOUBLE_EQ(lm.forward * 1e15, 2.0 * 1005 * 55800);
  EXPECT_DOUBLE_EQ(lm.activation_backward * 1e15, 2.0 * 1005 * 55800);
  EXPECT_DOUBLE_EQ(lm.weight_gradient, 0.0);
}

TEST(StageFlops, EncoderFinetuneTouchesEncoderOnly) {
  const auto arch = toy_arch();
  const auto f = stage_flops(make_stage(kEncoderFinetune, arch, default_dataset(1.0)), arch);
  EXPECT_DOUBLE_EQ(f.total * 1e15, 3 * 2.0 * 100 * 180000);
  EXPECT_EQ(f.per_module.at("proj"), PhaseFlops{});
  EXPECT_EQ(f.per_module.at("lm"), PhaseFlops{});
}

TEST(StageFlops, UnknownModuleIsConfigError) {
  const auto arch = toy_arch();
  auto stage = make_stage(kAlignment, arch, default_dataset(1.0));
  stage.trainable.push_back({"decoder", true, false});
  EXPECT_THROW(stage_flops(stage, arch), ConfigError);
}

TEST(StageFlops, TrainingMissingAdapterIsConfigError) {
  auto arch = toy_arch();
  arch.modules[2].adapter.reset();
  EXPECT_THROW(stage_flops(make_stage(kLlmAdaptation, arch, default_dataset(1.0)), arch), ConfigError);
}

// Hand sums of the three stage formulas for the toy graph:
//   encoder-finetune 108,000,000 ; alignment 263,016,000 ; llm-adaptation 263,574,000
TEST(StrategyFlops, ToyPreliminaryEfinMatchesHandSum) {
  const auto arch = toy_arch();
  const auto s = builtin_strategy("S5-preliminary", arch, default_dataset(1.0));
  const auto f = strategy_flops(s, arch);
  ASSERT_EQ(f.per_stage.size(), 3u);
  EXPECT_NEAR(f.per_stage[0].total * 1e15, 108'000'000.0, 1e-3);
  EXPECT_NEAR(f.per_stage[1].total * 1e15, 263'016'000.0, 1e-3);
  EXPECT_NEAR(f.per_stage[2].total * 1e15, 263'574'000.0, 1e-3);
  EXPECT_NEAR(f.total * 1e15, 634'590'000.0, 1e-3);
}

TEST(StrategyFlops, SingleStageEqualsStage) {
  const auto arch = default_architecture();
  const auto s = builtin_strategy("S1", arch);
  EXPECT_EQ(strategy_flops(s, arch).total, stage_flops(s.stages[0], arch).total);
}

TEST(StrategyFlops, InvalidStrategyIsRejected) {
  const auto arch = toy_arch();
  EXPECT_THROW(strategy_flops(StrategySpec{"empty", {}}, arch), ConfigError);
}

// ------------------------------------------------------------- properties

struct RandomConfig {
  ArchitectureGraph arch;
  StageSpec stage;
};

RandomConfig random_config(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::int64_t> params(1, 5'000'000'000);
  std::uniform_int_distribution<std::int64_t> dim(1, 8192);
  std::uniform_int_distribution<int> kind(0, 3);
  std::uniform_real_distribution<double> hours(0.0, 20000.0);
  std::uniform_real_distribution<double> real01(0.0, 1.0);
  RandomConfig c;
  AdapterSpec a;
  a.rank = std::uniform_int_distribution<std::int64_t>(1, 128)(rng);
  a.layer_count = std::uniform_int_distribution<std::int64_t>(1, 48)(rng);
  const int targets = std::uniform_int_distribution<int>(1, 7)(rng);
  for (int i = 0; i < targets; ++i) a.target_dims.emplace_back(dim(rng), dim(rng));
  a.targets_per_layer = targets;
  c.arch.modules = {{"enc", ModuleRole::kSpeechEncoder, params(rng), std::nullopt},
                    {"proj", ModuleRole::kProjection, params(rng), std::nullopt},
                    {"lm", ModuleRole::kLanguageModel, params(rng), a}};
  DatasetSpec d = default_dataset(hours(rng));
  d.frame_rate = 10.0 + 90.0 * real01(rng);
  d.downsample = std::uniform_int_distribution<std::int64_t>(1, 8)(rng);
  d.text_tokens_per_second = 10.0 * real01(rng);
  d.epochs = 0.5 + 3.0 * real01(rng);
  c.stage = make_stage(static_cast<StageKind>(kind(rng)), c.arch, d);
  // Random extra trainables exercise the cost model beyond canonical sets.
  for (const auto& m : c.arch.modules) {
    if (real01(rng) < 0.3 && !c.stage.find_trainable(m.name)) {
      c.stage.trainable.push_back({m.name, real01(rng) < 0.5, m.adapter && real01(rng) < 0.5});
    }
  }
  return c;
}

void expect_entries_not_less(const FlopsBreakdown& lo, const FlopsBreakdown& hi) {
  for (const auto& [name, p] : lo.per_module) {
    const auto& q = hi.per_module.at(name);
    EXPECT_LE(p.forward, q.forward);
    EXPECT_LE(p.activation_backward, q.activation_backward);
    EXPECT_LE(p.weight_gradient, q.weight_gradient);
  }
}

TEST(FlopsProperties, AdditivityOverRandomStrategies) {
  std::mt19937_64 rng(7);
  for (int iter = 0; iter < 1000; ++iter) {
    RandomConfig c = random_config(rng);
    StrategySpec s{"r", {}};
    for (int k = 0; k < 4; ++k) {
      if (rng() % 2) {
        s.stages.push_back(make_stage(static_cast<StageKind>(k), c.arch, c.stage.dataset));
      }
    }
    if (s.stages.empty()) s.stages.push_back(c.stage);
    const auto f = strategy_flops(s, c.arch);
    double sum = 0.0;
    for (const auto& st : f.per_stage) {
      sum += st.total;
      double entries = 0.0;
      for (const auto& [name, p] : st.per_module) {
        EXPECT_GE(p.forward, 0.0);
        EXPECT_GE(p.activation_backward, 0.0);
        EXPECT_GE(p.weight_gradient, 0.0);
        entries += p.sum();
      }
      EXPECT_NEAR(entries, st.total, 1e-12 * st.total);
    }
    EXPECT_EQ(f.total, sum);
  }
}

TEST(FlopsProperties, MonotoneInHoursEpochsAndParams) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> grow(1.0, 3.0);
  for (int iter = 0; iter < 1000; ++iter) {
    const RandomConfig c = random_config(rng);
    const auto base = stage_flops(c.stage, c.arch);

    RandomConfig more = c;
    switch (iter % 3) {
      case 0:
        more.stage.dataset.hours *= grow(rng);
        break;
      case 1:
        more.stage.dataset.epochs *= grow(rng);
        break;
      default: {
        auto& m = more.arch.modules[static_cast<std::size_t>(iter % 3 == 2 ? rng() % 3 : 0)];
        m.param_count = static_cast<std::int64_t>(static_cast<double>(m.param_count) * grow(rng));
      }
    }
    expect_entries_not_less(base, stage_flops(more.stage, more.arch));
  }
}

TEST(FlopsProperties, FreezingDominance) {
  std::mt19937_64 rng(13);
  for (int iter = 0; iter < 1000; ++iter) {
    const RandomConfig c = random_config(rng);
    const auto base = stage_flops(c.stage, c.arch);
    StageSpec more = c.stage;
    const auto& m = c.arch.modules[rng() % 3];
    if (TrainableModule* t = const_cast<TrainableModule*>(more.find_trainable(m.name))) {
      if (!t->base) t->base = true;
      else if (m.adapter) t->adapter = true;
    } else {
      more.trainable.push_back({m.name, true, false});
    }
    EXPECT_GE(stage_flops(more, c.arch).total, base.total);
  }
}

TEST(FlopsProperties, LinearInHoursUpToOneTokenOfFlooring) {
  std::mt19937_64 rng(17);
  for (int iter = 0; iter < 200; ++iter) {
    RandomConfig c = random_config(rng);
    c.stage.dataset.hours = std::max(c.stage.dataset.hours, 1.0);
    const double t1 = stage_flops(c.stage, c.arch).total;
    StageSpec doubled = c.stage;
    doubled.dataset.hours *= 2.0;
    const double t2 = stage_flops(doubled, c.arch).total;
    // One token through every module under every phase bounds the flooring error.
    double per_token = 0.0;
    for (const auto& m : c.arch.modules) per_token += 6.0 * static_cast<double>(effective_params(m));
    const int tolerance_tokens = 2 * static_cast<int>(c.stage.dataset.downsample) + 4;
    EXPECT_NEAR(t2, 2.0 * t1, tolerance_tokens * per_token / kFlopsUnit);
  }
}

}  // namespace
}  // namespace asrscale
