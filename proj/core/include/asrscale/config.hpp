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

// JSON configuration document for architectures, strategies and the cost model.
//
//   {
//     "modules": [{"name": "llm", "role": "language-model", "param_count": 7615616512,
//                  "adapter": {"rank": 64, "alpha": 16, "targets_per_layer": 7,
//                              "layer_count": 28, "target_dims": [[3584, 3584], ...]}}, ...],
//     "cost_model": {"c_fwd": 2, "c_act_bwd": 2, "c_wgrad": 2},
//     "dataset": {"hours": 10000, "frame_rate": 50, "downsample": 4,
//                 "text_tokens_per_second": 3, "epochs": 1},
//     "strategies": [{"id": "S1", "stages": [{"kind": "alignment", "convergence": "full",
//                                             "dataset": {"hours": 2000}}]}]
//   }
//
// Every key is optional. Missing modules fall back to default_architecture(),
// a missing strategy list to builtin_strategies(). A single strategy may be
// given inline with top-level "id" and "stages". Stage datasets inherit
// unspecified fields from the top-level "dataset". A stage may spell out
// "trainable": [{"module", "base", "adapter"}]; it must equal the canonical set
// of its kind.

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "asrscale/flops.hpp"
#include "asrscale/model.hpp"

namespace asrscale {

struct ToolkitConfig {
  ArchitectureGraph architecture = default_architecture();
  CostModelConfig cost_model;
  DatasetSpec dataset = default_dataset();
  std::vector<StrategySpec> strategies = builtin_strategies();
};

/// Throws ConfigError on schema violations and invalid architectures.
ToolkitConfig parse_config(std::string_view json);

std::string to_json(const ToolkitConfig& config);

}  // namespace asrscale
