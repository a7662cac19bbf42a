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

#include "asrscale/config.hpp"

#include "asrscale/error.hpp"
#include "json.hpp"

namespace asrscale {
namespace {

using nlohmann::json;

template <typename T>
T get_or(const json& obj, const char* key, T fallback) {
  if (!obj.contains(key)) return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("config key '") + key + "' has the wrong type");
  }
}

const json& require_object(const json& v, const char* what) {
  if (!v.is_object()) throw ConfigError(std::string(what) + " must be a JSON object");
  return v;
}

DatasetSpec parse_dataset(const json& v, const DatasetSpec& base) {
  require_object(v, "dataset");
  DatasetSpec d;
  d.hours = get_or(v, "hours", base.hours);
  d.frame_rate = get_or(v, "frame_rate", base.frame_rate);
  d.downsample = get_or(v, "downsample", base.downsample);
  d.text_tokens_per_second = get_or(v, "text_tokens_per_second", base.text_tokens_per_second);
  d.epochs = get_or(v, "epochs", base.epochs);
  try {
    validate_dataset(d);
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
  return d;
}

AdapterSpec parse_adapter(const json& v) {
  require_object(v, "adapter");
  AdapterSpec a;
  a.rank = get_or<std::int64_t>(v, "rank", 64);
  a.alpha = get_or(v, "alpha", 16.0);
  a.layer_count = get_or<std::int64_t>(v, "layer_count", 1);
  if (v.contains("target_dims")) {
    for (const json& t : v.at("target_dims")) {
      if (t.is_array() && t.size() == 2) {
        a.target_dims.emplace_back(t[0].get<std::int64_t>(), t[1].get<std::int64_t>());
      } else if (t.is_object()) {
        a.target_dims.emplace_back(get_or<std::int64_t>(t, "d_in", 0),
                                   get_or<std::int64_t>(t, "d_out", 0));
      } else {
        throw ConfigError("adapter target_dims entries must be [d_in, d_out] pairs");
      }
    }
  }
  a.targets_per_layer =
      get_or<std::int64_t>(v, "targets_per_layer", static_cast<std::int64_t>(a.target_dims.size()));
  return a;
}

ModuleSpec parse_module(const json& v) {
  require_object(v, "module");
  ModuleSpec m;
  if (!v.contains("role")) throw ConfigError("module is missing 'role'");
  m.role = module_role_from_string(v.at("role").get<std::string>());
  const char* default_name = m.role == ModuleRole::kSpeechEncoder ? "encoder"
                             : m.role == ModuleRole::kProjection  ? "projection"
                                                                  : "llm";
  m.name = get_or<std::string>(v, "name", default_name);
  m.param_count = get_or<std::int64_t>(v, "param_count", 0);
  if (v.contains("adapter") && !v.at("adapter").is_null()) m.adapter = parse_adapter(v.at("adapter"));
  return m;
}

StrategySpec parse_strategy(const json& v, const ArchitectureGraph& arch, const DatasetSpec& base) {
  require_object(v, "strategy");
  StrategySpec s;
  s.id = get_or<std::string>(v, "id", "");
  if (s.id.empty()) throw ConfigError("strategy is missing 'id'");
  if (!v.contains("stages") || !v.at("stages").is_array()) {
    throw ConfigError("strategy '" + s.id + "' needs a 'stages' array");
  }
  for (const json& st : v.at("stages")) {
    require_object(st, "stage");
    if (!st.contains("kind")) throw ConfigError("stage is missing 'kind'");
    const StageKind kind = stage_kind_from_string(st.at("kind").get<std::string>());
    const Convergence conv =
        convergence_from_string(get_or<std::string>(st, "convergence", "full"));
    const DatasetSpec dataset = st.contains("dataset") ? parse_dataset(st.at("dataset"), base) : base;
    StageSpec stage = make_stage(kind, arch, dataset, conv);
    if (st.contains("trainable")) {
      stage.trainable.clear();
      for (const json& t : st.at("trainable")) {
        require_object(t, "trainable entry");
        stage.trainable.push_back({get_or<std::string>(t, "module", ""), get_or(t, "base", false),
                                   get_or(t, "adapter", false)});
      }
    }
    s.stages.push_back(std::move(stage));
  }
  return s;
}

}  // namespace

ToolkitConfig parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  require_object(doc, "config document");

  ToolkitConfig cfg;
  try {
    if (doc.contains("modules")) {
      cfg.architecture.modules.clear();
      for (const json& m : doc.at("modules")) cfg.architecture.modules.push_back(parse_module(m));
    }
    validate_architecture(cfg.architecture);

    if (doc.contains("cost_model")) {
      const json& c = require_object(doc.at("cost_model"), "cost_model");
      cfg.cost_model.c_fwd = get_or(c, "c_fwd", 2.0);
      cfg.cost_model.c_act_bwd = get_or(c, "c_act_bwd", 2.0);
      cfg.cost_model.c_wgrad = get_or(c, "c_wgrad", 2.0);
      try {
        validate_cost_model(cfg.cost_model);
      } catch (const InvalidArgument& e) {
        throw ConfigError(e.what());
      }
    }

    if (doc.contains("dataset")) cfg.dataset = parse_dataset(doc.at("dataset"), default_dataset());

    if (doc.contains("strategies")) {
      cfg.strategies.clear();
      for (const json& s : doc.at("strategies")) {
        cfg.strategies.push_back(parse_strategy(s, cfg.architecture, cfg.dataset));
      }
    } else if (doc.contains("stages")) {
      cfg.strategies = {parse_strategy(doc, cfg.architecture, cfg.dataset)};
    } else {
      cfg.strategies = builtin_strategies(cfg.architecture, cfg.dataset);
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }

  for (const StrategySpec& s : cfg.strategies) {
    const ValidationResult v = validate_strategy(s, cfg.architecture);
    if (!v.ok()) {
      const Violation& first = v.violations.front();
      throw ConfigError("strategy '" + s.id + "'" +
                        (first.stage_index ? " stage " + std::to_string(*first.stage_index) : "") +
                        ": " + first.message);
    }
  }
  return cfg;
}

std::string to_json(const ToolkitConfig& cfg) {
  nlohmann::ordered_json doc;
  auto dataset_json = [](const DatasetSpec& d) {
    return nlohmann::ordered_json{{"hours", d.hours},
                                  {"frame_rate", d.frame_rate},
                                  {"downsample", d.downsample},
                                  {"text_tokens_per_second", d.text_tokens_per_second},
                                  {"epochs", d.epochs}};
  };
  for (const ModuleSpec& m : cfg.architecture.modules) {
    nlohmann::ordered_json mj{{"name", m.name},
                              {"role", std::string(to_string(m.role))},
                              {"param_count", m.param_count}};
    if (m.adapter) {
      nlohmann::ordered_json dims = nlohmann::ordered_json::array();
      for (const auto& [a, b] : m.adapter->target_dims) dims.push_back({a, b});
      mj["adapter"] = {{"rank", m.adapter->rank},
                       {"alpha", m.adapter->alpha},
                       {"targets_per_layer", m.adapter->targets_per_layer},
                       {"layer_count", m.adapter->layer_count},
                       {"target_dims", dims}};
    }
    doc["modules"].push_back(mj);
  }
  doc["cost_model"] = {{"c_fwd", cfg.cost_model.c_fwd},
                       {"c_act_bwd", cfg.cost_model.c_act_bwd},
                       {"c_wgrad", cfg.cost_model.c_wgrad}};
  doc["dataset"] = dataset_json(cfg.dataset);
  doc["strategies"] = nlohmann::ordered_json::array();
  for (const StrategySpec& s : cfg.strategies) {
    nlohmann::ordered_json sj{{"id", s.id}, {"stages", nlohmann::ordered_json::array()}};
    for (const StageSpec& st : s.stages) {
      nlohmann::ordered_json trainable = nlohmann::ordered_json::array();
      for (const TrainableModule& t : st.trainable) {
        trainable.push_back({{"module", t.module}, {"base", t.base}, {"adapter", t.adapter}});
      }
      sj["stages"].push_back({{"kind", std::string(to_string(st.kind))},
                              {"convergence", std::string(to_string(st.convergence))},
                              {"dataset", dataset_json(st.dataset)},
                              {"trainable", trainable}});
    }
    doc["strategies"].push_back(sj);
  }
  return doc.dump(2);
}

}  // namespace asrscale
