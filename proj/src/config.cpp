// Copyright 2026 The kldro Authors
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

#include "kldro/config.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace kldro {
namespace {

using nlohmann::json;

// Optional numbers are null in the defaults.
bool nullable_number(const std::string& path) {
  return path == "radius_override" || path == "hoeffding_epsilon";
}

std::string join(const std::string& prefix, const std::string& key) {
  return prefix.empty() ? key : prefix + "." + key;
}

std::string type_name(const json& v) {
  if (v.is_number_unsigned()) return "unsigned integer";
  if (v.is_number_integer()) return "integer";
  return v.type_name();
}

void check_type(const json& schema, const json& value, const std::string& path) {
  auto fail = [&](const std::string& expected) {
    throw ConfigError("field '" + path + "': expected " + expected + ", got " + type_name(value) +
                      " " + value.dump());
  };
  if (nullable_number(path)) {
    if (!value.is_null() && !value.is_number()) fail("number or null");
    return;
  }
  if (schema.is_object()) {
    if (!value.is_object()) fail("object");
    for (const auto& [key, v] : value.items()) {
      const std::string sub = join(path, key);
      if (!schema.contains(key)) throw ConfigError("unknown field '" + sub + "'");
      check_type(schema.at(key), v, sub);
    }
  } else if (schema.is_number_unsigned()) {
    if (!value.is_number_unsigned()) fail("unsigned integer");
  } else if (schema.is_number()) {
    if (!value.is_number()) fail("number");
  } else if (schema.is_string()) {
    if (!value.is_string()) fail("string");
  } else if (schema.is_boolean()) {
    if (!value.is_boolean()) fail("boolean");
  } else if (schema.is_array()) {
    if (!value.is_array()) fail("array");
    const bool strings = path == "rules";
    for (std::size_t i = 0; i < value.size(); ++i) {
      const auto& e = value[i];
      if (strings ? !e.is_string() : !e.is_number()) {
        throw ConfigError("field '" + path + "[" + std::to_string(i) + "]': expected " +
                          (strings ? "string" : "number") + ", got " + type_name(e));
      }
    }
  }
}

void merge(json& base, const json& patch) {
  for (const auto& [key, v] : patch.items()) {
    if (v.is_object() && base.contains(key) && base[key].is_object()) {
      merge(base[key], v);
    } else {
      base[key] = v;
    }
  }
}

template <typename F>
auto field(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("field '" + path + "': " + e.what());
  }
}

}  // namespace

json config_to_json(const ExperimentConfig& cfg) {
  json j;
  j["name"] = cfg.name;
  j["graph"] = {{"layers", cfg.layers}, {"width", cfg.width}};
  j["support_max"] = cfg.support_max;
  j["alpha"] = cfg.alpha;
  j["n0"] = cfg.replicates;
  j["nominal"] = {{"kind", std::string(to_string(cfg.nominal))},
                  {"sigma", cfg.sigma},
                  {"fixed", cfg.fix_nominal}};
  j["sample_sizes"] = {{"kind", std::string(to_string(cfg.sample_sizes.kind))},
                       {"t_min", cfg.sample_sizes.t_min},
                       {"delta", cfg.sample_sizes.delta}};
  j["sweep"] = {{"var", std::string(to_string(cfg.sweep_var))}, {"grid", cfg.grid}};
  json rules = json::array();
  for (Rule r : cfg.rules) rules.push_back(std::string(to_string(r)));
  j["rules"] = rules;
  j["seed"] = cfg.seed;
  j["mad_center"] = std::string(to_string(cfg.mad_center));
  j["radius_override"] = cfg.radius_override ? json(*cfg.radius_override) : json(nullptr);
  j["hoeffding_epsilon"] = cfg.hoeffding_epsilon ? json(*cfg.hoeffding_epsilon) : json(nullptr);
  j["threads"] = cfg.threads;
  return j;
}

ExperimentConfig config_from_json(const json& patch) {
  const json schema = config_to_json(ExperimentConfig{});
  check_type(schema, patch, "");
  json j = schema;
  merge(j, patch);

  ExperimentConfig cfg;
  cfg.name = j["name"].get<std::string>();
  if (cfg.name.empty() || cfg.name.find_first_of("/\\") != std::string::npos) {
    throw ConfigError("field 'name': must be a non-empty file-name stem");
  }
  cfg.layers = j["graph"]["layers"].get<std::size_t>();
  cfg.width = j["graph"]["width"].get<std::size_t>();
  cfg.support_max = j["support_max"].get<std::size_t>();
  cfg.alpha = j["alpha"].get<double>();
  cfg.replicates = j["n0"].get<std::size_t>();
  cfg.nominal = field("nominal.kind",
                      [&] { return nominal_kind_from_string(j["nominal"]["kind"].get<std::string>()); });
  cfg.sigma = j["nominal"]["sigma"].get<double>();
  cfg.fix_nominal = j["nominal"]["fixed"].get<bool>();
  cfg.sample_sizes.kind = field("sample_sizes.kind", [&] {
    return sample_size_kind_from_string(j["sample_sizes"]["kind"].get<std::string>());
  });
  cfg.sample_sizes.t_min = j["sample_sizes"]["t_min"].get<std::size_t>();
  cfg.sample_sizes.delta = j["sample_sizes"]["delta"].get<std::size_t>();
  cfg.sweep_var = field("sweep.var",
                        [&] { return sweep_var_from_string(j["sweep"]["var"].get<std::string>()); });
  cfg.grid = j["sweep"]["grid"].get<std::vector<double>>();
  cfg.rules.clear();
  for (std::size_t i = 0; i < j["rules"].size(); ++i) {
    cfg.rules.push_back(field("rules[" + std::to_string(i) + "]",
                              [&] { return rule_from_string(j["rules"][i].get<std::string>()); }));
  }
  cfg.seed = j["seed"].get<std::uint64_t>();
  cfg.mad_center = field("mad_center",
                         [&] { return mad_center_from_string(j["mad_center"].get<std::string>()); });
  if (!j["radius_override"].is_null()) cfg.radius_override = j["radius_override"].get<double>();
  if (!j["hoeffding_epsilon"].is_null()) cfg.hoeffding_epsilon = j["hoeffding_epsilon"].get<double>();
  cfg.threads = j["threads"].get<std::size_t>();
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("invalid config: ") + e.what());
  }
  return cfg;
}

json parse_config_text(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const std::size_t upto = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    const auto head = text.substr(0, upto);
    const std::size_t line = 1 + static_cast<std::size_t>(std::count(head.begin(), head.end(), '\n'));
    const auto nl = head.rfind('\n');
    const std::size_t column = nl == std::string_view::npos ? upto + 1 : upto - nl;
    throw ConfigError("line " + std::to_string(line) + ", column " + std::to_string(column) +
                      ": " + e.what());
  }
}

void apply_override(json& j, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos || eq == 0) {
    throw ConfigError("override '" + std::string(assignment) + "' is not key=value");
  }
  const std::string key(assignment.substr(0, eq));
  const std::string text(assignment.substr(eq + 1));
  json value = json::parse(text, nullptr, false);
  if (value.is_discarded()) value = text;

  const json schema = config_to_json(ExperimentConfig{});
  const json* node = &schema;
  json* target = &j;
  std::size_t start = 0;
  for (;;) {
    const auto dot = key.find('.', start);
    const std::string part = key.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    const std::string path = key.substr(0, dot == std::string::npos ? key.size() : dot);
    if (!node->is_object() || !node->contains(part)) throw ConfigError("unknown field '" + path + "'");
    node = &node->at(part);
    if (!target->is_object()) *target = json::object();
    target = &(*target)[part];
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  check_type(*node, value, key);
  *target = value;
}

}  // namespace kldro
