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

// JSON form of ExperimentConfig.
//
//   {
//     "name": "fig2a",
//     "graph": {"layers": 7, "width": 4},
//     "support_max": 50,
//     "alpha": 0.05,
//     "n0": 50,
//     "nominal": {"kind": "binomial", "sigma": 12.5, "fixed": false},
//     "sample_sizes": {"kind": "uniform", "t_min": 25, "delta": 5},
//     "sweep": {"var": "tmin", "grid": [5, 7, 9]},
//     "rules": ["dro", "hoeffding"],
//     "seed": 1,
//     "mad_center": "mean",
//     "radius_override": null,
//     "hoeffding_epsilon": null,
//     "threads": 1
//   }
//
// Every key is optional and defaults to ExperimentConfig{}. Unknown keys and
// values of the wrong JSON type are rejected with the dotted key path.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "kldro/experiments.hpp"

namespace kldro {

/// Parse or schema failure; the message names the offending field or line.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

nlohmann::json config_to_json(const ExperimentConfig& cfg);

/// Merges `j` into the defaults and validates the result.
ExperimentConfig config_from_json(const nlohmann::json& j);

/// Parses JSON text; syntax errors report line and column.
nlohmann::json parse_config_text(std::string_view text);

/// Applies `dotted.key=value` to `j`. The value is read as JSON, falling back
/// to a plain string; the key must exist in the schema.
void apply_override(nlohmann::json& j, std::string_view assignment);

}  // namespace kldro
