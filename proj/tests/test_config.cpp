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

#include <doctest.h>

#include "kldro/config.hpp"

using namespace kldro;
using nlohmann::json;

TEST_CASE("defaults round trip through json") {
  const ExperimentConfig d;
  const ExperimentConfig back = config_from_json(config_to_json(d));
  CHECK(config_to_json(back) == config_to_json(d));
  CHECK(config_from_json(json::object()).replicates == 50);
}

TEST_CASE("fields are decoded") {
  const json j = parse_config_text(R"({
    "name": "panel",
    "graph": {"layers": 3, "width": 3},
    "n0": 12,
    "nominal": {"kind": "normal", "sigma": 2.5},
    "sample_sizes": {"kind": "binomial2", "t_min": 10, "delta": 4},
    "sweep": {"var": "delta", "grid": [0, 10]},
    "rules": ["dro", "dro2"],
    "radius_override": 0.3
  })");
  const ExperimentConfig c = config_from_json(j);
  CHECK(c.name == "panel");
  CHECK(c.layers == 3);
  CHECK(c.replicates == 12);
  CHECK(c.nominal == NominalKind::kDiscretizedNormal);
  CHECK(c.sigma == 2.5);
  CHECK(c.sample_sizes.kind == SampleSizeKind::kBinomial2);
  CHECK(c.sweep_var == SweepVar::kDelta);
  CHECK(c.grid == std::vector<double>{0, 10});
  CHECK(c.rules == std::vector<Rule>{Rule::kDro, Rule::kDro2});
  CHECK(c.radius_override == 0.3);
  CHECK_FALSE(c.hoeffding_epsilon.has_value());
}

TEST_CASE("schema errors name the field") {
  CHECK_THROWS_WITH_AS(config_from_json(json{{"graph", {{"height", 3}}}}),
                       doctest::Contains("graph.height"), ConfigError);
  CHECK_THROWS_WITH_AS(config_from_json(json{{"n0", "ten"}}), doctest::Contains("n0"), ConfigError);
  CHECK_THROWS_WITH_AS(config_from_json(json{{"n0", -3}}), doctest::Contains("n0"), ConfigError);
  CHECK_THROWS_WITH_AS(config_from_json(json{{"rules", {"dro", "cvar"}}}),
                       doctest::Contains("rules[1]"), ConfigError);
  CHECK_THROWS_WITH_AS(config_from_json(json{{"alpha", 2.0}}), doctest::Contains("alpha"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config_text("{\n  \"n0\": 3,\n  oops\n}"), doctest::Contains("line 3"),
                       ConfigError);
}

TEST_CASE("overrides") {
  json j = json::object();
  apply_override(j, "n0=10");
  apply_override(j, "sweep.grid=[1,2,3]");
  apply_override(j, "nominal.kind=multinomial");
  apply_override(j, "radius_override=0.5");
  const ExperimentConfig c = config_from_json(j);
  CHECK(c.replicates == 10);
  CHECK(c.grid == std::vector<double>{1, 2, 3});
  CHECK(c.nominal == NominalKind::kMultinomial);
  CHECK(c.radius_override == 0.5);
  CHECK_THROWS_AS(apply_override(j, "replicas=3"), ConfigError);
  CHECK_THROWS_AS(apply_override(j, "graph.depth=3"), ConfigError);
  CHECK_THROWS_AS(apply_override(j, "n0=1.5"), ConfigError);
  CHECK_THROWS_AS(apply_override(j, "n0"), ConfigError);
}
