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

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "kldro/config.hpp"

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome call(std::vector<std::string> args) {
  args.insert(args.begin(), "kldro");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = kldro::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("worstcase subcommand") {
  CHECK(call({"worstcase", "--z", "1,2", "--q", "0.5,0.5", "--r", "0"}).out.rfind("value 1.5\n", 0) == 0);
  const auto r = call({"worstcase", "--z", "1,2", "--q", "0.5,0.5", "--r", "0.1"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("value 1.71287", 0) == 0);
  CHECK(call({"worstcase", "--z", "1,2", "--q", "0.5,0.6", "--r", "0.1"}).code == 1);
  CHECK(call({"worstcase", "--z", "1,x", "--q", "0.5,0.5", "--r", "0.1"}).code == 1);
}

TEST_CASE("radius subcommand") {
  const auto one = call({"radius", "--T", "5", "--d", "1"});
  CHECK(one.code == 0);
  CHECK(one.out.find("agrawal n/a") != std::string::npos);
  CHECK(one.out.find("best") != std::string::npos);
  CHECK(one.out.find("baseline") != std::string::npos);
  const auto paper = call({"radius", "--T", "25", "--d", "50", "--A", "104", "--tmin", "20",
                           "--alpha-a", "0.0004"});
  CHECK(paper.code == 0);
  CHECK(paper.out.find("best ") != std::string::npos);
  CHECK(call({"radius", "--T", "5", "--d", "3", "--alpha-a", "1.5"}).code == 1);
}

TEST_CASE("graph subcommand") {
  const auto g = call({"graph", "--h", "1", "--w", "1"});
  CHECK(g.code == 0);
  CHECK(g.out == "1 1\n0 1\n1 2\n");
  CHECK(call({"graph", "--h", "0", "--w", "1"}).code == 1);
  CHECK(call({"graph"}).code == 1);
  CHECK(call({"bogus"}).code == 1);
}

TEST_CASE("run subcommand") {
  const auto dir = std::filesystem::temp_directory_path() / "kldro_cli_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const auto cfg = dir / "c.json";
  std::ofstream(cfg) << R"({"name": "t", "graph": {"layers": 2, "width": 2}, "support_max": 5,
    "sample_sizes": {"t_min": 3, "delta": 2}, "sweep": {"var": "tmin", "grid": [3, 4]}})";
  const auto a = call({"run", "--config", cfg.string(), "--set", "n0=4", "--out", (dir / "a").string(),
                       "--seed", "5"});
  CHECK(a.code == 0);
  const auto b = call({"run", "--config", cfg.string(), "--set", "n0=4", "--out", (dir / "b").string(),
                       "--seed", "5", "--threads", "2"});
  CHECK(b.code == 0);
  CHECK(slurp(dir / "a" / "results.csv") == slurp(dir / "b" / "results.csv"));
  CHECK(call({"run", "--config", (dir / "missing.json").string(), "--out", dir.string()}).code == 1);
  CHECK(call({"run", "--config", cfg.string(), "--set", "bogus=1", "--out", dir.string()}).code == 1);
  std::ofstream(dir / "broken.json") << "{\n\"n0\": 3,,\n}";
  const auto broken = call({"run", "--config", (dir / "broken.json").string(), "--out", dir.string()});
  CHECK(broken.code == 1);
  CHECK(broken.err.find("line 2") != std::string::npos);
  const auto fail = call({"run", "--config", cfg.string(), "--set", "graph.layers=7", "--set",
                          "graph.width=6", "--set", "rules=[\"dro1\"]", "--set", "n0=1", "--out",
                          dir.string()});
  CHECK(fail.code == 2);
  std::filesystem::remove_all(dir);
}

TEST_CASE("bundled configs parse") {
  for (const char* name : {"fig2a", "fig2b", "fig4", "fig5", "fig6a", "fig6b", "fig7", "fig8a", "fig8b"}) {
    const auto p = std::filesystem::path(KLDRO_CONFIG_DIR) / (std::string(name) + ".json");
    CAPTURE(name);
    REQUIRE(std::filesystem::exists(p));
    const auto cfg = kldro::config_from_json(kldro::parse_config_text(slurp(p)));
    CHECK(cfg.name == name);
  }
}
