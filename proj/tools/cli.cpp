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

#include "cli.hpp"

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kldro/config.hpp"
#include "kldro/experiments.hpp"
#include "kldro/graphs.hpp"
#include "kldro/io.hpp"
#include "kldro/marginals.hpp"
#include "kldro/radius.hpp"
#include "kldro/worstcase.hpp"

namespace kldro::cli {
namespace {

struct Invalid : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<double> parse_list(const std::string& text, const char* flag) {
  std::vector<double> out;
  for (auto field : io::split(text)) {
    try {
      out.push_back(io::parse_double(field));
    } catch (const std::invalid_argument&) {
      throw Invalid(std::string(flag) + ": cannot parse '" + std::string(field) + "' as a number");
    }
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Invalid("cannot open config '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct RunArgs {
  std::string config;
  std::vector<std::string> sets;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> threads;
};

int do_run(const RunArgs& a, std::ostream& out) {
  nlohmann::json j;
  try {
    j = parse_config_text(read_file(a.config));
  } catch (const ConfigError& e) {
    throw Invalid(a.config + ": " + e.what());
  }
  if (!j.is_object()) throw Invalid(a.config + ": top level must be a JSON object");
  for (const auto& s : a.sets) apply_override(j, s);
  if (a.seed) j["seed"] = *a.seed;
  if (a.threads) j["threads"] = *a.threads;
  ExperimentConfig cfg;
  try {
    cfg = config_from_json(j);
  } catch (const ConfigError& e) {
    throw Invalid(a.config + ": " + e.what());
  }
  const SweepResult result = run_sweep(cfg);
  write_aggregates_csv(out, aggregate_rows(result));
  for (const auto& p : emit_results(result, a.out)) out << "wrote " << p.string() << '\n';
  return kExitOk;
}

int do_worstcase(const std::string& z_text, const std::string& q_text, double r, std::ostream& out) {
  const auto z = parse_list(z_text, "--z");
  const auto q = parse_list(q_text, "--q");
  if (z.size() != q.size()) throw Invalid("--z and --q differ in length");
  const Marginal emp = [&] {
    try {
      return Marginal(Support(z), q);
    } catch (const std::invalid_argument& e) {
      throw Invalid(e.what());
    }
  }();
  if (!(r >= 0.0)) throw Invalid("--r must be >= 0");
  const DualSolution s = solve_dual(emp, r);
  out << "value " << io::format_double(s.value) << '\n';
  out << "beta " << io::format_double(s.beta) << '\n';
  out << "primal";
  for (std::size_t i = 0; i < s.primal.size(); ++i) out << ' ' << io::format_double(s.primal.prob(i));
  out << '\n';
  out << "kl " << io::format_double(kl_divergence(emp, s.primal)) << '\n';
  return kExitOk;
}

struct RadiusArgs {
  double t = 0.0;
  double d = 0.0;
  double actions = 1.0;
  std::optional<double> tmin;
  double alpha = 0.05;
  std::optional<double> alpha_a;
};

int do_radius(const RadiusArgs& a, std::ostream& out) {
  RadiusInputs in;
  in.sample_count = a.t;
  in.support_size = a.d;
  in.num_actions = a.actions;
  in.min_sample_count = a.tmin.value_or(a.t);
  in.alpha_a = a.alpha_a.value_or(a.alpha / a.actions);
  try {
    in.rate = rate_from_alpha(a.alpha, in.min_sample_count);
    in.validate();
  } catch (const std::invalid_argument& e) {
    throw Invalid(e.what());
  }
  auto line = [&](const char* name, auto&& f) {
    out << name << ' ';
    try {
      out << io::format_double(f());
    } catch (const std::exception& e) {
      out << "n/a (" << e.what() << ')';
    }
    out << '\n';
  };
  line("baseline", [&] { return radius_baseline(in); });
  if (in.support_size < 2.0) {
    out << "agrawal n/a (needs d >= 2)\n";
  } else {
    line("agrawal", [&] { return radius_agrawal(in); });
  }
  line("mardia", [&] { return radius_mardia(in); });
  const auto best = radius_best(in);
  out << "best " << io::format_double(best.value) << ' ' << to_string(best.winner) << '\n';
  return kExitOk;
}

int do_graph(std::size_t h, std::size_t w, std::ostream& out) {
  LayeredGraph g = [&] {
    try {
      return LayeredGraph(h, w);
    } catch (const std::invalid_argument& e) {
      throw Invalid(e.what());
    }
  }();
  g.write_edge_list(out);
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"KL-ambiguity robust shortest paths"};
  app.require_subcommand(1);

  RunArgs run_args;
  auto* run_cmd = app.add_subcommand("run", "run a Monte-Carlo sweep");
  run_cmd->add_option("--config", run_args.config, "JSON config file")->required();
  run_cmd->add_option("--set", run_args.sets, "dotted.key=value override (repeatable)");
  run_cmd->add_option("--out", run_args.out, "output directory")->required();
  run_cmd->add_option("--seed", run_args.seed, "master seed");
  run_cmd->add_option("--threads", run_args.threads, "worker threads")->check(CLI::PositiveNumber);

  std::string z_text, q_text;
  double r = 0.0;
  auto* wc_cmd = app.add_subcommand("worstcase", "worst-case mean over a KL ball");
  wc_cmd->add_option("--z", z_text, "comma-separated support points")->required();
  wc_cmd->add_option("--q", q_text, "comma-separated empirical probabilities")->required();
  wc_cmd->add_option("--r", r, "radius")->required();

  RadiusArgs radius_args;
  auto* radius_cmd = app.add_subcommand("radius", "calibrated KL radii");
  radius_cmd->add_option("--T", radius_args.t, "sample count")->required();
  radius_cmd->add_option("--d", radius_args.d, "support size")->required();
  radius_cmd->add_option("--A", radius_args.actions, "number of actions");
  radius_cmd->add_option("--tmin", radius_args.tmin, "smallest sample count (default T)");
  radius_cmd->add_option("--alpha", radius_args.alpha, "global confidence budget");
  radius_cmd->add_option("--alpha-a", radius_args.alpha_a, "per-action budget (default alpha/A)");

  std::size_t h = 0, w = 0;
  auto* graph_cmd = app.add_subcommand("graph", "print a layered graph as an edge list");
  graph_cmd->set_help_flag("--help", "print this help message and exit");
  graph_cmd->add_option("--h", h, "layers")->required();
  graph_cmd->add_option("--w", w, "nodes per layer")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }

  try {
    if (*run_cmd) return do_run(run_args, out);
    if (*wc_cmd) return do_worstcase(z_text, q_text, r, out);
    if (*radius_cmd) return do_radius(radius_args, out);
    if (*graph_cmd) return do_graph(h, w, out);
  } catch (const Invalid& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitInvalid;
}

}  // namespace kldro::cli
