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

#include "kldro/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <ostream>
#include <istream>
#include <thread>
#include <utility>

#include "kldro/io.hpp"
#include "kldro/rng.hpp"
#include "kldro/rules.hpp"

namespace kldro {
namespace {

constexpr std::uint64_t kFixedNominalStream = ~std::uint64_t{0};

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

bool is_whole(double v) { return std::isfinite(v) && v >= 0.0 && v == std::floor(v); }

std::vector<double> means_of(const std::vector<Marginal>& nominal) {
  std::vector<double> out(nominal.size());
  for (std::size_t a = 0; a < nominal.size(); ++a) out[a] = mean(nominal[a]);
  return out;
}

Prescription prescribe(Rule rule, const ExperimentConfig& cfg, const DataSet& data,
                       const LayeredGraph& g) {
  const double d = static_cast<double>(cfg.support_max);
  switch (rule) {
    case Rule::kDro: {
      const AmbiguitySpec spec = cfg.radius_override
                                     ? AmbiguitySpec::manual(data.num_actions(), *cfg.radius_override)
                                     : calibrate_dataset(data, cfg.alpha);
      return dro_prescribe(data, spec, g);
    }
    case Rule::kHoeffding:
      return hoeffding_prescribe(data, cfg.alpha, d, g, cfg.hoeffding_epsilon);
    case Rule::kDro1:
      return dro1_prescribe(data, cfg.alpha, d, g, cfg.radius_override);
    case Rule::kDro2:
      return dro2_prescribe(data, cfg.alpha, g, cfg.radius_override);
  }
  throw std::logic_error("unknown rule");
}

std::string getline_or_empty(std::istream& in, bool& ok) {
  std::string line;
  ok = static_cast<bool>(std::getline(in, line));
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

std::runtime_error csv_error(std::size_t line, const std::string& what) {
  return std::runtime_error("line " + std::to_string(line) + ": " + what);
}

std::size_t parse_count(std::string_view field) {
  const long long v = io::parse_int(field);
  if (v < 0) throw std::invalid_argument("negative count '" + std::string(field) + "'");
  return static_cast<std::size_t>(v);
}

}  // namespace

std::string_view to_string(Rule rule) {
  switch (rule) {
    case Rule::kDro: return "dro";
    case Rule::kHoeffding: return "hoeffding";
    case Rule::kDro1: return "dro1";
    case Rule::kDro2: return "dro2";
  }
  return "unknown";
}

Rule rule_from_string(std::string_view name) {
  for (auto r : {Rule::kDro, Rule::kHoeffding, Rule::kDro1, Rule::kDro2}) {
    if (to_string(r) == name) return r;
  }
  throw std::invalid_argument("unknown rule '" + std::string(name) +
                              "' (expected dro, hoeffding, dro1 or dro2)");
}

std::string_view to_string(SweepVar var) {
  switch (var) {
    case SweepVar::kTMin: return "tmin";
    case SweepVar::kDelta: return "delta";
    case SweepVar::kSigma: return "sigma";
  }
  return "unknown";
}

SweepVar sweep_var_from_string(std::string_view name) {
  for (auto v : {SweepVar::kTMin, SweepVar::kDelta, SweepVar::kSigma}) {
    if (to_string(v) == name) return v;
  }
  throw std::invalid_argument("unknown sweep variable '" + std::string(name) +
                              "' (expected tmin, delta or sigma)");
}

std::string_view to_string(MadCenter c) { return c == MadCenter::kMean ? "mean" : "median"; }

MadCenter mad_center_from_string(std::string_view name) {
  if (name == "mean") return MadCenter::kMean;
  if (name == "median") return MadCenter::kMedian;
  throw std::invalid_argument("unknown MAD centre '" + std::string(name) +
                              "' (expected mean or median)");
}

void ExperimentConfig::validate() const {
  require(layers >= 1, "layers must be >= 1");
  require(width >= 1, "width must be >= 1");
  require(support_max >= 1, "support_max must be >= 1");
  require(alpha > 0.0 && alpha < 1.0, "alpha must lie in (0,1)");
  require(replicates >= 1, "replicates must be >= 1");
  require(sigma > 0.0 && std::isfinite(sigma), "sigma must be > 0");
  require(sample_sizes.t_min >= 1, "sample_sizes.t_min must be >= 1");
  require(!grid.empty(), "grid must not be empty");
  require(threads >= 1, "threads must be >= 1");
  {
    auto sorted = grid;
    std::sort(sorted.begin(), sorted.end());
    require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(),
            "grid values must be distinct");
  }
  for (double v : grid) {
    switch (sweep_var) {
      case SweepVar::kTMin:
        require(is_whole(v) && v >= 1.0, "tmin grid values must be integers >= 1");
        break;
      case SweepVar::kDelta:
        require(is_whole(v), "delta grid values must be integers >= 0");
        break;
      case SweepVar::kSigma:
        require(v > 0.0 && std::isfinite(v), "sigma grid values must be > 0");
        break;
    }
  }
  if (radius_override) require(*radius_override >= 0.0, "radius_override must be >= 0");
  if (hoeffding_epsilon) require(*hoeffding_epsilon >= 0.0, "hoeffding_epsilon must be >= 0");
  if (nominal == NominalKind::kMultinomial) {
    require(support_max >= 2, "multinomial nominal needs support_max >= 2");
  }
}

ExperimentConfig ExperimentConfig::at(double value) const {
  ExperimentConfig c = *this;
  switch (sweep_var) {
    case SweepVar::kTMin: c.sample_sizes.t_min = static_cast<std::size_t>(value); break;
    case SweepVar::kDelta: c.sample_sizes.delta = static_cast<std::size_t>(value); break;
    case SweepVar::kSigma: c.sigma = value; break;
  }
  c.grid = {value};
  return c;
}

double nominal_loss(const Decision& x, const std::vector<Marginal>& nominal) {
  return path_cost(x, means_of(nominal));
}

double relative_loss(const Decision& x, const std::vector<Marginal>& nominal, const LayeredGraph& g) {
  const auto means = means_of(nominal);
  return path_cost(x, means) / shortest_path(g, means).value;
}

double sample_mean(const std::vector<double>& values) {
  require(!values.empty(), "sample_mean: empty sample");
  double total = 0.0;
  for (double v : values) total += v;
  return total / static_cast<double>(values.size());
}

double median(std::vector<double> values) {
  require(!values.empty(), "median: empty sample");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

double mad(const std::vector<double>& values, MadCenter center) {
  const double c = center == MadCenter::kMean ? sample_mean(values) : median(values);
  std::vector<double> dev(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) dev[i] = std::abs(values[i] - c);
  return median(std::move(dev));
}

ReplicateResult run_replicate(const ExperimentConfig& cfg, double sweep_value, std::size_t replicate) {
  const LayeredGraph g(cfg.layers, cfg.width);
  CounterRng rng = CounterRng::substream(cfg.seed, replicate);

  NominalSpec spec;
  if (cfg.fix_nominal) {
    CounterRng fixed = CounterRng::substream(cfg.seed, kFixedNominalStream);
    spec = draw_nominal_spec(cfg.nominal, cfg.support_max, g.arc_count(), cfg.sigma, fixed);
  } else {
    spec = draw_nominal_spec(cfg.nominal, cfg.support_max, g.arc_count(), cfg.sigma, rng);
  }
  const auto nominal = nominal_marginals(spec, g);
  const auto sizes = kldro::sample_sizes(cfg.sample_sizes, nominal, rng);
  const auto scheme = cfg.nominal == NominalKind::kMultinomial ? SamplingScheme::kMultinomialJoint
                                                               : SamplingScheme::kProduct;
  const DataSet data = draw_dataset(nominal, sizes, scheme, rng);

  const auto means = means_of(nominal);
  ReplicateResult out;
  out.replicate = replicate;
  out.sweep_value = sweep_value;
  out.sample_sizes = sizes;
  out.optimal_loss = shortest_path(g, means).value;
  for (Rule rule : cfg.rules) {
    Prescription p = prescribe(rule, cfg, data, g);
    RuleOutcome o;
    o.rule = rule;
    o.predicted_loss = p.predicted_loss;
    o.nominal_loss = path_cost(p.decision, means);
    o.rho = o.nominal_loss / out.optimal_loss;
    o.disappointed = o.nominal_loss > o.predicted_loss;
    o.decision = std::move(p.decision);
    out.outcomes.push_back(std::move(o));
  }
  return out;
}

SweepResult run_sweep(const ExperimentConfig& cfg) {
  cfg.validate();
  SweepResult result;
  result.config = cfg;
  const std::size_t n = cfg.replicates;
  const std::size_t jobs = cfg.grid.size() * n;

  std::vector<ExperimentConfig> point_cfgs;
  for (double v : cfg.grid) point_cfgs.push_back(cfg.at(v));
  std::vector<ReplicateResult> slots(jobs);
  std::vector<std::exception_ptr> errors(jobs);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};

  auto worker = [&] {
    for (;;) {
      const std::size_t job = next.fetch_add(1);
      if (job >= jobs || failed.load()) return;
      const std::size_t gi = job / n;
      const std::size_t rep = job % n;
      try {
        slots[job] = run_replicate(point_cfgs[gi], cfg.grid[gi], rep);
      } catch (...) {
        errors[job] = std::current_exception();
        failed.store(true);
      }
    }
  };
  const std::size_t threads = std::min(cfg.threads, jobs);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  for (std::size_t job = 0; job < jobs; ++job) {
    if (!errors[job]) continue;
    std::string what = "unknown error";
    try {
      std::rethrow_exception(errors[job]);
    } catch (const std::exception& e) {
      what = e.what();
    } catch (...) {
    }
    throw ExperimentError("replicate " + std::to_string(job % n) + " at " +
                          std::string(to_string(cfg.sweep_var)) + "=" +
                          io::format_double(cfg.grid[job / n]) + " failed (seed " +
                          std::to_string(cfg.seed) + ", stream key " +
                          std::to_string(cfg.seed ^ (job % n)) + "): " + what);
  }

  for (std::size_t gi = 0; gi < cfg.grid.size(); ++gi) {
    GridPointResult point;
    point.sweep_value = cfg.grid[gi];
    for (std::size_t rep = 0; rep < n; ++rep) point.replicates.push_back(std::move(slots[gi * n + rep]));
    result.points.push_back(std::move(point));
  }
  const auto aggs = aggregate(result_rows(result), cfg.mad_center);
  std::size_t k = 0;
  for (auto& point : result.points) {
    for (std::size_t r = 0; r < cfg.rules.size(); ++r) point.aggregates.push_back(aggs[k++].aggregate);
  }
  return result;
}

std::vector<ResultRow> result_rows(const SweepResult& result) {
  std::vector<ResultRow> rows;
  const auto& rules = result.config.rules;
  for (const auto& point : result.points) {
    for (std::size_t r = 0; r < rules.size(); ++r) {
      for (const auto& rep : point.replicates) {
        const auto& o = rep.outcomes[r];
        rows.push_back({result.config.sweep_var, point.sweep_value, o.rule, rep.replicate, o.rho,
                        o.predicted_loss, o.nominal_loss, o.disappointed});
      }
    }
  }
  return rows;
}

std::vector<AggregateRow> aggregate_rows(const SweepResult& result) {
  std::vector<AggregateRow> rows;
  for (const auto& point : result.points) {
    for (const auto& a : point.aggregates) rows.push_back({point.sweep_value, a});
  }
  return rows;
}

std::vector<AggregateRow> aggregate(const std::vector<ResultRow>& rows, MadCenter center) {
  std::vector<std::pair<double, Rule>> order;
  std::map<std::pair<double, Rule>, std::pair<std::vector<double>, std::size_t>> groups;
  for (const auto& row : rows) {
    const auto key = std::make_pair(row.sweep_value, row.rule);
    auto [it, inserted] = groups.try_emplace(key);
    if (inserted) order.push_back(key);
    it->second.first.push_back(row.rho);
    if (row.disappointed) ++it->second.second;
  }
  std::vector<AggregateRow> out;
  for (const auto& key : order) {
    const auto& [rhos, hits] = groups.at(key);
    RuleAggregate a;
    a.rule = key.second;
    a.mean_rho = sample_mean(rhos);
    a.mad_rho = mad(rhos, center);
    a.disappointment_freq = static_cast<double>(hits) / static_cast<double>(rhos.size());
    out.push_back({key.first, a});
  }
  return out;
}

void write_results_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  out << kResultsHeader << '\n';
  for (const auto& r : rows) {
    out << to_string(r.sweep_var) << ',' << io::format_double(r.sweep_value) << ','
        << to_string(r.rule) << ',' << r.replicate << ',' << io::format_double(r.rho) << ','
        << io::format_double(r.predicted_loss) << ',' << io::format_double(r.nominal_loss) << ','
        << (r.disappointed ? 1 : 0) << '\n';
  }
}

std::vector<ResultRow> read_results_csv(std::istream& in) {
  bool ok = false;
  std::size_t line_no = 1;
  if (getline_or_empty(in, ok) != kResultsHeader || !ok) {
    throw csv_error(1, "expected header '" + std::string(kResultsHeader) + "'");
  }
  std::vector<ResultRow> rows;
  for (;;) {
    const std::string line = getline_or_empty(in, ok);
    if (!ok) break;
    ++line_no;
    if (line.empty()) continue;
    const auto f = io::split(line);
    if (f.size() != 8) throw csv_error(line_no, "expected 8 fields, got " + std::to_string(f.size()));
    try {
      ResultRow r;
      r.sweep_var = sweep_var_from_string(f[0]);
      r.sweep_value = io::parse_double(f[1]);
      r.rule = rule_from_string(f[2]);
      r.replicate = parse_count(f[3]);
      r.rho = io::parse_double(f[4]);
      r.predicted_loss = io::parse_double(f[5]);
      r.nominal_loss = io::parse_double(f[6]);
      if (f[7] != "0" && f[7] != "1") throw std::invalid_argument("disappointed must be 0 or 1");
      r.disappointed = f[7] == "1";
      rows.push_back(r);
    } catch (const std::invalid_argument& e) {
      throw csv_error(line_no, e.what());
    }
  }
  return rows;
}

void write_aggregates_csv(std::ostream& out, const std::vector<AggregateRow>& rows) {
  out << kAggregatesHeader << '\n';
  for (const auto& r : rows) {
    out << io::format_double(r.sweep_value) << ',' << to_string(r.aggregate.rule) << ','
        << io::format_double(r.aggregate.mean_rho) << ',' << io::format_double(r.aggregate.mad_rho)
        << ',' << io::format_double(r.aggregate.disappointment_freq) << '\n';
  }
}

std::vector<AggregateRow> read_aggregates_csv(std::istream& in) {
  bool ok = false;
  std::size_t line_no = 1;
  if (getline_or_empty(in, ok) != kAggregatesHeader || !ok) {
    throw csv_error(1, "expected header '" + std::string(kAggregatesHeader) + "'");
  }
  std::vector<AggregateRow> rows;
  for (;;) {
    const std::string line = getline_or_empty(in, ok);
    if (!ok) break;
    ++line_no;
    if (line.empty()) continue;
    const auto f = io::split(line);
    if (f.size() != 5) throw csv_error(line_no, "expected 5 fields, got " + std::to_string(f.size()));
    try {
      AggregateRow r;
      r.sweep_value = io::parse_double(f[0]);
      r.aggregate.rule = rule_from_string(f[1]);
      r.aggregate.mean_rho = io::parse_double(f[2]);
      r.aggregate.mad_rho = io::parse_double(f[3]);
      r.aggregate.disappointment_freq = io::parse_double(f[4]);
      rows.push_back(r);
    } catch (const std::invalid_argument& e) {
      throw csv_error(line_no, e.what());
    }
  }
  return rows;
}

void write_plot_csv(std::ostream& out, const SweepResult& result) {
  out << "sweep_value";
  for (Rule r : result.config.rules) out << ',' << to_string(r) << "_mean," << to_string(r) << "_mad";
  out << '\n';
  for (const auto& point : result.points) {
    out << io::format_double(point.sweep_value);
    for (const auto& a : point.aggregates) {
      out << ',' << io::format_double(a.mean_rho) << ',' << io::format_double(a.mad_rho);
    }
    out << '\n';
  }
}

std::vector<std::filesystem::path> emit_results(const SweepResult& result,
                                                const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const std::vector<std::filesystem::path> paths{dir / "results.csv", dir / "aggregates.csv",
                                                 dir / ("plot_" + result.config.name + ".csv")};
  auto open = [](const std::filesystem::path& p) {
    std::ofstream f(p, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + p.string());
    return f;
  };
  {
    auto f = open(paths[0]);
    write_results_csv(f, result_rows(result));
  }
  {
    auto f = open(paths[1]);
    write_aggregates_csv(f, aggregate_rows(result));
  }
  {
    auto f = open(paths[2]);
    write_plot_csv(f, result);
  }
  return paths;
}

}  // namespace kldro
