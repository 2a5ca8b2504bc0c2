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

// Monte-Carlo harness for out-of-sample evaluation of the rules.
//
// A sweep varies one parameter over a grid. At every grid point it runs N0
// replicates; replicate i owns the stream CounterRng::substream(seed, i) and
// draws, in this order, the nominal parameters, the sample sizes and the
// data set. Each rule's prescription is scored by its nominal relative loss
// rho = f(x, Q*) / min_x f(x, Q*) and by whether it was disappointed,
// f(x, Q*) > predicted loss.

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "kldro/datagen.hpp"
#include "kldro/graphs.hpp"
#include "kldro/marginals.hpp"

namespace kldro {

enum class Rule { kDro, kHoeffding, kDro1, kDro2 };
std::string_view to_string(Rule rule);
Rule rule_from_string(std::string_view name);

enum class SweepVar { kTMin, kDelta, kSigma };
std::string_view to_string(SweepVar var);
SweepVar sweep_var_from_string(std::string_view name);

/// Centre for the absolute deviations in the MAD statistic.
enum class MadCenter { kMean, kMedian };
std::string_view to_string(MadCenter c);
MadCenter mad_center_from_string(std::string_view name);

struct ExperimentConfig {
  std::string name = "experiment";
  std::size_t layers = 7;  // h
  std::size_t width = 4;   // w
  std::size_t support_max = 50;  // d
  double alpha = 0.05;
  std::size_t replicates = 50;  // N0
  NominalKind nominal = NominalKind::kShiftedBinomial;
  double sigma = 12.5;  // common sigma of the discretized normal
  SampleSizeSpec sample_sizes{SampleSizeKind::kUniform, 25, 5};
  SweepVar sweep_var = SweepVar::kTMin;
  std::vector<double> grid{25};
  std::vector<Rule> rules{Rule::kDro, Rule::kHoeffding};
  std::uint64_t seed = 1;
  MadCenter mad_center = MadCenter::kMean;
  /// Draw the nominal parameters once per run instead of per replicate.
  bool fix_nominal = false;
  /// Replace every calibrated KL radius (dro, dro1, dro2) with this value.
  std::optional<double> radius_override;
  /// Replace every Hoeffding margin with this value.
  std::optional<double> hoeffding_epsilon;
  std::size_t threads = 1;

  void validate() const;
  /// Copy with the sweep variable set to `value`.
  ExperimentConfig at(double value) const;
};

struct RuleOutcome {
  Rule rule = Rule::kDro;
  Decision decision;
  double predicted_loss = 0.0;
  double nominal_loss = 0.0;
  double rho = 1.0;
  bool disappointed = false;
};

struct ReplicateResult {
  std::size_t replicate = 0;
  double sweep_value = 0.0;
  std::vector<std::size_t> sample_sizes;
  double optimal_loss = 0.0;
  std::vector<RuleOutcome> outcomes;  // in config.rules order
};

struct RuleAggregate {
  Rule rule = Rule::kDro;
  double mean_rho = 0.0;
  double mad_rho = 0.0;
  double disappointment_freq = 0.0;

  friend bool operator==(const RuleAggregate&, const RuleAggregate&) = default;
};

struct GridPointResult {
  double sweep_value = 0.0;
  std::vector<ReplicateResult> replicates;
  std::vector<RuleAggregate> aggregates;
};

struct SweepResult {
  ExperimentConfig config;
  std::vector<GridPointResult> points;
};

class ExperimentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// sum_a mean(nominal_a) x_a.
double nominal_loss(const Decision& x, const std::vector<Marginal>& nominal);

/// nominal_loss(x) over the nominal optimum found by shortest_path.
double relative_loss(const Decision& x, const std::vector<Marginal>& nominal, const LayeredGraph& g);

/// mean and MAD (median of |v - centre|) of a sample.
double sample_mean(const std::vector<double>& values);
double median(std::vector<double> values);
double mad(const std::vector<double>& values, MadCenter center);

/// One replicate of `cfg` (already specialised to a grid point).
ReplicateResult run_replicate(const ExperimentConfig& cfg, double sweep_value, std::size_t replicate);

/// Full sweep. A failing replicate aborts with an ExperimentError naming its
/// seed, grid value and replicate index.
SweepResult run_sweep(const ExperimentConfig& cfg);

/// One row of results.csv.
struct ResultRow {
  SweepVar sweep_var = SweepVar::kTMin;
  double sweep_value = 0.0;
  Rule rule = Rule::kDro;
  std::size_t replicate = 0;
  double rho = 1.0;
  double predicted_loss = 0.0;
  double nominal_loss = 0.0;
  bool disappointed = false;

  friend bool operator==(const ResultRow&, const ResultRow&) = default;
};

struct AggregateRow {
  double sweep_value = 0.0;
  RuleAggregate aggregate;

  friend bool operator==(const AggregateRow&, const AggregateRow&) = default;
};

std::vector<ResultRow> result_rows(const SweepResult& result);
std::vector<AggregateRow> aggregate_rows(const SweepResult& result);

/// Aggregates rows grouped by (sweep_value, rule) in first-seen order.
std::vector<AggregateRow> aggregate(const std::vector<ResultRow>& rows, MadCenter center);

inline constexpr std::string_view kResultsHeader =
    "sweep_var,sweep_value,rule,replicate,rho,predicted_loss,nominal_loss,disappointed";
inline constexpr std::string_view kAggregatesHeader =
    "sweep_value,rule,mean_rho,mad_rho,disappointment_freq";

void write_results_csv(std::ostream& out, const std::vector<ResultRow>& rows);
std::vector<ResultRow> read_results_csv(std::istream& in);
void write_aggregates_csv(std::ostream& out, const std::vector<AggregateRow>& rows);
std::vector<AggregateRow> read_aggregates_csv(std::istream& in);

/// Wide plot table for one panel: sweep_value then <rule>_mean,<rule>_mad
/// for each rule of the run.
void write_plot_csv(std::ostream& out, const SweepResult& result);

/// Writes results.csv, aggregates.csv and plot_<name>.csv into `dir`
/// (created if missing). Returns the paths written.
std::vector<std::filesystem::path> emit_results(const SweepResult& result,
                                                const std::filesystem::path& dir);

}  // namespace kldro
