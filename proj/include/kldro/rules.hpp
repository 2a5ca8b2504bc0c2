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

// Prediction and prescription rules on layered graphs.
//
//   dro        per-action KL balls around the empirical marginals, each
//              action priced at its worst-case mean, then a shortest path.
//   hoeffding  empirical mean plus a Hoeffding margin, clipped at d.
//   dro1       one KL ball around the joint empirical distribution of the
//              data truncated to T_min samples per action; every path is
//              priced by its own one-dimensional dual.
//   dro2       dro on the truncated data set.

#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "kldro/graphs.hpp"
#include "kldro/marginals.hpp"
#include "kldro/radius.hpp"

namespace kldro {

struct Prescription {
  Decision decision;
  double predicted_loss = 0.0;
  /// Per-arc costs the shortest path was solved on; empty for dro1, whose
  /// prediction does not decompose over arcs.
  std::vector<double> arc_costs;
};

/// alpha_a proportional to 1/T_a, summing to alpha in exact rational
/// arithmetic before rounding to double.
std::vector<double> split_alpha(double alpha, const std::vector<std::size_t>& sample_counts);

/// Per-action minimum-of-three radii with alpha split by split_alpha.
AmbiguitySpec calibrate_dataset(const DataSet& data, double alpha,
                                Calibration method = Calibration::kMinOfThree);

/// Sample-average cost of every action, mean(empirical_a).
std::vector<double> empirical_costs(const DataSet& data);

/// Worst-case mean of every action over its ball.
std::vector<double> worst_case_costs(const DataSet& data, const AmbiguitySpec& spec);

double dro_predict(const Decision& x, const DataSet& data, const AmbiguitySpec& spec);
Prescription dro_prescribe(const DataSet& data, const AmbiguitySpec& spec, const LayeredGraph& g);

/// (d-1) sqrt(ln(1/alpha_a) / (2 T_a)).
double hoeffding_epsilon(double alpha_a, std::size_t sample_count, double support_max);

/// `epsilon_override` replaces the calibrated margins with one fixed margin
/// per action (the empirical-mean-plus-constant rule).
Prescription hoeffding_prescribe(const DataSet& data, double alpha, double support_max,
                                 const LayeredGraph& g,
                                 std::optional<double> epsilon_override = std::nullopt);

/// First T_min observations of every action.
DataSet truncate_dataset(const DataSet& data);

/// Empirical distribution of the aligned cost vectors (c_{1,j}, ..., c_{m,j}),
/// j < T_min, with duplicate vectors merged.
struct JointEmpirical {
  std::vector<std::vector<double>> atoms;
  std::vector<double> probs;

  static JointEmpirical from_dataset(const DataSet& data);
  std::size_t size() const { return atoms.size(); }
};

/// Radius for the joint ball: the three calibrations with T_min samples on a
/// support of d^|A| points and the whole budget alpha on the single ball.
CalibratedRadius joint_radius(std::size_t min_sample_count, double support_max,
                              std::size_t num_actions, double alpha);

/// dro1 prediction of one path for a given joint radius.
double dro1_predict(const Decision& x, const JointEmpirical& joint, double radius,
                    double support_max);

Prescription dro1_prescribe(const DataSet& data, double alpha, double support_max,
                            const LayeredGraph& g,
                            std::optional<double> radius_override = std::nullopt);

Prescription dro2_prescribe(const DataSet& data, double alpha, const LayeredGraph& g,
                            std::optional<double> radius_override = std::nullopt);

}  // namespace kldro
