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

#include "kldro/rules.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "kldro/worstcase.hpp"

namespace kldro {
namespace {

using Rational = boost::multiprecision::cpp_rational;

Rational exact_rational(double v) {
  int exponent = 0;
  const double frac = std::frexp(v, &exponent);
  const auto mantissa = static_cast<long long>(std::ldexp(frac, 53));
  exponent -= 53;
  Rational r(mantissa);
  const Rational two_power = Rational(boost::multiprecision::cpp_int(1) << std::abs(exponent));
  if (exponent >= 0) return r * two_power;
  return r / two_power;
}

void check_graph(const DataSet& data, const LayeredGraph& g) {
  if (data.num_actions() != g.arc_count()) {
    throw std::invalid_argument("data set has " + std::to_string(data.num_actions()) +
                                " actions but the graph has " + std::to_string(g.arc_count()) +
                                " arcs");
  }
}

}  // namespace

std::vector<double> split_alpha(double alpha, const std::vector<std::size_t>& sample_counts) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("split_alpha: alpha must lie in (0,1)");
  if (sample_counts.empty()) throw std::invalid_argument("split_alpha: no actions");
  Rational inverse_sum = 0;
  for (auto t : sample_counts) {
    if (t == 0) throw std::invalid_argument("split_alpha: sample counts must be >= 1");
    inverse_sum += Rational(1, static_cast<long long>(t));
  }
  const Rational a = exact_rational(alpha);
  std::vector<double> out(sample_counts.size());
  for (std::size_t i = 0; i < sample_counts.size(); ++i) {
    const Rational share = a / (Rational(static_cast<long long>(sample_counts[i])) * inverse_sum);
    out[i] = share.convert_to<double>();
  }
  return out;
}

AmbiguitySpec calibrate_dataset(const DataSet& data, double alpha, Calibration method) {
  const auto counts = data.sample_counts();
  std::vector<std::size_t> support_sizes(data.num_actions());
  for (std::size_t a = 0; a < data.num_actions(); ++a) support_sizes[a] = data.support(a).size();
  return calibrate(counts, support_sizes, split_alpha(alpha, counts), alpha, method);
}

std::vector<double> empirical_costs(const DataSet& data) {
  std::vector<double> costs(data.num_actions());
  for (std::size_t a = 0; a < costs.size(); ++a) costs[a] = mean(data.empirical(a));
  return costs;
}

std::vector<double> worst_case_costs(const DataSet& data, const AmbiguitySpec& spec) {
  spec.validate();
  if (spec.size() != data.num_actions()) {
    throw std::invalid_argument("worst_case_costs: ambiguity spec covers " +
                                std::to_string(spec.size()) + " of " +
                                std::to_string(data.num_actions()) + " actions");
  }
  std::vector<double> costs(data.num_actions());
  for (std::size_t a = 0; a < costs.size(); ++a) {
    costs[a] = solve_dual(data.empirical(a), spec.radii[a]).value;
  }
  return costs;
}

double dro_predict(const Decision& x, const DataSet& data, const AmbiguitySpec& spec) {
  if (x.size() != data.num_actions()) throw std::invalid_argument("dro_predict: size mismatch");
  spec.validate();
  if (spec.size() != data.num_actions()) throw std::invalid_argument("dro_predict: spec size mismatch");
  double total = 0.0;
  for (std::size_t a = 0; a < x.size(); ++a) {
    if (x[a]) total += solve_dual(data.empirical(a), spec.radii[a]).value;
  }
  return total;
}

Prescription dro_prescribe(const DataSet& data, const AmbiguitySpec& spec, const LayeredGraph& g) {
  check_graph(data, g);
  auto costs = worst_case_costs(data, spec);
  auto path = shortest_path(g, costs);
  return {std::move(path.decision), path.value, std::move(costs)};
}

double hoeffding_epsilon(double alpha_a, std::size_t sample_count, double support_max) {
  if (!(alpha_a > 0.0 && alpha_a < 1.0)) {
    throw std::invalid_argument("hoeffding_epsilon: alpha_a must lie in (0,1)");
  }
  if (sample_count == 0) throw std::invalid_argument("hoeffding_epsilon: T_a must be >= 1");
  return (support_max - 1.0) *
         std::sqrt(-std::log(alpha_a) / (2.0 * static_cast<double>(sample_count)));
}

Prescription hoeffding_prescribe(const DataSet& data, double alpha, double support_max,
                                 const LayeredGraph& g, std::optional<double> epsilon_override) {
  check_graph(data, g);
  const auto counts = data.sample_counts();
  std::vector<double> costs = empirical_costs(data);
  std::vector<double> alpha_a;
  if (!epsilon_override) alpha_a = split_alpha(alpha, counts);
  for (std::size_t a = 0; a < costs.size(); ++a) {
    const double eps = epsilon_override ? *epsilon_override
                                        : hoeffding_epsilon(alpha_a[a], counts[a], support_max);
    costs[a] = std::min(costs[a] + eps, support_max);
  }
  auto path = shortest_path(g, costs);
  return {std::move(path.decision), path.value, std::move(costs)};
}

DataSet truncate_dataset(const DataSet& data) {
  const std::size_t t_min = data.min_sample_count();
  std::vector<Support> supports;
  std::vector<std::vector<double>> samples;
  for (std::size_t a = 0; a < data.num_actions(); ++a) {
    supports.push_back(data.support(a));
    const auto s = data.samples(a);
    samples.emplace_back(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(t_min));
  }
  return DataSet(std::move(supports), std::move(samples));
}

JointEmpirical JointEmpirical::from_dataset(const DataSet& data) {
  const std::size_t t_min = data.min_sample_count();
  const std::size_t m = data.num_actions();
  JointEmpirical joint;
  std::map<std::vector<double>, std::size_t> index;
  std::vector<std::size_t> counts;
  std::vector<double> atom(m);
  for (std::size_t j = 0; j < t_min; ++j) {
    for (std::size_t a = 0; a < m; ++a) atom[a] = data.samples(a)[j];
    auto [it, inserted] = index.try_emplace(atom, joint.atoms.size());
    if (inserted) {
      joint.atoms.push_back(atom);
      counts.push_back(0);
    }
    ++counts[it->second];
  }
  joint.probs.resize(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) {
    joint.probs[i] = static_cast<double>(counts[i]) / static_cast<double>(t_min);
  }
  return joint;
}

CalibratedRadius joint_radius(std::size_t min_sample_count, double support_max,
                              std::size_t num_actions, double alpha) {
  const double atoms = std::pow(support_max, static_cast<double>(num_actions));
  if (!std::isfinite(atoms)) {
    throw std::invalid_argument("joint_radius: d^|A| overflows a double");
  }
  const double t = static_cast<double>(min_sample_count);
  RadiusInputs in{t, atoms, 1.0, t, alpha, rate_from_alpha(alpha, t)};
  if (atoms < 2.0) {
    in.validate();
    return {0.0, Calibration::kBaseline};
  }
  return radius_best(in);
}

double dro1_predict(const Decision& x, const JointEmpirical& joint, double radius,
                    double support_max) {
  if (!(radius >= 0.0)) throw std::invalid_argument("dro1_predict: radius must be >= 0");
  std::vector<double> path_costs(joint.size());
  double empirical_mean = 0.0;
  for (std::size_t i = 0; i < joint.size(); ++i) {
    path_costs[i] = path_cost(x, joint.atoms[i]);
    empirical_mean += joint.probs[i] * path_costs[i];
  }
  if (radius == 0.0) return empirical_mean;
  const double lower = support_max * static_cast<double>(x.selected_count());
  return minimize_kl_dual(path_costs, joint.probs, radius, lower).value;
}

Prescription dro1_prescribe(const DataSet& data, double alpha, double support_max,
                            const LayeredGraph& g, std::optional<double> radius_override) {
  check_graph(data, g);
  const DataSet truncated = truncate_dataset(data);
  const double radius =
      radius_override ? *radius_override
                      : joint_radius(truncated.min_sample_count(), support_max, g.arc_count(), alpha).value;
  if (radius == 0.0) {
    // The joint ball is the empirical distribution itself, whose path means
    // are the truncated sample averages; solve it as the shortest path so
    // ties resolve exactly as in the other rules.
    auto costs = empirical_costs(truncated);
    auto path = shortest_path(g, costs);
    return {std::move(path.decision), path.value, {}};
  }
  const auto paths = enumerate_paths(g);
  const auto joint = JointEmpirical::from_dataset(truncated);
  std::size_t best = 0;
  double best_value = HUGE_VAL;
  for (std::size_t k = 0; k < paths.size(); ++k) {
    const double v = dro1_predict(paths[k], joint, radius, support_max);
    if (v < best_value) {
      best = k;
      best_value = v;
    }
  }
  return {paths[best], best_value, {}};
}

Prescription dro2_prescribe(const DataSet& data, double alpha, const LayeredGraph& g,
                            std::optional<double> radius_override) {
  const DataSet truncated = truncate_dataset(data);
  const AmbiguitySpec spec = radius_override
                                 ? AmbiguitySpec::manual(truncated.num_actions(), *radius_override)
                                 : calibrate_dataset(truncated, alpha);
  return dro_prescribe(truncated, spec, g);
}

}  // namespace kldro
