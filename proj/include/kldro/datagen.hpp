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

// Synthetic instances: nominal cost distributions on {1, ..., d}, per-action
// sample sizes and incomplete data sets.

#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "kldro/graphs.hpp"
#include "kldro/marginals.hpp"
#include "kldro/rng.hpp"

namespace kldro {

enum class NominalKind { kShiftedBinomial, kMultinomial, kDiscretizedNormal };

std::string_view to_string(NominalKind kind);
NominalKind nominal_kind_from_string(std::string_view name);

struct NominalSpec {
  NominalKind kind = NominalKind::kShiftedBinomial;
  std::size_t support_max = 2;  // d
  std::vector<double> p;        // binomial / multinomial, one per action
  std::vector<double> mu;       // discretized normal
  std::vector<double> sigma;    // discretized normal

  std::size_t num_actions() const;
  void validate() const;
};

/// Parameters drawn as p_a ~ U(0,1) (renormalized to sum one for the
/// multinomial) or mu_a ~ U(1, d) with the given common sigma.
NominalSpec draw_nominal_spec(NominalKind kind, std::size_t support_max, std::size_t num_actions,
                              double sigma, CounterRng& rng);

/// Binomial(d-1, p) shifted by one onto {1, ..., d}.
std::vector<double> shifted_binomial_pmf(std::size_t support_max, double p);

/// Normal(mu, sigma) mass on [i - 1/2, i + 1/2], renormalized over {1, ..., d}.
std::vector<double> discretized_normal_pmf(std::size_t support_max, double mu, double sigma);

std::vector<Marginal> nominal_marginals(const NominalSpec& spec);
/// As above, checking one parameter set per arc of g.
std::vector<Marginal> nominal_marginals(const NominalSpec& spec, const LayeredGraph& g);

enum class SampleSizeKind { kUniform, kBinomial1, kBinomial2 };

std::string_view to_string(SampleSizeKind kind);
SampleSizeKind sample_size_kind_from_string(std::string_view name);

struct SampleSizeSpec {
  SampleSizeKind kind = SampleSizeKind::kUniform;
  std::size_t t_min = 1;  // lower end of the sample-size range
  std::size_t delta = 0;  // range width; upper end is t_min + delta

  std::size_t t_max() const { return t_min + delta; }
};

/// uniform: T_a ~ U{t_min..t_max}. binomial1: T_a = t_min + Bin(delta, p_a)
/// with p_a the min-max normalized nominal mean; binomial2 uses 1 - p_a.
/// Throws std::invalid_argument for binomial kinds when all means coincide.
std::vector<std::size_t> sample_sizes(const SampleSizeSpec& spec,
                                      const std::vector<Marginal>& nominal, CounterRng& rng);

enum class SamplingScheme { kProduct, kMultinomialJoint };

/// kProduct samples every action independently from its marginal.
/// kMultinomialJoint draws max T_a joint vectors c = 1 + Multinomial(d-1, p),
/// where p is recovered from the binomial marginals' means, and keeps the
/// first T_a coordinates of each action.
DataSet draw_dataset(const std::vector<Marginal>& nominal, const std::vector<std::size_t>& sizes,
                     SamplingScheme scheme, CounterRng& rng);

}  // namespace kldro
