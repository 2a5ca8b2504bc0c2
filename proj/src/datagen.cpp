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

#include "kldro/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace kldro {
namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

// Standard normal mass on [lo, hi], taken from whichever tail keeps the
// erfc difference well conditioned.
double normal_mass(double lo, double hi) {
  const double s = std::numbers::sqrt2;
  if (lo + hi > 0.0) return 0.5 * (std::erfc(lo / s) - std::erfc(hi / s));
  return 0.5 * (std::erfc(-hi / s) - std::erfc(-lo / s));
}

std::vector<double> normalized(std::vector<double> w) {
  double total = 0.0;
  for (double v : w) total += v;
  for (double& v : w) v /= total;
  return w;
}

}  // namespace

std::string_view to_string(NominalKind kind) {
  switch (kind) {
    case NominalKind::kShiftedBinomial: return "binomial";
    case NominalKind::kMultinomial: return "multinomial";
    case NominalKind::kDiscretizedNormal: return "normal";
  }
  return "unknown";
}

NominalKind nominal_kind_from_string(std::string_view name) {
  for (auto k : {NominalKind::kShiftedBinomial, NominalKind::kMultinomial,
                 NominalKind::kDiscretizedNormal}) {
    if (to_string(k) == name) return k;
  }
  throw std::invalid_argument("unknown nominal kind '" + std::string(name) +
                              "' (expected binomial, multinomial or normal)");
}

std::string_view to_string(SampleSizeKind kind) {
  switch (kind) {
    case SampleSizeKind::kUniform: return "uniform";
    case SampleSizeKind::kBinomial1: return "binomial1";
    case SampleSizeKind::kBinomial2: return "binomial2";
  }
  return "unknown";
}

SampleSizeKind sample_size_kind_from_string(std::string_view name) {
  for (auto k : {SampleSizeKind::kUniform, SampleSizeKind::kBinomial1, SampleSizeKind::kBinomial2}) {
    if (to_string(k) == name) return k;
  }
  throw std::invalid_argument("unknown sample-size kind '" + std::string(name) +
                              "' (expected uniform, binomial1 or binomial2)");
}

std::size_t NominalSpec::num_actions() const {
  return kind == NominalKind::kDiscretizedNormal ? mu.size() : p.size();
}

void NominalSpec::validate() const {
  require(support_max >= 1, "NominalSpec: d must be >= 1");
  const double d = static_cast<double>(support_max);
  switch (kind) {
    case NominalKind::kShiftedBinomial:
    case NominalKind::kMultinomial: {
      require(!p.empty(), "NominalSpec: no binomial parameters");
      double total = 0.0;
      for (double v : p) {
        require(v >= 0.0 && v <= 1.0, "NominalSpec: binomial p outside [0,1]");
        total += v;
      }
      if (kind == NominalKind::kMultinomial) {
        require(std::abs(total - 1.0) <= 1e-12, "NominalSpec: multinomial p must sum to 1");
      }
      break;
    }
    case NominalKind::kDiscretizedNormal:
      require(!mu.empty(), "NominalSpec: no normal parameters");
      require(mu.size() == sigma.size(), "NominalSpec: mu and sigma differ in length");
      for (std::size_t a = 0; a < mu.size(); ++a) {
        require(sigma[a] > 0.0 && std::isfinite(sigma[a]), "NominalSpec: sigma must be > 0");
        require(mu[a] >= 1.0 && mu[a] <= d, "NominalSpec: mu must lie in [1, d]");
      }
      break;
  }
}

NominalSpec draw_nominal_spec(NominalKind kind, std::size_t support_max, std::size_t num_actions,
                              double sigma, CounterRng& rng) {
  NominalSpec spec;
  spec.kind = kind;
  spec.support_max = support_max;
  if (kind == NominalKind::kDiscretizedNormal) {
    spec.mu.resize(num_actions);
    for (double& m : spec.mu) m = rng.uniform(1.0, static_cast<double>(support_max));
    spec.sigma.assign(num_actions, sigma);
  } else {
    spec.p.resize(num_actions);
    for (double& v : spec.p) v = rng.uniform();
    if (kind == NominalKind::kMultinomial) {
      spec.p = normalized(std::move(spec.p));
      // Nudge the largest entry so the sum is 1 to the last bit.
      double total = 0.0;
      for (double v : spec.p) total += v;
      auto top = std::max_element(spec.p.begin(), spec.p.end());
      *top = std::clamp(*top + (1.0 - total), 0.0, 1.0);
    }
  }
  spec.validate();
  return spec;
}

std::vector<double> shifted_binomial_pmf(std::size_t support_max, double p) {
  require(support_max >= 1, "shifted_binomial_pmf: d must be >= 1");
  require(p >= 0.0 && p <= 1.0, "shifted_binomial_pmf: p outside [0,1]");
  const std::size_t n = support_max - 1;
  std::vector<double> pmf(support_max);
  double coeff = 1.0;  // C(n, k)
  for (std::size_t k = 0; k <= n; ++k) {
    pmf[k] = coeff * std::pow(p, static_cast<double>(k)) * std::pow(1.0 - p, static_cast<double>(n - k));
    coeff = coeff * static_cast<double>(n - k) / static_cast<double>(k + 1);
  }
  return normalized(std::move(pmf));
}

std::vector<double> discretized_normal_pmf(std::size_t support_max, double mu, double sigma) {
  require(support_max >= 1, "discretized_normal_pmf: d must be >= 1");
  require(sigma > 0.0, "discretized_normal_pmf: sigma must be > 0");
  std::vector<double> pmf(support_max);
  for (std::size_t i = 0; i < support_max; ++i) {
    const double center = static_cast<double>(i + 1);
    pmf[i] = normal_mass((center - 0.5 - mu) / sigma, (center + 0.5 - mu) / sigma);
  }
  return normalized(std::move(pmf));
}

std::vector<Marginal> nominal_marginals(const NominalSpec& spec) {
  spec.validate();
  const Support support = Support::integers(spec.support_max);
  std::vector<Marginal> out;
  out.reserve(spec.num_actions());
  for (std::size_t a = 0; a < spec.num_actions(); ++a) {
    if (spec.kind == NominalKind::kDiscretizedNormal) {
      out.emplace_back(support, discretized_normal_pmf(spec.support_max, spec.mu[a], spec.sigma[a]));
    } else {
      out.emplace_back(support, shifted_binomial_pmf(spec.support_max, spec.p[a]));
    }
  }
  return out;
}

std::vector<Marginal> nominal_marginals(const NominalSpec& spec, const LayeredGraph& g) {
  require(spec.num_actions() == g.arc_count(),
          "nominal_marginals: " + std::to_string(spec.num_actions()) + " parameter sets for " +
              std::to_string(g.arc_count()) + " arcs");
  return nominal_marginals(spec);
}

std::vector<std::size_t> sample_sizes(const SampleSizeSpec& spec,
                                      const std::vector<Marginal>& nominal, CounterRng& rng) {
  require(spec.t_min >= 1, "sample_sizes: t_min must be >= 1");
  require(!nominal.empty(), "sample_sizes: no actions");
  std::vector<std::size_t> sizes(nominal.size(), spec.t_min);
  if (spec.kind == SampleSizeKind::kUniform) {
    for (auto& t : sizes) t = rng.uniform_int(spec.t_min, spec.t_max());
    return sizes;
  }
  std::vector<double> means(nominal.size());
  for (std::size_t a = 0; a < nominal.size(); ++a) means[a] = mean(nominal[a]);
  const auto [lo, hi] = std::minmax_element(means.begin(), means.end());
  const double lo_v = *lo;
  const double range = *hi - lo_v;
  require(range > 0.0, "sample_sizes: binomial sample sizes need distinct nominal means");
  for (std::size_t a = 0; a < sizes.size(); ++a) {
    double p = std::clamp((means[a] - lo_v) / range, 0.0, 1.0);
    if (spec.kind == SampleSizeKind::kBinomial2) p = 1.0 - p;
    sizes[a] = spec.t_min + rng.binomial(spec.delta, p);
  }
  return sizes;
}

DataSet draw_dataset(const std::vector<Marginal>& nominal, const std::vector<std::size_t>& sizes,
                     SamplingScheme scheme, CounterRng& rng) {
  require(!nominal.empty(), "draw_dataset: no actions");
  require(nominal.size() == sizes.size(), "draw_dataset: nominal and sizes differ in length");
  for (auto t : sizes) require(t >= 1, "draw_dataset: every T_a must be >= 1");

  std::vector<Support> supports;
  supports.reserve(nominal.size());
  for (const auto& m : nominal) supports.push_back(m.support());
  std::vector<std::vector<double>> samples(nominal.size());

  if (scheme == SamplingScheme::kProduct) {
    for (std::size_t a = 0; a < nominal.size(); ++a) {
      samples[a].resize(sizes[a]);
      for (auto& c : samples[a]) c = nominal[a].support()[rng.categorical(nominal[a].probs())];
    }
    return DataSet(std::move(supports), std::move(samples));
  }

  const std::size_t d = nominal.front().size();
  for (const auto& m : nominal) {
    require(m.support() == Support::integers(d),
            "draw_dataset: multinomial sampling needs a common {1..d} support");
  }
  std::vector<double> p(nominal.size(), 1.0);
  if (d > 1) {
    for (std::size_t a = 0; a < nominal.size(); ++a) {
      p[a] = std::max(0.0, (mean(nominal[a]) - 1.0) / static_cast<double>(d - 1));
    }
  }
  p = normalized(std::move(p));
  const std::size_t rounds = *std::max_element(sizes.begin(), sizes.end());
  std::vector<std::size_t> counts(nominal.size());
  for (std::size_t j = 0; j < rounds; ++j) {
    std::fill(counts.begin(), counts.end(), 0);
    for (std::size_t trial = 0; trial + 1 < d; ++trial) ++counts[rng.categorical(p)];
    for (std::size_t a = 0; a < nominal.size(); ++a) {
      if (j < sizes[a]) samples[a].push_back(static_cast<double>(counts[a] + 1));
    }
  }
  return DataSet(std::move(supports), std::move(samples));
}

}  // namespace kldro
