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

#include "kldro/radius.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <sstream>

namespace kldro {
namespace {

// log1p(t) - t without cancellation for small |t|.
double log1p_minus_x(double t) {
  if (std::abs(t) < 1e-2) {
    double term = t;
    double sum = 0.0;
    for (int k = 2; k <= 14; ++k) {
      term *= -t;
      sum += term / k;
    }
    return sum;
  }
  return std::log1p(t) - t;
}

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

std::string_view to_string(Calibration c) {
  switch (c) {
    case Calibration::kBaseline: return "baseline";
    case Calibration::kAgrawal: return "agrawal";
    case Calibration::kMardia: return "mardia";
    case Calibration::kMinOfThree: return "min-of-three";
    case Calibration::kManual: return "manual";
  }
  return "unknown";
}

Calibration calibration_from_string(std::string_view name) {
  for (auto c : {Calibration::kBaseline, Calibration::kAgrawal, Calibration::kMardia,
                 Calibration::kMinOfThree, Calibration::kManual}) {
    if (to_string(c) == name) return c;
  }
  throw std::invalid_argument("unknown calibration '" + std::string(name) + "'");
}

void RadiusInputs::validate() const {
  require(sample_count >= 1, "RadiusInputs: T_a must be >= 1");
  require(support_size >= 1, "RadiusInputs: d_a must be >= 1");
  require(num_actions >= 1, "RadiusInputs: |A| must be >= 1");
  require(min_sample_count >= 1 && min_sample_count <= sample_count,
          "RadiusInputs: need 1 <= T_min <= T_a");
  require(alpha_a > 0.0 && alpha_a < 1.0, "RadiusInputs: alpha_a must lie in (0,1)");
  require(rate > 0.0 && std::isfinite(rate), "RadiusInputs: rate must be > 0");
}

double rate_from_alpha(double alpha, double min_sample_count) {
  require(alpha > 0.0 && alpha < 1.0, "rate_from_alpha: alpha must lie in (0,1)");
  require(min_sample_count >= 1, "rate_from_alpha: T_min must be >= 1");
  return -std::log(alpha) / min_sample_count;
}

double radius_baseline(const RadiusInputs& in) {
  in.validate();
  const double T = in.sample_count;
  return (std::log(in.num_actions) + in.support_size * std::log1p(T) +
          in.min_sample_count * in.rate) /
         T;
}

double agrawal_log_bound(double r, double sample_count, double support_size) {
  const double k = support_size - 1.0;
  const double t = r * sample_count / k - 1.0;
  return k * log1p_minus_x(t);
}

double radius_agrawal(const RadiusInputs& in) {
  in.validate();
  if (in.support_size < 2) return 0.0;
  // With s = r T / (d-1) = 1 + t the bound reads (d-1)(log1p(t) - t), which
  // is 0 at t = 0 and strictly decreasing on t > 0.
  const double k = in.support_size - 1.0;
  const double target = std::log(in.alpha_a) / k;
  auto excess = [&](double t) { return log1p_minus_x(t) - target; };

  double lo = 0.0;
  double hi = 1.0;
  int doublings = 0;
  while (excess(hi) > 0.0) {
    lo = hi;
    hi *= 2.0;
    if (++doublings > 2000 || !std::isfinite(hi)) {
      std::ostringstream msg;
      msg << "radius_agrawal: no bracket after " << doublings << " doublings (T="
          << in.sample_count << ", d=" << in.support_size << ", alpha_a=" << in.alpha_a << ")";
      throw RadiusError(msg.str());
    }
  }
  const double scale = k / in.sample_count;
  // Bisect until the bracket collapses in floating point, well below 1e-10 in r.
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (excess(mid) > 0.0) lo = mid; else hi = mid;
  }
  return (1.0 + 0.5 * (lo + hi)) * scale;
}

double mardia_log_constant(double support_size, double sample_count) {
  require(support_size >= 2, "mardia: support size must be >= 2");
  require(sample_count >= 2, "mardia: sample count must be >= 2");
  const double log_x = 1.0 + 0.5 * std::log(sample_count) - std::log(2.0 * std::numbers::pi);
  const double last_j = support_size - 2.0;
  // Significance cut-off mirrors dropping terms that vanish in floating point.
  const double log_cutoff = std::log(1e-300);

  // u_0 = pi, u_1 = 2, u_i = u_{i-2} (i-1)/i; K_j = u_0 ... u_j, K_{-1} = 1.
  double log_u_prev2 = std::log(std::numbers::pi);
  double log_u_prev1 = std::log(2.0);
  double log_k = 0.0;  // log K_{j-1}
  double max_term = 0.0;
  double scaled_sum = 0.0;  // sum exp(term - max_term)
  double prev_term = -HUGE_VAL;
  for (std::uint64_t j = 0; static_cast<double>(j) <= last_j; ++j) {
    const double term = log_k + static_cast<double>(j) * log_x;
    if (j == 0 || term > max_term) {
      scaled_sum = (j == 0 ? 0.0 : scaled_sum * std::exp(max_term - term)) + 1.0;
      max_term = term;
    } else {
      scaled_sum += std::exp(term - max_term);
    }
    const double log_sum = max_term + std::log(scaled_sum);
    if (term < prev_term && term - log_sum < log_cutoff) break;
    prev_term = term;
    // Advance log K_{j-1} -> log K_j.
    double log_u;
    if (j == 0) {
      log_u = log_u_prev2;
    } else if (j == 1) {
      log_u = log_u_prev1;
    } else {
      const double jj = static_cast<double>(j);
      log_u = log_u_prev2 + std::log((jj - 1.0) / jj);
      log_u_prev2 = log_u_prev1;
      log_u_prev1 = log_u;
    }
    log_k += log_u;
  }
  // 3 u_1 / u_2 = 12 / pi.
  return std::log(12.0 / std::numbers::pi) + max_term + std::log(scaled_sum);
}

double mardia_constant(double support_size, double sample_count) {
  return std::exp(mardia_log_constant(support_size, sample_count));
}

double radius_mardia(const RadiusInputs& in) {
  in.validate();
  require(in.support_size >= 2 && in.sample_count >= 2,
          "radius_mardia: requires d_a >= 2 and T_a >= 2");
  return (mardia_log_constant(in.support_size, in.sample_count) - std::log(in.alpha_a)) /
         in.sample_count;
}

CalibratedRadius radius_best(const RadiusInputs& in) {
  CalibratedRadius best{radius_baseline(in), Calibration::kBaseline};
  if (in.support_size >= 2) {
    const double agrawal = radius_agrawal(in);
    if (agrawal < best.value) best = {agrawal, Calibration::kAgrawal};
    if (in.sample_count >= 2) {
      const double mardia = radius_mardia(in);
      if (mardia < best.value) best = {mardia, Calibration::kMardia};
    }
  }
  return best;
}

void AmbiguitySpec::validate() const {
  require(radii.size() == labels.size(), "AmbiguitySpec: radii and labels differ in length");
  for (double r : radii) {
    require(r >= 0.0 && !std::isnan(r), "AmbiguitySpec: radii must be >= 0");
  }
}

AmbiguitySpec AmbiguitySpec::manual(std::size_t num_actions, double radius) {
  AmbiguitySpec spec{std::vector<double>(num_actions, radius),
                     std::vector<Calibration>(num_actions, Calibration::kManual),
                     Calibration::kManual};
  spec.validate();
  return spec;
}

AmbiguitySpec calibrate(const std::vector<std::size_t>& sample_counts,
                        const std::vector<std::size_t>& support_sizes,
                        const std::vector<double>& alpha_a, double alpha, Calibration method) {
  const std::size_t n = sample_counts.size();
  require(n > 0, "calibrate: no actions");
  require(support_sizes.size() == n && alpha_a.size() == n,
          "calibrate: per-action inputs differ in length");
  require(method != Calibration::kManual, "calibrate: use AmbiguitySpec::manual");
  const std::size_t t_min = *std::min_element(sample_counts.begin(), sample_counts.end());
  const double rate = rate_from_alpha(alpha, static_cast<double>(t_min));

  AmbiguitySpec spec;
  spec.method = method;
  spec.radii.resize(n);
  spec.labels.resize(n);
  for (std::size_t a = 0; a < n; ++a) {
    RadiusInputs in{static_cast<double>(sample_counts[a]), static_cast<double>(support_sizes[a]),
                    static_cast<double>(n), static_cast<double>(t_min), alpha_a[a], rate};
    if (support_sizes[a] == 1) {
      // The ball around a one-point pmf is that point.
      in.validate();
      spec.radii[a] = 0.0;
      spec.labels[a] = method == Calibration::kMinOfThree ? Calibration::kBaseline : method;
      continue;
    }
    switch (method) {
      case Calibration::kBaseline:
        spec.radii[a] = radius_baseline(in);
        spec.labels[a] = Calibration::kBaseline;
        break;
      case Calibration::kAgrawal:
        spec.radii[a] = radius_agrawal(in);
        spec.labels[a] = Calibration::kAgrawal;
        break;
      case Calibration::kMardia:
        spec.radii[a] = radius_mardia(in);
        spec.labels[a] = Calibration::kMardia;
        break;
      default: {
        const auto best = radius_best(in);
        spec.radii[a] = best.value;
        spec.labels[a] = best.winner;
      }
    }
  }
  return spec;
}

}  // namespace kldro
