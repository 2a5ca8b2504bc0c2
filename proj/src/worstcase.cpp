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

#include "kldro/worstcase.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

namespace kldro {
namespace {

constexpr double kInvPhi = 0.6180339887498948482;  // (sqrt(5) - 1) / 2
constexpr double kBetaTolerance = 1e-10;
constexpr int kMaxGoldenIterations = 500;
constexpr int kMaxDoublings = 200;

// beta * (1 - exp(-r + sum w ln(1 - v / beta))); avoids the cancellation of
// beta minus a product of nearly the same size when beta is large.
double objective_unchecked(double beta, std::span<const double> values,
                           std::span<const double> weights, double radius) {
  double log_ratio = -radius;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (weights[i] == 0.0) continue;
    log_ratio += weights[i] * std::log1p(-values[i] / beta);
  }
  return -beta * std::expm1(log_ratio);
}

double divergence_from(const Marginal& empirical, const std::vector<double>& q) {
  double kl = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    const double p = empirical.prob(i);
    if (p > 0.0) kl += q[i] > 0.0 ? p * std::log(p / q[i]) : HUGE_VAL;
  }
  return kl;
}

// q_i proportional to qhat_i / (z_max - z_i + t).
std::vector<double> tilt(const Marginal& empirical, double t) {
  const Support& s = empirical.support();
  std::vector<double> q(s.size());
  double total = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    q[i] = empirical.prob(i) / (s.max() - s[i] + t);
    total += q[i];
  }
  for (double& v : q) v /= total;
  return q;
}

// Worst-case pmf when z_max is observed: the tilt whose divergence equals r,
// by bisection on log t starting from t0 = beta - z_max.
std::vector<double> tilted_solution(const Marginal& empirical, double radius, double t0) {
  double lo = t0 > 0.0 ? std::log(t0) : 0.0;
  double hi = lo;
  auto kl_at = [&](double log_t) { return divergence_from(empirical, tilt(empirical, std::exp(log_t))); };
  for (int i = 0; i < 200 && kl_at(hi) > radius; ++i) hi += 1.0 + (hi - lo);
  for (int i = 0; i < 200 && lo > -700.0 && kl_at(lo) <= radius; ++i) lo -= 1.0 + (hi - lo);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (kl_at(mid) > radius ? lo : hi) = mid;
  }
  return tilt(empirical, std::exp(hi));
}

}  // namespace

double kl_dual_objective(double beta, std::span<const double> values,
                         std::span<const double> weights, double radius) {
  if (values.size() != weights.size() || values.empty()) {
    throw std::invalid_argument("kl_dual_objective: values and weights must be nonempty and aligned");
  }
  const double top = *std::max_element(values.begin(), values.end());
  if (!(beta >= top)) {
    std::ostringstream msg;
    msg << "kl_dual_objective: beta " << beta << " below the largest atom " << top;
    throw std::invalid_argument(msg.str());
  }
  return objective_unchecked(beta, values, weights, radius);
}

ScalarMinimum minimize_kl_dual(std::span<const double> values, std::span<const double> weights,
                               double radius, double lower_bound) {
  auto f = [&](double beta) { return kl_dual_objective(beta, values, weights, radius); };

  ScalarMinimum best{lower_bound, f(lower_bound), 0};
  auto keep = [&](double beta, double value) {
    if (value < best.value) {
      best.beta = beta;
      best.value = value;
    }
  };

  // Grow the bracket until the objective turns upward; by convexity the
  // minimizer then lies in [lower_bound, lower_bound + 2 step].
  double step = 1.0;
  double f_mid = f(lower_bound + step);
  double f_hi = f(lower_bound + 2.0 * step);
  int doublings = 0;
  while (!(f_hi > f_mid)) {
    step *= 2.0;
    f_mid = f_hi;
    f_hi = f(lower_bound + 2.0 * step);
    if (++doublings > kMaxDoublings || !std::isfinite(f_hi)) {
      std::ostringstream msg;
      msg << "minimize_kl_dual: no bracket after " << doublings << " doublings (radius=" << radius
          << ", lower_bound=" << lower_bound << ")";
      throw DualSolveError(msg.str());
    }
  }
  keep(lower_bound + step, f_mid);

  double a = lower_bound;
  double b = lower_bound + 2.0 * step;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  int it = 0;
  while (b - a > kBetaTolerance * std::max(1.0, std::abs(a)) && it < kMaxGoldenIterations) {
    ++it;
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
    }
  }
  keep(x1, f1);
  keep(x2, f2);
  best.iterations = it;
  return best;
}

double dual_objective(double beta, const Marginal& empirical, double radius) {
  if (radius < 0.0) throw std::invalid_argument("dual_objective: radius must be >= 0");
  return kl_dual_objective(beta, empirical.support().points(), empirical.probs(), radius);
}

DualSolution solve_dual(const Marginal& empirical, double radius) {
  if (!(radius >= 0.0)) throw std::invalid_argument("solve_dual: radius must be >= 0");
  if (radius == 0.0) {
    return {HUGE_VAL, mean(empirical), 0, empirical};
  }
  const Support& support = empirical.support();
  const double z_max = support.max();
  const auto min = minimize_kl_dual(support.points(), empirical.probs(), radius, z_max);

  // Stationarity: q_i = mu qhat_i / (beta - z_i), mu = e^{-r} prod (beta - z_i)^{qhat_i}.
  const std::size_t d = support.size();
  std::vector<double> q(d, 0.0);
  const double top_weight = empirical.prob(d - 1);
  if (top_weight > 0.0 && top_weight < 1.0) {
    q = tilted_solution(empirical, radius, min.beta - z_max);
  } else if (top_weight > 0.0) {
    q = std::vector<double>(empirical.probs().begin(), empirical.probs().end());
  } else {
    double log_mu = -radius;
    for (std::size_t i = 0; i < d; ++i) {
      if (empirical.prob(i) > 0.0) log_mu += empirical.prob(i) * std::log(min.beta - support[i]);
    }
    const double mu = std::exp(log_mu);
    double total = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      if (empirical.prob(i) > 0.0) {
        q[i] = mu * empirical.prob(i) / (min.beta - support[i]);
        total += q[i];
      }
    }
    if (total < 1.0) {
      q[d - 1] = 1.0 - total;
    } else {
      for (double& qi : q) qi /= total;
    }
  }
  // Clamp rounding residue so the Marginal invariants hold exactly.
  double sum = 0.0;
  for (double& qi : q) {
    qi = std::clamp(qi, 0.0, 1.0);
    sum += qi;
  }
  for (double& qi : q) qi /= sum;
  // Pull back towards qhat if rounding left q outside the ball.
  for (int pass = 0; pass < 4; ++pass) {
    const double kl = divergence_from(empirical, q);
    if (kl <= radius) break;
    const double lambda = std::isfinite(kl) ? radius / kl * (1.0 - 1e-12) : 0.5;
    for (std::size_t i = 0; i < d; ++i) q[i] = empirical.prob(i) + lambda * (q[i] - empirical.prob(i));
  }
  return {min.beta, min.value, min.iterations, Marginal(support, std::move(q))};
}

double primal_oracle(const Marginal& empirical, double radius, double grid) {
  const Support& support = empirical.support();
  const std::size_t d = support.size();
  if (d > 4) throw std::invalid_argument("primal_oracle: support size must be <= 4");
  if (!(grid > 0.0)) throw std::invalid_argument("primal_oracle: grid must be > 0");
  if (radius < 0.0) throw std::invalid_argument("primal_oracle: radius must be >= 0");
  if (d == 1) return support[0];

  const std::size_t free_dims = d - 1;
  const auto qhat = empirical.probs();

  auto divergence = [&](const double* q) {
    double kl = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      if (qhat[i] == 0.0) continue;
      if (q[i] <= 0.0) return HUGE_VAL;
      kl += qhat[i] * std::log(qhat[i] / q[i]);
    }
    return kl;
  };

  // Lattice points c + h k with integer offsets |k_j| <= half_width. The
  // lattice always contains its centre, which starts at qhat (feasible), so
  // each refinement stays anchored on a feasible point.
  constexpr int half_width = 16;
  std::vector<double> center(qhat.begin(), qhat.end());
  double best_value = 0.0;
  for (std::size_t i = 0; i < d; ++i) best_value += support[i] * center[i];

  double h = 1.0 / 16.0;
  std::vector<int> k(free_dims);
  std::vector<double> q(d);
  while (true) {
    std::vector<double> level_best = center;
    std::fill(k.begin(), k.end(), -half_width);
    while (true) {
      double partial = 0.0;
      bool inside = true;
      for (std::size_t j = 0; j < free_dims; ++j) {
        q[j] = center[j] + h * k[j];
        if (q[j] < 0.0 || q[j] > 1.0) inside = false;
        partial += q[j];
      }
      q[d - 1] = 1.0 - partial;
      if (inside && q[d - 1] >= 0.0 && divergence(q.data()) <= radius) {
        double value = 0.0;
        for (std::size_t i = 0; i < d; ++i) value += support[i] * q[i];
        if (value > best_value) {
          best_value = value;
          level_best = q;
        }
      }
      std::size_t j = 0;
      while (j < free_dims && k[j] == half_width) k[j++] = -half_width;
      if (j == free_dims) break;
      ++k[j];
    }
    center = level_best;
    if (h <= grid) break;
    h /= 4.0;
  }
  return best_value;
}

}  // namespace kldro
