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

// Worst-case expectation over a relative-entropy ball.
//
// For an empirical pmf qhat on points z and radius r,
//
//   max { sum_i z_i q_i : q in simplex, KL(qhat || q) <= r }
//     = min_{beta >= max z}  beta - e^{-r} prod_i (beta - z_i)^{qhat_i},
//
// a one-dimensional convex problem. Points with qhat_i = 0 drop out of the
// product but still bound beta from below, which is how the adversary gets
// to load unobserved support points.

#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>

#include "kldro/marginals.hpp"

namespace kldro {

class DualSolveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DualSolution {
  double beta = 0.0;   // minimizer; +inf when r = 0
  double value = 0.0;  // worst-case expected cost
  int iterations = 0;
  Marginal primal;     // worst-case pmf recovered from stationarity
};

/// beta - e^{-r} prod (beta - z_i)^{q_i} over weighted atoms. Zero weights
/// contribute a factor of one. Throws std::invalid_argument if beta lies
/// below the largest atom.
double kl_dual_objective(double beta, std::span<const double> values,
                         std::span<const double> weights, double radius);

struct ScalarMinimum {
  double beta = 0.0;
  double value = 0.0;
  int iterations = 0;
};

/// Golden-section minimization of kl_dual_objective over beta >= lower_bound,
/// where lower_bound must be at least max(values). The upper end of the
/// bracket is found by doubling a step from lower_bound + 1.
ScalarMinimum minimize_kl_dual(std::span<const double> values, std::span<const double> weights,
                               double radius, double lower_bound);

double dual_objective(double beta, const Marginal& empirical, double radius);

DualSolution solve_dual(const Marginal& empirical, double radius);

/// Brute-force primal check: lattice search over the simplex centred at the
/// empirical pmf, refined down to spacing `grid`. Returns the best feasible
/// mean found, which never exceeds the true worst case. Requires d <= 4.
double primal_oracle(const Marginal& empirical, double radius, double grid);

}  // namespace kldro
