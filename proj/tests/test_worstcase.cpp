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

#include <doctest.h>

#include <cmath>

#include "kldro/marginals.hpp"
#include "kldro/rng.hpp"
#include "kldro/worstcase.hpp"

using namespace kldro;

TEST_CASE("dual objective examples") {
  const Support s = Support::integers(2);
  CHECK(dual_objective(2.0, Marginal(s, {0.5, 0.5}), 0.0) == 2.0);
  CHECK(dual_objective(3.0, Marginal(s, {1.0, 0.0}), std::log(2.0)) ==
        doctest::Approx(2.0).epsilon(1e-15));
  CHECK(dual_objective(1e9, Marginal(s, {0.5, 0.5}), 0.0) == doctest::Approx(1.5).epsilon(1e-8));
  CHECK_THROWS_AS(dual_objective(1.5, Marginal(s, {0.5, 0.5}), 0.1), std::invalid_argument);
}

TEST_CASE("solve dual examples") {
  const Support s = Support::integers(2);
  const Marginal half(s, {0.5, 0.5});
  CHECK(solve_dual(half, 0.0).value == 1.5);
  const auto sol = solve_dual(half, 0.1);
  CHECK(sol.value == doctest::Approx(1.712878631455824).epsilon(1e-9));
  CHECK(sol.primal.prob(0) == doctest::Approx(0.2871213685441760).epsilon(1e-7));
  CHECK(kl_divergence(half, sol.primal) <= 0.1 + 1e-8);
  CHECK(solve_dual(Marginal(s, {1.0, 0.0}), std::log(2.0)).value ==
        doctest::Approx(1.5).epsilon(1e-9));
}

TEST_CASE("saturation at the largest atom") {
  const Marginal one(Support({4.0}), {1.0});
  CHECK(solve_dual(one, 3.0).value == 4.0);
  const Marginal m(Support::integers(3), {0.2, 0.3, 0.5});
  CHECK(solve_dual(m, 40.0).value == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(solve_dual(Marginal(Support::integers(3), {0, 0, 1}), 0.5).value == 3.0);
}

TEST_CASE("primal oracle examples") {
  const Support s = Support::integers(2);
  const Marginal half(s, {0.5, 0.5});
  CHECK(primal_oracle(half, 0.1, 1e-3) == doctest::Approx(solve_dual(half, 0.1).value).epsilon(2e-3));
  CHECK(primal_oracle(half, 0.0, 1e-3) == doctest::Approx(1.5));
  CHECK(primal_oracle(Marginal(Support({2.0}), {1.0}), 1.0, 1e-3) == 2.0);
  CHECK_THROWS(primal_oracle(Marginal(Support::integers(5), {0.2, 0.2, 0.2, 0.2, 0.2}), 0.1, 1e-3));
}

TEST_CASE("worst case is monotone in the radius and bounded") {
  CounterRng rng(11);
  for (int it = 0; it < 200; ++it) {
    const std::size_t d = 2 + rng.uniform_int(0, 6);
    std::vector<double> w(d);
    double total = 0;
    for (auto& v : w) total += (v = rng.uniform() + 0.01);
    for (auto& v : w) v /= total;
    double acc = 0;
    for (std::size_t i = 0; i + 1 < d; ++i) acc += w[i];
    w.back() = 1 - acc;
    const Marginal m(Support::integers(d), w);
    double prev = mean(m);
    for (double r : {0.01, 0.05, 0.2, 0.5, 1.0, 3.0}) {
      const auto sol = solve_dual(m, r);
      CHECK(sol.value >= prev - 1e-9);
      CHECK(sol.value <= static_cast<double>(d) + 1e-12);
      CHECK(kl_divergence(m, sol.primal) <= r + 1e-8);
      double primal_mean = 0;
      for (std::size_t i = 0; i < d; ++i) primal_mean += sol.primal.prob(i) * static_cast<double>(i + 1);
      CHECK(primal_mean == doctest::Approx(sol.value).epsilon(1e-6));
      prev = sol.value;
    }
  }
}

TEST_CASE("scalar minimizer honours the lower bound") {
  const std::vector<double> z{1, 2};
  const std::vector<double> q{0.5, 0.5};
  const auto a = minimize_kl_dual(z, q, 0.1, 2.0);
  const auto b = minimize_kl_dual(z, q, 0.1, 10.0);
  CHECK(a.value == doctest::Approx(1.712878631455824).epsilon(1e-9));
  CHECK(b.beta == 10.0);
  CHECK(b.value == doctest::Approx(kl_dual_objective(10.0, z, q, 0.1)));
}
