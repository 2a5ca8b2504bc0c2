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
#include <numeric>

#include "kldro/datagen.hpp"
#include "kldro/rules.hpp"
#include "kldro/worstcase.hpp"

using namespace kldro;

namespace {

DataSet make_data(CounterRng& rng, std::size_t actions, std::size_t d, std::size_t t_lo,
                    std::size_t t_hi) {
  std::vector<Support> sup(actions, Support::integers(d));
  std::vector<std::vector<double>> samples(actions);
  for (auto& s : samples) {
    s.resize(rng.uniform_int(t_lo, t_hi));
    for (auto& c : s) c = static_cast<double>(rng.uniform_int(1, d));
  }
  return DataSet(sup, samples);
}

}  // namespace

TEST_CASE("alpha splitting") {
  CHECK(split_alpha(0.05, {1, 1}) == std::vector<double>{0.025, 0.025});
  const auto two = split_alpha(0.05, {1, 3});
  CHECK(two[0] == doctest::Approx(0.0375).epsilon(1e-15));
  CHECK(two[1] == doctest::Approx(0.0125).epsilon(1e-15));
  CHECK(split_alpha(0.05, {17}) == std::vector<double>{0.05});
  CounterRng rng(8);
  for (int it = 0; it < 100; ++it) {
    std::vector<std::size_t> t(1 + rng.uniform_int(0, 30));
    for (auto& v : t) v = rng.uniform_int(1, 40);
    const auto a = split_alpha(0.05, t);
    const double total = std::accumulate(a.begin(), a.end(), 0.0);
    CHECK(std::abs(total - 0.05) <= 1e-15);
    for (std::size_t i = 0; i < t.size(); ++i) {
      CHECK(a[i] * t[i] == doctest::Approx(a[0] * t[0]).epsilon(1e-14));
    }
  }
  CHECK_THROWS_AS(split_alpha(1.0, {1}), std::invalid_argument);
}

TEST_CASE("dro prediction examples") {
  const LayeredGraph g(1, 1);
  const DataSet data({Support::integers(2), Support::integers(2)}, {{1, 2}, {1}});
  AmbiguitySpec spec;
  spec.radii = {0.1, std::log(2.0)};
  spec.labels = {Calibration::kManual, Calibration::kManual};
  spec.method = Calibration::kManual;
  const Decision only = enumerate_paths(g).front();
  CHECK(dro_predict(only, data, spec) == doctest::Approx(1.712878631455824 + 1.5).epsilon(1e-9));
  CHECK(dro_predict(only, data, AmbiguitySpec::manual(2, 0.0)) == 2.5);

  CounterRng rng(9);
  const LayeredGraph g3(3, 3);
  const DataSet big = make_data(rng, g3.arc_count(), 5, 1, 6);
  for (const auto& p : enumerate_paths(g3)) {
    CHECK(dro_predict(p, big, AmbiguitySpec::manual(24, 60.0)) == doctest::Approx(4 * 5.0).epsilon(1e-9));
  }
}

TEST_CASE("dro at zero radius is sample average approximation") {
  CounterRng rng(10);
  const LayeredGraph g(3, 3);
  for (int it = 0; it < 20; ++it) {
    const DataSet data = make_data(rng, g.arc_count(), 6, 1, 8);
    const auto saa = shortest_path(g, empirical_costs(data));
    const auto dro = dro_prescribe(data, AmbiguitySpec::manual(24, 0.0), g);
    CHECK(dro.decision == saa.decision);
    CHECK(dro.predicted_loss == saa.value);
    std::vector<double> shifted = empirical_costs(data);
    for (auto& c : shifted) c += 0.75;
    CHECK(shortest_path(g, shifted).decision == saa.decision);
  }
}

TEST_CASE("dro prescription matches brute force") {
  CounterRng rng(12);
  for (int it = 0; it < 30; ++it) {
    const LayeredGraph g(1 + rng.uniform_int(0, 2), 1 + rng.uniform_int(0, 2));
    const DataSet data = make_data(rng, g.arc_count(), 4, 1, 10);
    const AmbiguitySpec spec = calibrate_dataset(data, 0.05);
    const auto p = dro_prescribe(data, spec, g);
    double best = HUGE_VAL;
    for (const auto& x : enumerate_paths(g)) best = std::min(best, dro_predict(x, data, spec));
    CHECK(p.predicted_loss == best);
    CHECK(dro_predict(p.decision, data, spec) == best);
    const auto emp = empirical_costs(data);
    for (std::size_t a = 0; a < emp.size(); ++a) {
      CHECK(p.arc_costs[a] >= emp[a] - 1e-12);
      CHECK(p.arc_costs[a] <= 4.0 + 1e-12);
    }
  }
}

TEST_CASE("hoeffding rule") {
  CHECK(hoeffding_epsilon(std::exp(-1.0), 2, 2.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(hoeffding_epsilon(1 - 1e-15, 5, 10.0) < 1e-6);
  const LayeredGraph g(1, 1);
  const DataSet data({Support::integers(3), Support::integers(3)}, {{3, 3}, {1, 2, 1, 1}});
  const auto p = hoeffding_prescribe(data, 0.05, 3.0, g);
  CHECK(p.arc_costs[0] == 3.0);
  CHECK(p.arc_costs[1] > 1.25);
  CHECK(p.arc_costs[1] <= 3.0);
  const auto zero = hoeffding_prescribe(data, 0.05, 3.0, g, 0.0);
  CHECK(zero.arc_costs == empirical_costs(data));
  CHECK_THROWS_AS(hoeffding_prescribe(data, 0.05, 3.0, LayeredGraph(2, 2)), std::invalid_argument);
}

TEST_CASE("truncation") {
  const DataSet equal({Support::integers(3), Support::integers(3)}, {{1, 2}, {3, 3}});
  CHECK(truncate_dataset(equal) == equal);
  const DataSet uneven({Support::integers(3), Support::integers(3)}, {{1, 2, 3}, {3, 3, 1, 2, 2}});
  const DataSet cut = truncate_dataset(uneven);
  CHECK(cut.sample_counts() == std::vector<std::size_t>{3, 3});
  CHECK(cut.min_sample_count() == uneven.min_sample_count());
  const auto joint = JointEmpirical::from_dataset(uneven);
  CHECK(joint.size() == 3);
  const DataSet dup({Support::integers(3), Support::integers(3)}, {{1, 1, 2}, {3, 3, 1}});
  const auto jd = JointEmpirical::from_dataset(dup);
  CHECK(jd.size() == 2);
  CHECK(jd.probs[0] == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("dro1 degenerate cases") {
  CounterRng rng(13);
  const LayeredGraph g(2, 2);
  const DataSet data = make_data(rng, g.arc_count(), 4, 3, 7);
  const auto zero = dro1_prescribe(data, 0.05, 4.0, g, 0.0);
  CHECK(zero.decision == shortest_path(g, empirical_costs(truncate_dataset(data))).decision);
  const auto joint = JointEmpirical::from_dataset(truncate_dataset(data));
  double emp = 0;
  for (std::size_t i = 0; i < joint.size(); ++i) emp += joint.probs[i] * path_cost(zero.decision, joint.atoms[i]);
  CHECK(zero.predicted_loss == doctest::Approx(emp).epsilon(1e-12));

  const LayeredGraph single(1, 1);
  const DataSet two({Support::integers(4), Support::integers(4)}, {{1, 2, 4}, {2, 2}});
  const auto p = dro1_prescribe(two, 0.05, 4.0, single, 0.3);
  CHECK(p.decision == enumerate_paths(single).front());
  const std::vector<double> costs{3, 4};
  const std::vector<double> w{0.5, 0.5};
  CHECK(p.predicted_loss == doctest::Approx(minimize_kl_dual(costs, w, 0.3, 8.0).value));
}

TEST_CASE("dro1 against a dense beta grid") {
  CounterRng rng(14);
  const LayeredGraph g(2, 2);
  for (int it = 0; it < 3; ++it) {
    const DataSet data = make_data(rng, g.arc_count(), 3, 4, 8);
    const double r = 0.4;
    const auto joint = JointEmpirical::from_dataset(truncate_dataset(data));
    const auto paths = enumerate_paths(g);
    double best = HUGE_VAL;
    for (const auto& x : paths) {
      std::vector<double> pc(joint.size());
      for (std::size_t i = 0; i < joint.size(); ++i) pc[i] = path_cost(x, joint.atoms[i]);
      double path_best = HUGE_VAL;
      for (double beta = 9.0; beta <= 60.0; beta += 1e-4) {
        double log_prod = 0;
        for (std::size_t i = 0; i < pc.size(); ++i) log_prod += joint.probs[i] * std::log(beta - pc[i]);
        path_best = std::min(path_best, beta - std::exp(-r + log_prod));
      }
      CHECK(dro1_predict(x, joint, r, 3.0) == doctest::Approx(path_best).epsilon(1e-7));
      best = std::min(best, path_best);
    }
    CHECK(dro1_prescribe(data, 0.05, 3.0, g, r).predicted_loss == doctest::Approx(best).epsilon(1e-7));
  }
}

TEST_CASE("joint radius") {
  const auto r = joint_radius(10, 10.0, 6, 0.05);
  CHECK(r.value == doctest::Approx(1.2367248139939494).epsilon(1e-9));
  CHECK(joint_radius(5, 1.0, 3, 0.05).value == 0.0);
  CHECK_THROWS(joint_radius(5, 50.0, 1000, 0.05));
}

TEST_CASE("dro2 rule") {
  CounterRng rng(15);
  const LayeredGraph g(2, 2);
  std::vector<Support> sup(8, Support::integers(4));
  std::vector<std::vector<double>> same(8);
  for (auto& s : same) {
    s.resize(5);
    for (auto& c : s) c = static_cast<double>(rng.uniform_int(1, 4));
  }
  const DataSet equal(sup, same);
  const auto a = dro2_prescribe(equal, 0.05, g);
  const auto b = dro_prescribe(equal, calibrate_dataset(equal, 0.05), g);
  CHECK(a.decision == b.decision);
  CHECK(a.predicted_loss == b.predicted_loss);

  // Duplicated data: the truncated prefix has the same empirical pmf.
  const LayeredGraph one(1, 1);
  const DataSet dup({Support::integers(2), Support::integers(2)}, {{1, 2, 1, 2, 1, 2}, {1, 2}});
  const auto full = dro_prescribe(dup, calibrate_dataset(dup, 0.05), one);
  const auto cut = dro2_prescribe(dup, 0.05, one);
  for (std::size_t k = 0; k < 2; ++k) CHECK(cut.arc_costs[k] >= full.arc_costs[k]);

  // The last two observations of arc 3 are very cheap; only the full data see them.
  const LayeredGraph fork(1, 2);
  const DataSet adv(std::vector<Support>(4, Support::integers(5)),
                    {{2, 2, 2}, {2, 2, 2}, {2, 2, 2}, {3, 3, 3, 1, 1, 1, 1, 1, 1, 1}});
  const auto d1 = dro_prescribe(adv, AmbiguitySpec::manual(4, 0.05), fork);
  const auto d2 = dro2_prescribe(adv, 0.05, fork, 0.05);
  CHECK(d1.decision != d2.decision);
}
