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
#include <numbers>

#include "kldro/radius.hpp"

using namespace kldro;

namespace {

RadiusInputs inputs(double t, double d, double a, double tmin, double alpha_a, double rate) {
  return RadiusInputs{t, d, a, tmin, alpha_a, rate};
}

}  // namespace

TEST_CASE("rate from alpha") {
  CHECK(rate_from_alpha(std::exp(-1.0), 1) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(rate_from_alpha(0.05, 20) == doctest::Approx(0.1497866136776995).epsilon(1e-14));
  CHECK(rate_from_alpha(1.0 - 1e-12, 5) > 0.0);
  CHECK(rate_from_alpha(1.0 - 1e-12, 5) < 1e-12);
  CHECK_THROWS_AS(rate_from_alpha(0.0, 5), std::invalid_argument);
  CHECK_THROWS_AS(rate_from_alpha(1.0, 5), std::invalid_argument);
}

TEST_CASE("baseline radius examples") {
  CHECK(radius_baseline(inputs(1, 1, 1, 1, 0.5, std::log(2.0))) ==
        doctest::Approx(2 * std::log(2.0)).epsilon(1e-14));
  CHECK(radius_baseline(inputs(4, 2, 2, 4, 0.5, 1.0)) ==
        doctest::Approx(1.978005751357037).epsilon(1e-14));
  CHECK(radius_baseline(inputs(25, 50, 24, 20, 0.05 / 24, std::log(20.0) / 20)) ==
        doctest::Approx(6.763144520199042).epsilon(1e-13));
}

TEST_CASE("agrawal radius examples") {
  const double r = radius_agrawal(inputs(1, 2, 1, 1, 2 / std::numbers::e, 1));
  CHECK(r == doctest::Approx(2.0).epsilon(1e-12));
  const double r10 = radius_agrawal(inputs(10, 2, 1, 10, 0.05, 1));
  CHECK(r10 == doctest::Approx(0.5743864518390578).epsilon(1e-12));
  CHECK(std::exp(agrawal_log_bound(r10, 10, 2)) == doctest::Approx(0.05).epsilon(1e-9));
  const double near_one = radius_agrawal(inputs(10, 3, 1, 10, 1 - 1e-9, 1));
  CHECK(near_one == doctest::Approx(0.2).epsilon(1e-3));
  CHECK(near_one > 0.2);
  CHECK(radius_agrawal(inputs(10, 1, 1, 10, 0.05, 1)) == 0.0);
}

TEST_CASE("mardia constants") {
  CHECK(mardia_constant(2, 10) == doctest::Approx(12 / std::numbers::pi).epsilon(1e-13));
  CHECK(mardia_constant(2, 200) == doctest::Approx(12 / std::numbers::pi).epsilon(1e-13));
  const double r = radius_mardia(inputs(10, 2, 1, 10, 0.05, 1));
  CHECK(r == doctest::Approx(0.4335909037492591).epsilon(1e-12));
  CHECK_THROWS_AS(radius_mardia(inputs(10, 1, 1, 10, 0.05, 1)), std::invalid_argument);
  CHECK_THROWS_AS(radius_mardia(inputs(1, 3, 1, 1, 0.05, 1)), std::invalid_argument);
  // Joint-ball scale: 10^6 and 50^24 atoms.
  CHECK(radius_mardia(inputs(10, 1e6, 1, 10, 0.05, 1)) ==
        doctest::Approx(1.2367248139939494).epsilon(1e-9));
  CHECK(radius_mardia(inputs(200, std::pow(50.0, 24), 1, 200, 0.05, 1)) ==
        doctest::Approx(0.6279277400678979).epsilon(1e-9));
}

TEST_CASE("best radius at the paper scale") {
  const auto in = inputs(25, 50, 24, 20, 0.05 / 24, std::log(20.0) / 20);
  CHECK(radius_agrawal(in) == doctest::Approx(3.11497).epsilon(1e-5));
  CHECK(radius_mardia(in) == doctest::Approx(0.99238).epsilon(1e-5));
  const auto best = radius_best(in);
  CHECK(best.winner == Calibration::kMardia);
  CHECK(best.value == radius_mardia(in));
  const auto one = radius_best(inputs(5, 1, 3, 5, 0.01, 0.5));
  CHECK(one.winner == Calibration::kBaseline);
}

TEST_CASE("radii decrease in the sample count") {
  for (double d : {2.0, 3.0, 5.0, 10.0, 50.0}) {
    double prev_b = HUGE_VAL, prev_a = HUGE_VAL, prev_m = HUGE_VAL;
    for (int t = 2; t <= 200; ++t) {
      const auto in = inputs(t, d, 4, t, 0.01, rate_from_alpha(0.05, t));
      const double b = radius_baseline(in), a = radius_agrawal(in), m = radius_mardia(in);
      CHECK(b < prev_b);
      CHECK(a < prev_a);
      CHECK(m < prev_m);
      CHECK(radius_best(in).value <= b);
      prev_b = b;
      prev_a = a;
      prev_m = m;
    }
  }
}

TEST_CASE("calibrate per action") {
  const auto spec = calibrate({10, 20}, {2, 1}, {0.03, 0.02}, 0.05);
  CHECK(spec.size() == 2);
  CHECK(spec.radii[1] == 0.0);
  CHECK(spec.radii[0] > 0.0);
  const auto manual = AmbiguitySpec::manual(3, 0.25);
  CHECK(manual.radii == std::vector<double>{0.25, 0.25, 0.25});
  CHECK(calibration_from_string("min-of-three") == Calibration::kMinOfThree);
  CHECK_THROWS(calibration_from_string("ldp"));
}
