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

// Radius calibration for relative-entropy balls around empirical pmfs.
//
// Every calibration answers the same question: how large must r be so that
// Pr{ KL(empirical || nominal) > r } stays below a confidence budget, given
// T samples on a support of size d. Three tail bounds are available:
//
//   baseline  (T+1)^d e^{-T r}, combined with a union bound over |A| actions
//             so the budget is e^{-T_min * rate} / |A| per action;
//   agrawal   (e r T / (d-1))^{d-1} e^{-r T}, valid for r > (d-1)/T;
//   mardia    C(d, T) e^{-T r}, with C a Wallis-product series in sqrt(T).
//
// Support sizes are carried as doubles so the joint-distribution ball of the
// truncated benchmark (d^|A| atoms) can be calibrated with the same code.

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace kldro {

enum class Calibration { kBaseline, kAgrawal, kMardia, kMinOfThree, kManual };

std::string_view to_string(Calibration c);
Calibration calibration_from_string(std::string_view name);

struct RadiusInputs {
  double sample_count = 1;   // T_a
  double support_size = 1;   // d_a
  double num_actions = 1;    // |A|
  double min_sample_count = 1;  // T_min
  double alpha_a = 0.05;     // per-action confidence (agrawal, mardia)
  double rate = 1.0;         // exponential decay rate (baseline)

  /// Throws std::invalid_argument when an invariant is violated.
  void validate() const;
};

/// Raised when the Agrawal root bracket cannot be established.
class RadiusError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// -ln(alpha) / T_min.
double rate_from_alpha(double alpha, double min_sample_count);

double radius_baseline(const RadiusInputs& in);

/// Unique root above (d-1)/T of the Agrawal tail bound set equal to alpha_a.
/// Returns 0 for d = 1.
double radius_agrawal(const RadiusInputs& in);

/// ln of the Agrawal tail bound at radius r; the root solves this = ln alpha_a.
double agrawal_log_bound(double r, double sample_count, double support_size);

/// Mardia et al. constant C(d, T); requires d >= 2 and T >= 2.
double mardia_constant(double support_size, double sample_count);
double mardia_log_constant(double support_size, double sample_count);

/// Throws std::invalid_argument for d < 2 or T < 2.
double radius_mardia(const RadiusInputs& in);

struct CalibratedRadius {
  double value = 0.0;
  Calibration winner = Calibration::kBaseline;
};

/// Smallest applicable estimate among the three bounds.
CalibratedRadius radius_best(const RadiusInputs& in);

/// Per-action radii plus the formula that produced each one.
struct AmbiguitySpec {
  std::vector<double> radii;
  std::vector<Calibration> labels;
  Calibration method = Calibration::kMinOfThree;

  std::size_t size() const { return radii.size(); }
  void validate() const;

  /// Every action gets the same hand-picked radius.
  static AmbiguitySpec manual(std::size_t num_actions, double radius);
};

/// Calibrates one radius per action. `alpha_a` is the per-action budget
/// (see split_alpha); `alpha` the global one used for the baseline rate.
/// `method` selects one formula or kMinOfThree; d = 1 always yields 0.
AmbiguitySpec calibrate(const std::vector<std::size_t>& sample_counts,
                        const std::vector<std::size_t>& support_sizes,
                        const std::vector<double>& alpha_a, double alpha,
                        Calibration method = Calibration::kMinOfThree);

}  // namespace kldro
