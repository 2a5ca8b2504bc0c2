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

#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

namespace kldro {

/// Finite, strictly increasing, strictly positive set of cost values.
class Support {
 public:
  explicit Support(std::vector<double> points);

  /// The integer support {1, ..., d}.
  static Support integers(std::size_t d);

  std::size_t size() const { return points_.size(); }
  double operator[](std::size_t i) const { return points_[i]; }
  double min() const { return points_.front(); }
  double max() const { return points_.back(); }
  std::span<const double> points() const { return points_; }

  /// Index of an exact support value, or size() when absent.
  std::size_t index_of(double value) const;
  bool contains(double value) const { return index_of(value) != size(); }

  friend bool operator==(const Support&, const Support&) = default;

 private:
  std::vector<double> points_;
};

/// A probability mass function over a Support.
class Marginal {
 public:
  /// Throws std::invalid_argument unless probs has the support's length,
  /// each entry lies in [0, 1] and the entries sum to one within 1e-12.
  Marginal(Support support, std::vector<double> probs);

  /// Point mass on the support value at `index`.
  static Marginal point_mass(Support support, std::size_t index);

  const Support& support() const { return support_; }
  std::span<const double> probs() const { return probs_; }
  double prob(std::size_t i) const { return probs_[i]; }
  std::size_t size() const { return probs_.size(); }

 private:
  Support support_;
  std::vector<double> probs_;
};

/// Per-action observation lists of heterogeneous length.
class DataSet {
 public:
  /// One support per action; every observation must be a support point and
  /// every action needs at least one observation.
  DataSet(std::vector<Support> supports, std::vector<std::vector<double>> samples);

  std::size_t num_actions() const { return samples_.size(); }
  const Support& support(std::size_t action) const { return supports_[action]; }
  std::span<const double> samples(std::size_t action) const { return samples_[action]; }
  std::size_t sample_count(std::size_t action) const { return samples_[action].size(); }
  std::vector<std::size_t> sample_counts() const;
  std::size_t min_sample_count() const;

  /// Empirical marginal of one action.
  Marginal empirical(std::size_t action) const;

  /// CSV with header `action_index,sample_index,cost`.
  void write_csv(std::ostream& out) const;
  /// Inverse of write_csv. Rows may come in any order; sample indices of an
  /// action must be exactly 0..T_a-1.
  static DataSet read_csv(std::istream& in, std::vector<Support> supports);

  friend bool operator==(const DataSet&, const DataSet&) = default;

 private:
  std::vector<Support> supports_;
  std::vector<std::vector<double>> samples_;
};

/// Frequency distribution of `samples` over `support`. Throws
/// std::invalid_argument naming the first sample outside the support.
Marginal empirical_from_samples(std::span<const double> samples, const Support& support);

/// Relative entropy sum_i p_i ln(p_i / q_i), with 0 ln(0/q) = 0 and
/// p ln(p/0) = +inf. Throws std::invalid_argument for different supports.
double kl_divergence(const Marginal& p, const Marginal& q);

double mean(const Marginal& m);

}  // namespace kldro
