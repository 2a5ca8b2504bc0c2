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

#include "kldro/marginals.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

#include "kldro/io.hpp"

namespace kldro {

Support::Support(std::vector<double> points) : points_(std::move(points)) {
  if (points_.empty()) throw std::invalid_argument("Support: empty point set");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!(points_[i] > 0.0) || !std::isfinite(points_[i])) {
      throw std::invalid_argument("Support: points must be finite and > 0, got " +
                                  io::format_double(points_[i]));
    }
    if (i > 0 && !(points_[i - 1] < points_[i])) {
      throw std::invalid_argument("Support: points must be strictly increasing");
    }
  }
}

Support Support::integers(std::size_t d) {
  std::vector<double> pts(d);
  for (std::size_t i = 0; i < d; ++i) pts[i] = static_cast<double>(i + 1);
  return Support(std::move(pts));
}

std::size_t Support::index_of(double value) const {
  auto it = std::lower_bound(points_.begin(), points_.end(), value);
  if (it == points_.end() || *it != value) return points_.size();
  return static_cast<std::size_t>(it - points_.begin());
}

Marginal::Marginal(Support support, std::vector<double> probs)
    : support_(std::move(support)), probs_(std::move(probs)) {
  if (probs_.size() != support_.size()) {
    throw std::invalid_argument("Marginal: " + std::to_string(probs_.size()) +
                                " probabilities for a support of size " +
                                std::to_string(support_.size()));
  }
  double total = 0.0;
  for (double p : probs_) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw std::invalid_argument("Marginal: probability outside [0,1]: " + io::format_double(p));
    }
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("Marginal: probabilities sum to " + io::format_double(total));
  }
}

Marginal Marginal::point_mass(Support support, std::size_t index) {
  std::vector<double> probs(support.size(), 0.0);
  probs.at(index) = 1.0;
  return Marginal(std::move(support), std::move(probs));
}

DataSet::DataSet(std::vector<Support> supports, std::vector<std::vector<double>> samples)
    : supports_(std::move(supports)), samples_(std::move(samples)) {
  if (supports_.size() != samples_.size()) {
    throw std::invalid_argument("DataSet: supports and sample lists differ in length");
  }
  if (samples_.empty()) throw std::invalid_argument("DataSet: no actions");
  for (std::size_t a = 0; a < samples_.size(); ++a) {
    if (samples_[a].empty()) {
      throw std::invalid_argument("DataSet: action " + std::to_string(a) + " has no observations");
    }
    for (double c : samples_[a]) {
      if (!supports_[a].contains(c)) {
        throw std::invalid_argument("DataSet: observation " + io::format_double(c) +
                                    " of action " + std::to_string(a) + " is not a support point");
      }
    }
  }
}

std::vector<std::size_t> DataSet::sample_counts() const {
  std::vector<std::size_t> counts(samples_.size());
  for (std::size_t a = 0; a < samples_.size(); ++a) counts[a] = samples_[a].size();
  return counts;
}

std::size_t DataSet::min_sample_count() const {
  std::size_t m = std::numeric_limits<std::size_t>::max();
  for (const auto& s : samples_) m = std::min(m, s.size());
  return m;
}

Marginal DataSet::empirical(std::size_t action) const {
  return empirical_from_samples(samples_.at(action), supports_.at(action));
}

void DataSet::write_csv(std::ostream& out) const {
  out << "action_index,sample_index,cost\n";
  for (std::size_t a = 0; a < samples_.size(); ++a) {
    for (std::size_t j = 0; j < samples_[a].size(); ++j) {
      out << a << ',' << j << ',' << io::format_double(samples_[a][j]) << '\n';
    }
  }
}

DataSet DataSet::read_csv(std::istream& in, std::vector<Support> supports) {
  std::string line;
  if (!std::getline(in, line) || line != "action_index,sample_index,cost") {
    throw std::invalid_argument("DataSet::read_csv: missing header");
  }
  std::vector<std::vector<double>> samples(supports.size());
  std::vector<std::vector<bool>> seen(supports.size());
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = io::split(line);
    if (fields.size() != 3) {
      throw std::invalid_argument("DataSet::read_csv: line " + std::to_string(line_no) +
                                  ": expected 3 fields");
    }
    const long long a = io::parse_int(fields[0]);
    const long long j = io::parse_int(fields[1]);
    if (a < 0 || static_cast<std::size_t>(a) >= supports.size() || j < 0) {
      throw std::invalid_argument("DataSet::read_csv: line " + std::to_string(line_no) +
                                  ": index out of range");
    }
    auto& s = samples[a];
    auto& f = seen[a];
    if (static_cast<std::size_t>(j) >= s.size()) {
      s.resize(j + 1, 0.0);
      f.resize(j + 1, false);
    }
    if (f[j]) {
      throw std::invalid_argument("DataSet::read_csv: line " + std::to_string(line_no) +
                                  ": duplicate sample index");
    }
    f[j] = true;
    s[j] = io::parse_double(fields[2]);
  }
  for (std::size_t a = 0; a < seen.size(); ++a) {
    if (std::find(seen[a].begin(), seen[a].end(), false) != seen[a].end()) {
      throw std::invalid_argument("DataSet::read_csv: action " + std::to_string(a) +
                                  " has gaps in its sample indices");
    }
  }
  return DataSet(std::move(supports), std::move(samples));
}

Marginal empirical_from_samples(std::span<const double> samples, const Support& support) {
  if (samples.empty()) throw std::invalid_argument("empirical_from_samples: no samples");
  std::vector<std::size_t> counts(support.size(), 0);
  for (double c : samples) {
    const std::size_t i = support.index_of(c);
    if (i == support.size()) {
      throw std::invalid_argument("empirical_from_samples: sample " + io::format_double(c) +
                                  " is not in the support");
    }
    ++counts[i];
  }
  std::vector<double> probs(support.size());
  const double total = static_cast<double>(samples.size());
  for (std::size_t i = 0; i < counts.size(); ++i) {
    probs[i] = static_cast<double>(counts[i]) / total;
  }
  return Marginal(support, std::move(probs));
}

double kl_divergence(const Marginal& p, const Marginal& q) {
  if (!(p.support() == q.support())) {
    throw std::invalid_argument("kl_divergence: marginals live on different supports");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double pi = p.prob(i);
    if (pi == 0.0) continue;
    const double qi = q.prob(i);
    if (qi == 0.0) return std::numeric_limits<double>::infinity();
    total += pi * std::log(pi / qi);
  }
  // Rounding can push an exact zero slightly negative.
  return std::max(total, 0.0);
}

double mean(const Marginal& m) {
  double total = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) total += m.support()[i] * m.prob(i);
  return total;
}

}  // namespace kldro
