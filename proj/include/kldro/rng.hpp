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

// Counter-based SplitMix64 stream.
//
// Draw n of a stream keyed by k is mix64(mix64(k) + (n + 1) * 0x9E3779B97F4A7C15),
// where mix64 is the SplitMix64 finalizer (Steele, Lea and Flood 2014). The
// output depends only on (key, counter), so a stream can be replayed or
// split without shared state. All variate generation below is done here
// rather than through <random> distributions, whose algorithms differ
// between standard libraries; results are bit-identical on every platform.

#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>

namespace kldro {

constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t key) : base_(mix64(key)) {}

  /// Stream for replicate `index` of a run seeded with `seed`.
  static CounterRng substream(std::uint64_t seed, std::uint64_t index) {
    return CounterRng(seed ^ index);
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    ++counter_;
    return mix64(base_ + counter_ * 0x9E3779B97F4A7C15ULL);
  }

  std::uint64_t counter() const { return counter_; }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [lo, hi] by rejection (no modulo bias).
  std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi);

  bool bernoulli(double p) { return uniform() < p; }

  /// Sum of n Bernoulli(p) trials; adequate for the small n used here.
  std::uint64_t binomial(std::uint64_t n, double p);

  /// Index drawn from a pmf by inversion; rounding slack goes to the last
  /// index with positive mass.
  std::size_t categorical(std::span<const double> probs);

 private:
  std::uint64_t base_;
  std::uint64_t counter_ = 0;
};

}  // namespace kldro
