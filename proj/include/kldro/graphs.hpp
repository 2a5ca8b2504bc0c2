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
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <vector>

namespace kldro {

using NodeId = std::size_t;

struct Arc {
  NodeId tail = 0;
  NodeId head = 0;
  friend bool operator==(const Arc&, const Arc&) = default;
};

// Source, h layers of w nodes, sink. Node ids: source 0, layer l (1-based)
// slot k at 1 + (l-1) w + k, sink 1 + h w. Arcs are ordered layer-major,
// then by tail, then by head, so arc indices increase along every path.
class LayeredGraph {
 public:
  LayeredGraph(std::size_t layers, std::size_t width);

  std::size_t layers() const { return layers_; }
  std::size_t width() const { return width_; }
  std::size_t node_count() const { return 2 + layers_ * width_; }
  std::size_t arc_count() const { return arcs_.size(); }
  std::span<const Arc> arcs() const { return arcs_; }
  const Arc& arc(std::size_t index) const { return arcs_[index]; }
  NodeId source() const { return 0; }
  NodeId sink() const { return 1 + layers_ * width_; }
  NodeId node(std::size_t layer, std::size_t slot) const { return 1 + (layer - 1) * width_ + slot; }

  /// Arc index of (tail, head); throws std::out_of_range if absent.
  std::size_t arc_index(NodeId tail, NodeId head) const;

  /// Number of source-sink paths, w^h (saturates at SIZE_MAX).
  std::size_t path_count() const;

  /// Debug dump: header `h w`, then one `tail head` line per arc.
  void write_edge_list(std::ostream& out) const;
  static LayeredGraph read_edge_list(std::istream& in);

  friend bool operator==(const LayeredGraph&, const LayeredGraph&) = default;

 private:
  std::size_t layers_;
  std::size_t width_;
  std::vector<Arc> arcs_;
};

/// Binary incidence vector over arcs.
class Decision {
 public:
  Decision() = default;
  explicit Decision(std::vector<std::uint8_t> incidence) : x_(std::move(incidence)) {}

  std::size_t size() const { return x_.size(); }
  bool operator[](std::size_t arc) const { return x_[arc] != 0; }
  std::span<const std::uint8_t> incidence() const { return x_; }
  std::vector<std::size_t> selected() const;
  std::size_t selected_count() const;

  /// True when the selected arcs form a single source-sink path of g.
  bool is_path(const LayeredGraph& g) const;

  friend bool operator==(const Decision&, const Decision&) = default;

 private:
  std::vector<std::uint8_t> x_;
};

/// sum_a costs[a] x_a, accumulated in arc order.
double path_cost(const Decision& x, std::span<const double> costs);

struct PathResult {
  Decision decision;
  double value = 0.0;
};

/// Exact minimum-cost path by forward dynamic programming over the layers.
/// Among equal-cost paths the one listed first by enumerate_paths wins.
PathResult shortest_path(const LayeredGraph& g, std::span<const double> costs);

class EnumerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultEnumerationCap = 100000;

/// All w^h paths; the layer-1 node varies slowest. Throws EnumerationError
/// above `cap`.
std::vector<Decision> enumerate_paths(const LayeredGraph& g,
                                      std::size_t cap = kDefaultEnumerationCap);

}  // namespace kldro
