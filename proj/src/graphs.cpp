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

#include "kldro/graphs.hpp"

#include <algorithm>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <string>

namespace kldro {

LayeredGraph::LayeredGraph(std::size_t layers, std::size_t width)
    : layers_(layers), width_(width) {
  if (layers == 0 || width == 0) {
    throw std::invalid_argument("LayeredGraph: need h >= 1 and w >= 1");
  }
  arcs_.reserve(2 * width + width * width * (layers - 1));
  for (std::size_t k = 0; k < width; ++k) arcs_.push_back({source(), node(1, k)});
  for (std::size_t l = 1; l < layers; ++l) {
    for (std::size_t t = 0; t < width; ++t) {
      for (std::size_t k = 0; k < width; ++k) arcs_.push_back({node(l, t), node(l + 1, k)});
    }
  }
  for (std::size_t t = 0; t < width; ++t) arcs_.push_back({node(layers, t), sink()});
}

std::size_t LayeredGraph::arc_index(NodeId tail, NodeId head) const {
  const auto layer_of = [&](NodeId v) { return v == source() ? 0 : (v - 1) / width_ + 1; };
  const auto slot_of = [&](NodeId v) { return (v - 1) % width_; };
  if (tail >= sink() || head == source() || head > sink()) throw std::out_of_range("arc_index");
  if (tail == source()) {
    if (layer_of(head) != 1 || head == sink()) throw std::out_of_range("arc_index");
    return slot_of(head);
  }
  const std::size_t lt = layer_of(tail);
  if (head == sink()) {
    if (lt != layers_) throw std::out_of_range("arc_index");
    return width_ + width_ * width_ * (layers_ - 1) + slot_of(tail);
  }
  if (layer_of(head) != lt + 1) throw std::out_of_range("arc_index");
  return width_ + width_ * width_ * (lt - 1) + width_ * slot_of(tail) + slot_of(head);
}

std::size_t LayeredGraph::path_count() const {
  std::size_t count = 1;
  for (std::size_t l = 0; l < layers_; ++l) {
    if (count > std::numeric_limits<std::size_t>::max() / width_) {
      return std::numeric_limits<std::size_t>::max();
    }
    count *= width_;
  }
  return count;
}

void LayeredGraph::write_edge_list(std::ostream& out) const {
  out << layers_ << ' ' << width_ << '\n';
  for (const Arc& a : arcs_) out << a.tail << ' ' << a.head << '\n';
}

LayeredGraph LayeredGraph::read_edge_list(std::istream& in) {
  std::size_t h = 0;
  std::size_t w = 0;
  if (!(in >> h >> w)) throw std::invalid_argument("read_edge_list: missing `h w` header");
  LayeredGraph g(h, w);
  for (std::size_t i = 0; i < g.arc_count(); ++i) {
    Arc a;
    if (!(in >> a.tail >> a.head)) {
      throw std::invalid_argument("read_edge_list: expected " + std::to_string(g.arc_count()) +
                                  " arcs, got " + std::to_string(i));
    }
    if (!(a == g.arc(i))) {
      throw std::invalid_argument("read_edge_list: arc " + std::to_string(i) +
                                  " does not match the layered layout");
    }
  }
  std::string rest;
  if (in >> rest) throw std::invalid_argument("read_edge_list: trailing content");
  return g;
}

std::vector<std::size_t> Decision::selected() const {
  std::vector<std::size_t> out;
  for (std::size_t a = 0; a < x_.size(); ++a) {
    if (x_[a]) out.push_back(a);
  }
  return out;
}

std::size_t Decision::selected_count() const {
  return static_cast<std::size_t>(std::count_if(x_.begin(), x_.end(), [](auto v) { return v != 0; }));
}

bool Decision::is_path(const LayeredGraph& g) const {
  if (x_.size() != g.arc_count()) return false;
  std::vector<int> out_deg(g.node_count(), 0);
  std::vector<int> in_deg(g.node_count(), 0);
  std::size_t used = 0;
  for (std::size_t a = 0; a < x_.size(); ++a) {
    if (x_[a] > 1) return false;
    if (!x_[a]) continue;
    ++out_deg[g.arc(a).tail];
    ++in_deg[g.arc(a).head];
    ++used;
  }
  if (used != g.layers() + 1) return false;
  if (out_deg[g.source()] != 1 || in_deg[g.source()] != 0) return false;
  if (in_deg[g.sink()] != 1 || out_deg[g.sink()] != 0) return false;
  for (NodeId v = 1; v < g.sink(); ++v) {
    if (in_deg[v] != out_deg[v] || in_deg[v] > 1) return false;
  }
  // On a layered DAG, h+1 arcs with matched degrees form one path.
  return true;
}

double path_cost(const Decision& x, std::span<const double> costs) {
  if (x.size() != costs.size()) throw std::invalid_argument("path_cost: size mismatch");
  double total = 0.0;
  for (std::size_t a = 0; a < costs.size(); ++a) {
    if (x[a]) total += costs[a];
  }
  return total;
}

PathResult shortest_path(const LayeredGraph& g, std::span<const double> costs) {
  if (costs.size() != g.arc_count()) {
    throw std::invalid_argument("shortest_path: expected " + std::to_string(g.arc_count()) +
                                " arc costs, got " + std::to_string(costs.size()));
  }
  const std::size_t w = g.width();
  const std::size_t h = g.layers();

  // dist/pred per layer slot; rank orders the current layer's best prefixes
  // lexicographically so ties resolve toward the first enumerated path.
  std::vector<double> dist(w);
  std::vector<std::vector<std::size_t>> pred(h + 1, std::vector<std::size_t>(w, 0));
  std::vector<std::size_t> rank(w);
  for (std::size_t k = 0; k < w; ++k) {
    dist[k] = 0.0 + costs[k];
    rank[k] = k;
  }
  std::vector<double> next(w);
  std::vector<std::size_t> order(w);
  for (std::size_t l = 1; l < h; ++l) {
    for (std::size_t k = 0; k < w; ++k) {
      std::size_t best = 0;
      double best_dist = dist[0] + costs[g.arc_index(g.node(l, 0), g.node(l + 1, k))];
      for (std::size_t t = 1; t < w; ++t) {
        const double cand = dist[t] + costs[g.arc_index(g.node(l, t), g.node(l + 1, k))];
        if (cand < best_dist || (cand == best_dist && rank[t] < rank[best])) {
          best = t;
          best_dist = cand;
        }
      }
      next[k] = best_dist;
      pred[l + 1][k] = best;
    }
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      const auto ra = rank[pred[l + 1][a]];
      const auto rb = rank[pred[l + 1][b]];
      return ra != rb ? ra < rb : a < b;
    });
    std::vector<std::size_t> new_rank(w);
    for (std::size_t pos = 0; pos < w; ++pos) new_rank[order[pos]] = pos;
    rank = std::move(new_rank);
    dist.swap(next);
  }

  std::size_t best = 0;
  double best_dist = dist[0] + costs[g.arc_index(g.node(h, 0), g.sink())];
  for (std::size_t t = 1; t < w; ++t) {
    const double cand = dist[t] + costs[g.arc_index(g.node(h, t), g.sink())];
    if (cand < best_dist || (cand == best_dist && rank[t] < rank[best])) {
      best = t;
      best_dist = cand;
    }
  }

  std::vector<std::uint8_t> x(g.arc_count(), 0);
  std::size_t slot = best;
  x[g.arc_index(g.node(h, slot), g.sink())] = 1;
  for (std::size_t l = h; l > 1; --l) {
    const std::size_t prev = pred[l][slot];
    x[g.arc_index(g.node(l - 1, prev), g.node(l, slot))] = 1;
    slot = prev;
  }
  x[g.arc_index(g.source(), g.node(1, slot))] = 1;
  return {Decision(std::move(x)), best_dist};
}

std::vector<Decision> enumerate_paths(const LayeredGraph& g, std::size_t cap) {
  const std::size_t count = g.path_count();
  if (count > cap) {
    throw EnumerationError("enumerate_paths: " + std::to_string(g.width()) + "^" +
                           std::to_string(g.layers()) + " paths exceed the cap of " +
                           std::to_string(cap) + "; use a smaller instance");
  }
  const std::size_t h = g.layers();
  std::vector<Decision> paths;
  paths.reserve(count);
  std::vector<std::size_t> slots(h, 0);
  while (true) {
    std::vector<std::uint8_t> x(g.arc_count(), 0);
    x[g.arc_index(g.source(), g.node(1, slots[0]))] = 1;
    for (std::size_t l = 1; l < h; ++l) x[g.arc_index(g.node(l, slots[l - 1]), g.node(l + 1, slots[l]))] = 1;
    x[g.arc_index(g.node(h, slots[h - 1]), g.sink())] = 1;
    paths.emplace_back(std::move(x));
    // Odometer with the last layer varying fastest.
    std::size_t l = h;
    while (l > 0 && slots[l - 1] + 1 == g.width()) slots[--l] = 0;
    if (l == 0) break;
    ++slots[l - 1];
  }
  return paths;
}

}  // namespace kldro
