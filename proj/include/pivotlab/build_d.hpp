// Copyright 2026 The pivotlab Authors
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

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pivotlab/build_b.hpp"
#include "pivotlab/errors.hpp"
#include "pivotlab/mdp.hpp"
#include "pivotlab/names.hpp"

namespace pivotlab {

/// The three vertices replacing one base edge, plus the loop-back probability
/// of the randomization vertex.
struct Gadget {
  int x = -1, y = -1, z = -1;
  Rational p;
};

enum class DEdgeType { VToX, XToV, XToY, ZToW, SinkLoop };

struct DEdgeInfo {
  DEdgeType type;
  std::pair<int, int> base_edge;  // (-1,-1) for the sink loop
};

/// Gadget bookkeeping for a gadget-expanded process: which triple replaced
/// which base edge, and classification of agent edges.
struct GadgetMap {
  int base_vertex_count = 0;
  std::map<std::pair<int, int>, Gadget> gadgets;       // keyed by base edge
  std::unordered_map<int, std::pair<int, int>> of_x;   // x vertex id -> base edge
  std::unordered_map<int, std::pair<int, int>> of_z;

  bool is_base_vertex(int v) const { return v < base_vertex_count; }

  const Gadget& at(std::pair<int, int> base_edge) const { return gadgets.at(base_edge); }

  DEdgeInfo classify(int src, int dst) const {
    if (auto it = of_x.find(src); it != of_x.end()) {
      const Gadget& g = gadgets.at(it->second);
      if (dst == g.y) return {DEdgeType::XToY, it->second};
      if (dst == it->second.first) return {DEdgeType::XToV, it->second};
    }
    if (auto it = of_x.find(dst); it != of_x.end()) {
      if (src == it->second.first) return {DEdgeType::VToX, it->second};
    }
    if (auto it = of_z.find(src); it != of_z.end()) return {DEdgeType::ZToW, it->second};
    if (src == dst) return {DEdgeType::SinkLoop, {-1, -1}};
    throw std::invalid_argument("edge does not fit the gadget structure");
  }
};

/// Internal order of the block of (x_{u,.},u) edges placed at the front of
/// the edge numbering; the construction leaves it free, so it is a build
/// option. ByVertexNumber is ascending vertex number of u with ties broken by
/// the replaced base edge's number; ByBaseNumber orders the block purely by
/// the replaced base edge's number.
enum class PrependOrder { ByVertexNumber, ByBaseNumber };

struct BuildDOptions {
  /// Loop-back probability overrides keyed by base vertex short name
  /// ("t", "a1", "b1", ..., "d"). Defaults to p_v = 2^{-N_V(v)(n+5)}.
  std::map<std::string, Rational> probability_overrides;
  PrependOrder prepend_order = PrependOrder::ByVertexNumber;
};

/// Replaces every base edge except the sink loop by the four-vertex gadget:
/// agent edges (v,x), (x,v), (x,y) with reward 0 and (z,w) carrying the base
/// reward; randomization vertex y returns to v with probability 1 - p_v and
/// advances to z with probability p_v. Edge numbers: all (x_{u,.},u) edges
/// first, then per base edge (in base-number order) the pair (x,y), (v,x);
/// edges that are their vertex's only exit get numbers at the end.
inline std::pair<Mdp, GadgetMap> build_D(int n, const BuildDOptions& options = {}) {
  if (n < 1) throw DomainError("build_D requires n >= 1");
  const Mdp base = build_B(n);
  const int base_count = base.vertex_count();

  // Resolve per-vertex probabilities.
  std::vector<Rational> p(static_cast<size_t>(base_count));
  std::map<std::string, Rational> overrides = options.probability_overrides;
  for (int v = 0; v < base_count; ++v) {
    if (v == base.sink()) continue;
    const std::string name = vertex_name(base, v);
    if (auto it = overrides.find(name); it != overrides.end()) {
      p[static_cast<size_t>(v)] = it->second;
      overrides.erase(it);
    } else {
      p[static_cast<size_t>(v)] = pow2(-static_cast<long>(vertex_number(v)) * (n + 5));
    }
    if (p[static_cast<size_t>(v)] <= 0 || p[static_cast<size_t>(v)] > 1)
      throw BadProbabilityError("p(" + name + ") outside (0,1]");
  }
  if (!overrides.empty())
    throw BadProbabilityError("probability override for unknown vertex '" +
                              overrides.begin()->first + "'");

  MdpBuilder builder;
  for (int v = 0; v < base_count; ++v)
    builder.add_vertex(VertexKind::Agent, base.vertex(v).label);

  // Base edges except the sink loop, in base-number order.
  std::vector<const Edge*> replaced;
  for (const Edge* e : base.agent_edges())
    if (!(e->src == base.sink() && e->dst == base.sink())) replaced.push_back(e);
  std::sort(replaced.begin(), replaced.end(),
            [](const Edge* a, const Edge* b) { return *a->bland < *b->bland; });

  GadgetMap map;
  map.base_vertex_count = base_count;
  for (const Edge* e : replaced) {
    Gadget g;
    g.x = builder.add_vertex(VertexKind::Agent, {VertexRole::GadgetX, 0, e->src, e->dst});
    g.y = builder.add_vertex(VertexKind::Randomization, {VertexRole::GadgetY, 0, e->src, e->dst});
    g.z = builder.add_vertex(VertexKind::Agent, {VertexRole::GadgetZ, 0, e->src, e->dst});
    g.p = p[static_cast<size_t>(e->src)];
    map.gadgets.emplace(std::pair(e->src, e->dst), g);
    map.of_x.emplace(g.x, std::pair(e->src, e->dst));
    map.of_z.emplace(g.z, std::pair(e->src, e->dst));
  }

  // Numbering. Block 1: (x,v) edges; block 2: (x,y) and, where v has more
  // than one exit, (v,x), following the base order; block 3: forced edges.
  int next_number = 1;
  std::map<std::pair<int, int>, int> numbers;
  std::vector<const Edge*> prepended = replaced;
  if (options.prepend_order == PrependOrder::ByVertexNumber) {
    std::stable_sort(prepended.begin(), prepended.end(), [](const Edge* a, const Edge* b) {
      return std::pair(vertex_number(a->src), *a->bland) <
             std::pair(vertex_number(b->src), *b->bland);
    });
  }
  for (const Edge* e : prepended) {
    const Gadget& g = map.at({e->src, e->dst});
    numbers[{g.x, e->src}] = next_number++;
  }
  const int dummy = BTopology::from(base).d;
  for (const Edge* e : replaced) {
    const Gadget& g = map.at({e->src, e->dst});
    numbers[{g.x, g.y}] = next_number++;
    if (e->src != dummy) numbers[{e->src, g.x}] = next_number++;
  }
  // Forced edges need no number; they get the tail of the range so the
  // numbering is total: (d, x_{d,s}), the sink loop, and every (z, w).
  std::vector<std::pair<int, int>> forced;
  for (const Edge* e : replaced) {
    const Gadget& g = map.at({e->src, e->dst});
    forced.push_back({g.z, e->dst});
    if (e->src == dummy) forced.push_back({e->src, g.x});
  }
  forced.push_back({base.sink(), base.sink()});
  std::sort(forced.begin(), forced.end());
  for (const auto& key : forced) numbers[key] = next_number++;

  auto number_of = [&numbers](int src, int dst) -> std::optional<int> {
    auto it = numbers.find({src, dst});
    return it == numbers.end() ? std::nullopt : std::optional<int>(it->second);
  };

  // Agent edges of base vertices: one (v, x_{v,w}) per base successor, in
  // base adjacency order.
  for (int v = 0; v < base_count; ++v) {
    if (v == base.sink()) continue;
    for (const Edge& e : base.out_edges(v)) {
      const Gadget& g = map.at({e.src, e.dst});
      builder.add_edge(v, g.x, Rational(0), number_of(v, g.x));
    }
  }
  for (const Edge* e : replaced) {
    const Gadget& g = map.at({e->src, e->dst});
    builder.add_edge(g.x, e->src, Rational(0), number_of(g.x, e->src));
    builder.add_edge(g.x, g.y, Rational(0), number_of(g.x, g.y));
    if (g.p < 1) builder.add_edge(g.y, e->src, Rational(1) - g.p);
    builder.add_edge(g.y, g.z, g.p);
    builder.add_edge(g.z, e->dst, e->payload, number_of(g.z, e->dst));
  }
  builder.add_edge(base.sink(), base.sink(), Rational(0), number_of(base.sink(), base.sink()));
  builder.set_sink(base.sink());
  return {std::move(builder).build(), std::move(map)};
}

}  // namespace pivotlab
