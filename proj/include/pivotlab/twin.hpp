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

#include <optional>

#include "pivotlab/build_d.hpp"
#include "pivotlab/canonical.hpp"
#include "pivotlab/mdp.hpp"

namespace pivotlab {

/// The successor w such that v is w-oriented under `policy` — (v,x_{v,w}) and
/// (x_{v,w},y_{v,w}) active, every other x_{v,u} pointing back at v — or
/// nullopt when v is not oriented.
inline std::optional<int> oriented_towards(const Mdp& d, const GadgetMap& gadgets,
                                           const Policy& policy, int v) {
  const int x_chosen = policy.target(d, v);
  const auto base_edge = gadgets.of_x.at(x_chosen);
  const Gadget& g = gadgets.at(base_edge);
  if (policy.target(d, g.x) != g.y) return std::nullopt;
  for (const auto& [edge, gadget] : gadgets.gadgets) {
    if (edge.first != v || gadget.x == x_chosen) continue;
    if (policy.target(d, gadget.x) != v) return std::nullopt;
  }
  return base_edge.second;
}

/// Extends a base policy to the gadget-expanded process: every base vertex
/// becomes oriented toward its base choice.
inline Policy twin_policy(const Mdp& d, const GadgetMap& gadgets, const Mdp& b,
                          const Policy& base_policy) {
  Policy policy(d);
  for (int v = 0; v < gadgets.base_vertex_count; ++v) {
    if (v == b.sink()) continue;
    const int w = base_policy.target(b, v);
    const Gadget& chosen = gadgets.at({v, w});
    policy.set_target(d, v, chosen.x);
    policy.set_target(d, chosen.x, chosen.y);
    for (const Edge& e : b.out_edges(v)) {
      if (e.dst == w) continue;
      const Gadget& other = gadgets.at({v, e.dst});
      policy.set_target(d, other.x, v);
    }
  }
  return policy;
}

/// Projects a fully oriented policy back to the base process; nullopt when
/// some base vertex is not oriented.
inline std::optional<Policy> project_twin(const Mdp& d, const GadgetMap& gadgets, const Mdp& b,
                                          const Policy& policy) {
  Policy base(b);
  for (int v = 0; v < gadgets.base_vertex_count; ++v) {
    if (v == b.sink()) continue;
    auto w = oriented_towards(d, gadgets, policy, v);
    if (!w.has_value()) return std::nullopt;
    base.set_target(b, v, *w);
  }
  return base;
}

inline Policy optimal_policy_D(const Mdp& d, const GadgetMap& gadgets, const Mdp& b) {
  return twin_policy(d, gadgets, b, optimal_policy_B(b));
}

/// The edges associated with base vertex v: for each base successor w, the
/// triple (x_{v,w},y_{v,w}), (v,x_{v,w}), (x_{v,w},v).
inline bool belongs(const GadgetMap& gadgets, const Edge& edge, int v) {
  for (const auto& [base_edge, g] : gadgets.gadgets) {
    if (base_edge.first != v) continue;
    if ((edge.src == g.x && edge.dst == g.y) || (edge.src == v && edge.dst == g.x) ||
        (edge.src == g.x && edge.dst == v))
      return true;
  }
  return false;
}

/// The unique base vertex an edge belongs to, or nullopt (z-edges and the
/// sink loop belong to no vertex).
inline std::optional<int> owner_vertex(const GadgetMap& gadgets, int src, int dst) {
  if (auto it = gadgets.of_x.find(src); it != gadgets.of_x.end()) {
    const Gadget& g = gadgets.at(it->second);
    if (dst == g.y || dst == it->second.first) return it->second.first;
    return std::nullopt;
  }
  if (auto it = gadgets.of_x.find(dst); it != gadgets.of_x.end()) {
    if (src == it->second.first) return it->second.first;
  }
  return std::nullopt;
}

}  // namespace pivotlab
