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

#include <stdexcept>
#include <vector>

#include "pivotlab/bellman.hpp"
#include "pivotlab/mdp.hpp"
#include "pivotlab/names.hpp"

namespace pivotlab::test_support {

// Independent value oracle: assembles the full |V| x |V| Bellman system in
// one dense matrix and runs its own Gauss-Jordan elimination. Shares no code
// with the production solve path (which eliminates component blocks in
// reverse topological order).
inline std::vector<Rational> oracle_values(const Mdp& mdp, const Policy& policy) {
  const int n = mdp.vertex_count();
  std::vector<std::vector<Rational>> aug(static_cast<size_t>(n),
                                         std::vector<Rational>(static_cast<size_t>(n) + 1));
  for (int v = 0; v < n; ++v) {
    auto& row = aug[static_cast<size_t>(v)];
    if (v == mdp.sink()) {
      row[static_cast<size_t>(v)] = 1;  // Val(sink) = 0
      continue;
    }
    row[static_cast<size_t>(v)] += 1;
    if (mdp.is_agent(v)) {
      const Edge& e = policy.chosen_edge(mdp, v);
      row[static_cast<size_t>(e.dst)] -= 1;
      row[static_cast<size_t>(n)] = e.payload;
    } else {
      for (const Edge& e : mdp.out_edges(v)) row[static_cast<size_t>(e.dst)] -= e.payload;
    }
  }
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r)
      if (aug[static_cast<size_t>(r)][static_cast<size_t>(col)] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) throw std::runtime_error("oracle: singular Bellman system");
    std::swap(aug[static_cast<size_t>(col)], aug[static_cast<size_t>(pivot)]);
    const Rational lead = aug[static_cast<size_t>(col)][static_cast<size_t>(col)];
    for (int j = 0; j <= n; ++j) aug[static_cast<size_t>(col)][static_cast<size_t>(j)] /= lead;
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const Rational factor = aug[static_cast<size_t>(r)][static_cast<size_t>(col)];
      if (factor == 0) continue;
      for (int j = 0; j <= n; ++j)
        aug[static_cast<size_t>(r)][static_cast<size_t>(j)] -=
            factor * aug[static_cast<size_t>(col)][static_cast<size_t>(j)];
    }
  }
  std::vector<Rational> values(static_cast<size_t>(n));
  for (int v = 0; v < n; ++v) values[static_cast<size_t>(v)] = aug[static_cast<size_t>(v)][static_cast<size_t>(n)];
  return values;
}

inline const Edge& edge_by_name(const Mdp& b, const BTopology& topo, const EdgeName& name) {
  auto [src, dst] = topo.edge_of(name);
  return b.edge_at(src, dst);
}

inline Policy policy_from_names(const Mdp& b, const BTopology& topo,
                                const std::vector<EdgeName>& active) {
  Policy policy(b);
  for (const EdgeName& name : active) {
    auto [src, dst] = topo.edge_of(name);
    policy.set_target(b, src, dst);
  }
  return policy;
}

}  // namespace pivotlab::test_support
