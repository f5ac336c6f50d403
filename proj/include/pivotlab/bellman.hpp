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
#include <utility>
#include <vector>

#include "pivotlab/errors.hpp"
#include "pivotlab/linalg.hpp"
#include "pivotlab/mdp.hpp"

namespace pivotlab {

/// Exact vertex values of a policy, indexed by vertex id. Satisfies the
/// Bellman equations with zero residual and value 0 at the sink.
struct ValueVector {
  std::vector<Rational> values;

  const Rational& at(int v) const { return values[static_cast<size_t>(v)]; }
};

namespace detail {

// Successors of a vertex in the policy-induced chain, with edge weights
// (probability 1 for the chosen agent edge).
struct InducedSuccessor {
  int target;
  Rational weight;
};

inline std::vector<std::vector<InducedSuccessor>> induced_graph(const Mdp& mdp,
                                                                const Policy& policy) {
  std::vector<std::vector<InducedSuccessor>> succ(static_cast<size_t>(mdp.vertex_count()));
  for (int v = 0; v < mdp.vertex_count(); ++v) {
    if (mdp.is_agent(v)) {
      succ[static_cast<size_t>(v)].push_back({policy.target(mdp, v), Rational(1)});
    } else {
      for (const Edge& e : mdp.out_edges(v))
        succ[static_cast<size_t>(v)].push_back({e.dst, e.payload});
    }
  }
  return succ;
}

// Iterative Tarjan. Emits components with all successors already emitted.
inline std::vector<std::vector<int>> strongly_connected_components(
    const std::vector<std::vector<InducedSuccessor>>& succ) {
  const int n = static_cast<int>(succ.size());
  std::vector<int> index(static_cast<size_t>(n), -1), low(static_cast<size_t>(n), 0);
  std::vector<char> on_stack(static_cast<size_t>(n), 0);
  std::vector<int> stack;
  std::vector<std::vector<int>> components;
  int next_index = 0;

  struct Frame {
    int v;
    size_t child;
  };
  for (int root = 0; root < n; ++root) {
    if (index[static_cast<size_t>(root)] != -1) continue;
    std::vector<Frame> frames{{root, 0}};
    index[static_cast<size_t>(root)] = low[static_cast<size_t>(root)] = next_index++;
    stack.push_back(root);
    on_stack[static_cast<size_t>(root)] = 1;
    while (!frames.empty()) {
      Frame& f = frames.back();
      const auto& edges = succ[static_cast<size_t>(f.v)];
      if (f.child < edges.size()) {
        int w = edges[f.child++].target;
        if (index[static_cast<size_t>(w)] == -1) {
          index[static_cast<size_t>(w)] = low[static_cast<size_t>(w)] = next_index++;
          stack.push_back(w);
          on_stack[static_cast<size_t>(w)] = 1;
          frames.push_back({w, 0});
        } else if (on_stack[static_cast<size_t>(w)]) {
          low[static_cast<size_t>(f.v)] =
              std::min(low[static_cast<size_t>(f.v)], index[static_cast<size_t>(w)]);
        }
      } else {
        int v = f.v;
        frames.pop_back();
        if (!frames.empty())
          low[static_cast<size_t>(frames.back().v)] =
              std::min(low[static_cast<size_t>(frames.back().v)], low[static_cast<size_t>(v)]);
        if (low[static_cast<size_t>(v)] == index[static_cast<size_t>(v)]) {
          std::vector<int> component;
          int w;
          do {
            w = stack.back();
            stack.pop_back();
            on_stack[static_cast<size_t>(w)] = 0;
            component.push_back(w);
          } while (w != v);
          components.push_back(std::move(component));
        }
      }
    }
  }
  return components;
}

}  // namespace detail

/// True iff every vertex reaches the sink in the policy-induced graph (chosen
/// agent edges plus all positive-probability randomization edges). Since the
/// sink is the only absorbing state of that graph, this is equivalent to
/// probability-one absorption.
inline bool is_weak_unichain(const Mdp& mdp, const Policy& policy) {
  const int n = mdp.vertex_count();
  std::vector<std::vector<int>> rev(static_cast<size_t>(n));
  for (int v = 0; v < n; ++v) {
    if (mdp.is_agent(v)) {
      rev[static_cast<size_t>(policy.target(mdp, v))].push_back(v);
    } else {
      for (const Edge& e : mdp.out_edges(v)) rev[static_cast<size_t>(e.dst)].push_back(v);
    }
  }
  std::vector<char> reached(static_cast<size_t>(n), 0);
  std::vector<int> queue{mdp.sink()};
  reached[static_cast<size_t>(mdp.sink())] = 1;
  while (!queue.empty()) {
    int u = queue.back();
    queue.pop_back();
    for (int w : rev[static_cast<size_t>(u)])
      if (!reached[static_cast<size_t>(w)]) {
        reached[static_cast<size_t>(w)] = 1;
        queue.push_back(w);
      }
  }
  return std::all_of(reached.begin(), reached.end(), [](char c) { return c != 0; });
}

/// Solves the Bellman system of the policy exactly, pinned to 0 at the sink.
/// Eliminates strongly connected components of the induced chain in reverse
/// topological order; each component is a small dense rational system, which
/// handles gadget cycles generically. Throws NotWeakUnichainError when some
/// vertex cannot reach the sink.
inline ValueVector solve_values(const Mdp& mdp, const Policy& policy) {
  if (!is_weak_unichain(mdp, policy))
    throw NotWeakUnichainError("policy does not reach the sink from every vertex");

  const auto succ = detail::induced_graph(mdp, policy);
  const auto components = detail::strongly_connected_components(succ);

  ValueVector out;
  out.values.assign(static_cast<size_t>(mdp.vertex_count()), Rational(0));
  std::vector<char> solved(static_cast<size_t>(mdp.vertex_count()), 0);

  for (const auto& component : components) {
    if (component.size() == 1 && component[0] == mdp.sink()) {
      out.values[static_cast<size_t>(mdp.sink())] = 0;
      solved[static_cast<size_t>(mdp.sink())] = 1;
      continue;
    }
    const size_t k = component.size();
    std::vector<int> pos(static_cast<size_t>(mdp.vertex_count()), -1);
    for (size_t i = 0; i < k; ++i) pos[static_cast<size_t>(component[i])] = static_cast<int>(i);

    RatMatrix a(k, RatVector(k, Rational(0)));
    RatVector b(k, Rational(0));
    for (size_t i = 0; i < k; ++i) {
      const int u = component[i];
      a[i][i] = 1;
      if (mdp.is_agent(u)) b[i] += policy.chosen_edge(mdp, u).payload;
      for (const auto& s : succ[static_cast<size_t>(u)]) {
        if (pos[static_cast<size_t>(s.target)] >= 0) {
          a[i][static_cast<size_t>(pos[static_cast<size_t>(s.target)])] -= s.weight;
        } else {
          if (!solved[static_cast<size_t>(s.target)])
            throw InvariantViolationError("component order violated in value solve");
          b[i] += s.weight * out.values[static_cast<size_t>(s.target)];
        }
      }
    }
    RatVector x;
    if (!gaussian_solve(std::move(a), std::move(b), x))
      throw InvariantViolationError("singular Bellman block for a weak unichain policy");
    for (size_t i = 0; i < k; ++i) {
      out.values[static_cast<size_t>(component[i])] = x[i];
      solved[static_cast<size_t>(component[i])] = 1;
    }
  }

  // Every equation must hold with exact zero residual.
  for (int v = 0; v < mdp.vertex_count(); ++v) {
    Rational expected;
    if (v == mdp.sink()) {
      expected = 0;
    } else if (mdp.is_agent(v)) {
      const Edge& e = policy.chosen_edge(mdp, v);
      expected = e.payload + out.values[static_cast<size_t>(e.dst)];
    } else {
      expected = 0;
      for (const Edge& e : mdp.out_edges(v))
        expected += e.payload * out.values[static_cast<size_t>(e.dst)];
    }
    if (out.values[static_cast<size_t>(v)] != expected)
      throw InvariantViolationError("nonzero Bellman residual at vertex " + std::to_string(v));
  }
  return out;
}

/// Reduced costs z(u,v) = r(u,v) + Val(v) - Val(u) of an agent edge.
inline Rational reduced_cost(const Mdp& mdp, const Policy& /*policy*/, const ValueVector& values,
                             const Edge& edge) {
  if (!mdp.is_agent(edge.src))
    throw NotAgentEdgeError("reduced costs are defined for agent edges only");
  return edge.payload + values.at(edge.dst) - values.at(edge.src);
}

struct ImprovingSwitch {
  Edge edge;
  Rational z;
};

/// Exactly the agent edges with strictly positive reduced cost, in
/// (source, target) order.
inline std::vector<ImprovingSwitch> improving_switches(const Mdp& mdp, const Policy& policy,
                                                       const ValueVector& values) {
  std::vector<ImprovingSwitch> result;
  for (int v = 0; v < mdp.vertex_count(); ++v) {
    if (!mdp.is_agent(v)) continue;
    for (const Edge& e : mdp.out_edges(v)) {
      Rational z = reduced_cost(mdp, policy, values, e);
      if (z > 0) result.push_back({e, std::move(z)});
    }
  }
  std::sort(result.begin(), result.end(), [](const ImprovingSwitch& a, const ImprovingSwitch& b) {
    return std::pair(a.edge.src, a.edge.dst) < std::pair(b.edge.src, b.edge.dst);
  });
  return result;
}

/// New policy that differs from `policy` only at edge.src.
inline Policy apply_switch(const Mdp& mdp, const Policy& policy, const Edge& edge) {
  if (mdp.out_degree(edge.src) < 2)
    throw NotSwitchableError("vertex " + std::to_string(edge.src) + " has a single outgoing edge");
  Policy next = policy;
  next.set_target(mdp, edge.src, edge.dst);
  return next;
}

/// Exact sum of values over all agent vertices.
inline Rational value_sum(const Mdp& mdp, const ValueVector& values) {
  Rational sum = 0;
  for (int v = 0; v < mdp.vertex_count(); ++v)
    if (mdp.is_agent(v)) sum += values.at(v);
  return sum;
}

}  // namespace pivotlab
