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
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pivotlab/errors.hpp"
#include "pivotlab/rational.hpp"

namespace pivotlab {

enum class VertexKind { Agent, Randomization };

/// Structural role of a vertex. Transport/LevelA/LevelB/Dummy/Sink are the
/// base roles; GadgetX/GadgetY/GadgetZ mark the three vertices that replace a
/// base edge in the randomized family.
enum class VertexRole { Transport, LevelA, LevelB, Dummy, Sink, GadgetX, GadgetY, GadgetZ };

struct VertexLabel {
  VertexRole role = VertexRole::Transport;
  int level = 0;       // for LevelA/LevelB
  int base_src = -1;   // for gadget vertices: endpoints of the replaced edge
  int base_dst = -1;

  friend bool operator==(const VertexLabel&, const VertexLabel&) = default;
};

struct Vertex {
  VertexKind kind = VertexKind::Agent;
  VertexLabel label;
};

/// A directed edge. payload is a reward when the source is an agent vertex
/// and a transition probability when the source is a randomization vertex.
struct Edge {
  int src = -1;
  int dst = -1;
  Rational payload;
  std::optional<int> bland;

  friend bool operator==(const Edge& a, const Edge& b) {
    return a.src == b.src && a.dst == b.dst;
  }
};

class MdpBuilder;

/// A finite Markov decision process. Immutable after construction; safe to
/// share across concurrent runs.
class Mdp {
 public:
  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  const Vertex& vertex(int v) const { return vertices_[static_cast<size_t>(v)]; }
  VertexKind kind(int v) const { return vertex(v).kind; }
  bool is_agent(int v) const { return kind(v) == VertexKind::Agent; }
  int sink() const { return sink_; }

  std::span<const Edge> out_edges(int v) const { return out_[static_cast<size_t>(v)]; }
  int out_degree(int v) const { return static_cast<int>(out_[static_cast<size_t>(v)].size()); }

  /// nullptr when no such edge exists. Edges are identified by (src, dst);
  /// parallel edges are rejected at construction.
  const Edge* find_edge(int src, int dst) const {
    for (const Edge& e : out_edges(src))
      if (e.dst == dst) return &e;
    return nullptr;
  }

  const Edge& edge_at(int src, int dst) const {
    const Edge* e = find_edge(src, dst);
    if (e == nullptr)
      throw std::invalid_argument("no edge " + std::to_string(src) + "->" + std::to_string(dst));
    return *e;
  }

  /// All edges leaving agent vertices, in (src, dst) order.
  std::vector<const Edge*> agent_edges() const {
    std::vector<const Edge*> result;
    for (int v = 0; v < vertex_count(); ++v) {
      if (!is_agent(v)) continue;
      for (const Edge& e : out_edges(v)) result.push_back(&e);
    }
    return result;
  }

  int agent_vertex_count() const {
    int k = 0;
    for (const Vertex& v : vertices_) k += v.kind == VertexKind::Agent ? 1 : 0;
    return k;
  }

 private:
  friend class MdpBuilder;
  std::vector<Vertex> vertices_;
  std::vector<std::vector<Edge>> out_;
  int sink_ = -1;
};

/// Validating builder. Checks the structural invariants: dense vertex ids,
/// no parallel edges, at least one outgoing edge per vertex, probabilities in
/// (0,1] summing to exactly 1, a unique agent sink with a zero-reward
/// self-loop, sink reachability, and unique Bland numbers.
class MdpBuilder {
 public:
  int add_vertex(VertexKind kind, VertexLabel label) {
    vertices_.push_back(Vertex{kind, label});
    out_.emplace_back();
    return static_cast<int>(vertices_.size()) - 1;
  }

  void add_edge(int src, int dst, Rational payload, std::optional<int> bland = std::nullopt) {
    check_vertex(src);
    check_vertex(dst);
    for (const Edge& e : out_[static_cast<size_t>(src)])
      if (e.dst == dst)
        throw std::invalid_argument("parallel edge " + std::to_string(src) + "->" + std::to_string(dst));
    out_[static_cast<size_t>(src)].push_back(Edge{src, dst, std::move(payload), bland});
  }

  void set_sink(int v) {
    check_vertex(v);
    sink_ = v;
  }

  Mdp build() && {
    if (sink_ < 0) throw std::invalid_argument("no sink designated");
    validate();
    Mdp mdp;
    mdp.vertices_ = std::move(vertices_);
    mdp.out_ = std::move(out_);
    mdp.sink_ = sink_;
    return mdp;
  }

 private:
  void check_vertex(int v) const {
    if (v < 0 || v >= static_cast<int>(vertices_.size()))
      throw std::invalid_argument("unknown vertex id " + std::to_string(v));
  }

  void validate() const {
    const size_t n = vertices_.size();
    std::vector<int> seen_bland;
    for (size_t v = 0; v < n; ++v) {
      if (out_[v].empty())
        throw std::invalid_argument("vertex " + std::to_string(v) + " has no outgoing edge");
      if (vertices_[v].kind == VertexKind::Randomization) {
        Rational sum = 0;
        for (const Edge& e : out_[v]) {
          if (e.payload <= 0 || e.payload > 1)
            throw std::invalid_argument("transition probability outside (0,1]");
          sum += e.payload;
        }
        if (sum != 1) throw std::invalid_argument("transition probabilities do not sum to 1");
      }
      for (const Edge& e : out_[v])
        if (e.bland.has_value()) seen_bland.push_back(*e.bland);
    }
    std::sort(seen_bland.begin(), seen_bland.end());
    for (size_t i = 0; i + 1 < seen_bland.size(); ++i)
      if (seen_bland[i] == seen_bland[i + 1])
        throw std::invalid_argument("duplicate Bland number " + std::to_string(seen_bland[i]));
    if (seen_bland.size() > 0 && seen_bland.front() <= 0)
      throw std::invalid_argument("Bland numbers must be positive");

    const auto& sink_out = out_[static_cast<size_t>(sink_)];
    if (vertices_[static_cast<size_t>(sink_)].kind != VertexKind::Agent ||
        sink_out.size() != 1 || sink_out[0].dst != sink_ || sink_out[0].payload != 0)
      throw std::invalid_argument("sink must be an agent vertex whose only edge is a zero-reward self-loop");

    // Sink reachability over the underlying graph.
    std::vector<std::vector<int>> rev(n);
    for (size_t v = 0; v < n; ++v)
      for (const Edge& e : out_[v]) rev[static_cast<size_t>(e.dst)].push_back(static_cast<int>(v));
    std::vector<char> reached(n, 0);
    std::vector<int> queue{sink_};
    reached[static_cast<size_t>(sink_)] = 1;
    while (!queue.empty()) {
      int u = queue.back();
      queue.pop_back();
      for (int w : rev[static_cast<size_t>(u)])
        if (!reached[static_cast<size_t>(w)]) {
          reached[static_cast<size_t>(w)] = 1;
          queue.push_back(w);
        }
    }
    for (size_t v = 0; v < n; ++v)
      if (!reached[v])
        throw std::invalid_argument("sink not reachable from vertex " + std::to_string(v));
  }

  std::vector<Vertex> vertices_;
  std::vector<std::vector<Edge>> out_;
  int sink_ = -1;
};

/// One outgoing edge chosen at every agent vertex; vertices with a single
/// outgoing edge are implicitly fixed. Value type owned by one run at a time.
class Policy {
 public:
  Policy() = default;

  /// Starts with every agent vertex on its first outgoing edge.
  explicit Policy(const Mdp& mdp) : choice_(static_cast<size_t>(mdp.vertex_count()), -1) {
    for (int v = 0; v < mdp.vertex_count(); ++v)
      if (mdp.is_agent(v)) choice_[static_cast<size_t>(v)] = 0;
  }

  int choice_index(int v) const { return choice_[static_cast<size_t>(v)]; }

  int target(const Mdp& mdp, int v) const {
    return mdp.out_edges(v)[static_cast<size_t>(choice_[static_cast<size_t>(v)])].dst;
  }

  const Edge& chosen_edge(const Mdp& mdp, int v) const {
    return mdp.out_edges(v)[static_cast<size_t>(choice_[static_cast<size_t>(v)])];
  }

  bool is_active(const Mdp& mdp, int src, int dst) const {
    return mdp.is_agent(src) && target(mdp, src) == dst;
  }

  void set_target(const Mdp& mdp, int v, int dst) {
    if (!mdp.is_agent(v)) throw std::invalid_argument("policy choice on a randomization vertex");
    auto edges = mdp.out_edges(v);
    for (size_t i = 0; i < edges.size(); ++i)
      if (edges[i].dst == dst) {
        choice_[static_cast<size_t>(v)] = static_cast<int>(i);
        return;
      }
    throw std::invalid_argument("no edge " + std::to_string(v) + "->" + std::to_string(dst));
  }

  friend bool operator==(const Policy&, const Policy&) = default;

 private:
  std::vector<int> choice_;  // out-edge index per agent vertex, -1 elsewhere
};

inline std::uint64_t hash_policy(const Mdp& mdp, const Policy& policy) {
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a
  auto mix = [&h](std::uint64_t value) {
    h ^= value;
    h *= 1099511628211ull;
  };
  for (int v = 0; v < mdp.vertex_count(); ++v) {
    if (!mdp.is_agent(v)) continue;
    mix(static_cast<std::uint64_t>(v));
    mix(static_cast<std::uint64_t>(policy.target(mdp, v)));
  }
  return h;
}

}  // namespace pivotlab
