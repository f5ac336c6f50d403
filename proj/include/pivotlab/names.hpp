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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pivotlab/mdp.hpp"

namespace pivotlab {

/// Named edge families of the level-structured base process.
enum class EdgeKind { Travel, Enter, Skip, Board, Stay, Leave, DummyToSink, SinkLoop };

struct EdgeName {
  EdgeKind kind = EdgeKind::Travel;
  int level = 0;  // unused for DummyToSink/SinkLoop

  friend bool operator==(const EdgeName&, const EdgeName&) = default;
};

inline std::string to_string(const EdgeName& name) {
  switch (name.kind) {
    case EdgeKind::Travel: return "travel(" + std::to_string(name.level) + ")";
    case EdgeKind::Enter: return "enter(" + std::to_string(name.level) + ")";
    case EdgeKind::Skip: return "skip(" + std::to_string(name.level) + ")";
    case EdgeKind::Board: return "board(" + std::to_string(name.level) + ")";
    case EdgeKind::Stay: return "stay(" + std::to_string(name.level) + ")";
    case EdgeKind::Leave: return "leave(" + std::to_string(name.level) + ")";
    case EdgeKind::DummyToSink: return "d->s";
    case EdgeKind::SinkLoop: return "s->s";
  }
  return "?";
}

inline std::optional<EdgeName> parse_edge_name(std::string_view text) {
  if (text == "d->s") return EdgeName{EdgeKind::DummyToSink, 0};
  if (text == "s->s") return EdgeName{EdgeKind::SinkLoop, 0};
  auto open = text.find('(');
  if (open == std::string_view::npos || text.back() != ')') return std::nullopt;
  std::string_view word = text.substr(0, open);
  std::string_view num = text.substr(open + 1, text.size() - open - 2);
  if (num.empty()) return std::nullopt;
  int level = 0;
  for (char c : num) {
    if (c < '0' || c > '9') return std::nullopt;
    level = level * 10 + (c - '0');
  }
  EdgeKind kind;
  if (word == "travel") kind = EdgeKind::Travel;
  else if (word == "enter") kind = EdgeKind::Enter;
  else if (word == "skip") kind = EdgeKind::Skip;
  else if (word == "board") kind = EdgeKind::Board;
  else if (word == "stay") kind = EdgeKind::Stay;
  else if (word == "leave") kind = EdgeKind::Leave;
  else return std::nullopt;
  return EdgeName{kind, level};
}

/// Short display name of a vertex ("t", "a3", "x(a1->b1)", ...).
inline std::string vertex_name(const Mdp& mdp, int v) {
  const VertexLabel& label = mdp.vertex(v).label;
  switch (label.role) {
    case VertexRole::Transport: return "t";
    case VertexRole::Dummy: return "d";
    case VertexRole::Sink: return "s";
    case VertexRole::LevelA: return "a" + std::to_string(label.level);
    case VertexRole::LevelB: return "b" + std::to_string(label.level);
    case VertexRole::GadgetX:
    case VertexRole::GadgetY:
    case VertexRole::GadgetZ: {
      const char* prefix = label.role == VertexRole::GadgetX   ? "x"
                           : label.role == VertexRole::GadgetY ? "y"
                                                               : "z";
      return std::string(prefix) + "(" + vertex_name(mdp, label.base_src) + "->" +
             vertex_name(mdp, label.base_dst) + ")";
    }
  }
  return "?";
}

inline std::string edge_display_name(const Mdp& mdp, int src, int dst);

/// Resolves the level structure of a base process (or of the base vertices
/// embedded in a gadget-expanded one) from vertex labels.
struct BTopology {
  int n = 0;
  int t = -1, d = -1, s = -1;
  std::vector<int> a, b;  // 1-based; a[0]/b[0] unused

  static BTopology from(const Mdp& mdp) {
    BTopology topo;
    int max_level = 0;
    for (int v = 0; v < mdp.vertex_count(); ++v) {
      const VertexLabel& label = mdp.vertex(v).label;
      if (label.role == VertexRole::LevelA || label.role == VertexRole::LevelB)
        max_level = std::max(max_level, label.level);
    }
    topo.n = max_level;
    topo.a.assign(static_cast<size_t>(max_level) + 1, -1);
    topo.b.assign(static_cast<size_t>(max_level) + 1, -1);
    for (int v = 0; v < mdp.vertex_count(); ++v) {
      const VertexLabel& label = mdp.vertex(v).label;
      switch (label.role) {
        case VertexRole::Transport: topo.t = v; break;
        case VertexRole::Dummy: topo.d = v; break;
        case VertexRole::Sink: topo.s = v; break;
        case VertexRole::LevelA: topo.a[static_cast<size_t>(label.level)] = v; break;
        case VertexRole::LevelB: topo.b[static_cast<size_t>(label.level)] = v; break;
        default: break;
      }
    }
    if (topo.t < 0 || topo.d < 0 || topo.s < 0)
      throw std::invalid_argument("process lacks transport/dummy/sink vertices");
    return topo;
  }

  // a(n+1) aliases the sink, b(n+1) aliases the dummy.
  int a_vertex(int i) const { return i == n + 1 ? s : a[static_cast<size_t>(i)]; }
  int b_vertex(int i) const { return i == n + 1 ? d : b[static_cast<size_t>(i)]; }

  std::pair<int, int> edge_of(const EdgeName& name) const {
    switch (name.kind) {
      case EdgeKind::Travel: return {t, a_vertex(name.level)};
      case EdgeKind::Enter: return {a_vertex(name.level), b_vertex(name.level)};
      case EdgeKind::Skip: return {a_vertex(name.level), a_vertex(name.level + 1)};
      case EdgeKind::Board: return {a_vertex(name.level), t};
      case EdgeKind::Stay: return {b_vertex(name.level), b_vertex(name.level + 1)};
      case EdgeKind::Leave: return {b_vertex(name.level), a_vertex(name.level + 1)};
      case EdgeKind::DummyToSink: return {d, s};
      case EdgeKind::SinkLoop: return {s, s};
    }
    return {-1, -1};
  }

  std::optional<EdgeName> name_of(const Mdp& mdp, int src, int dst) const {
    const VertexLabel& sl = mdp.vertex(src).label;
    if (sl.role == VertexRole::Transport) {
      const VertexLabel& dl = mdp.vertex(dst).label;
      if (dl.role == VertexRole::LevelA) return EdgeName{EdgeKind::Travel, dl.level};
      return std::nullopt;
    }
    if (sl.role == VertexRole::LevelA) {
      int i = sl.level;
      if (dst == b_vertex(i)) return EdgeName{EdgeKind::Enter, i};
      if (dst == a_vertex(i + 1)) return EdgeName{EdgeKind::Skip, i};
      if (dst == t) return EdgeName{EdgeKind::Board, i};
      return std::nullopt;
    }
    if (sl.role == VertexRole::LevelB) {
      int i = sl.level;
      if (dst == b_vertex(i + 1)) return EdgeName{EdgeKind::Stay, i};
      if (dst == a_vertex(i + 1)) return EdgeName{EdgeKind::Leave, i};
      return std::nullopt;
    }
    if (sl.role == VertexRole::Dummy && dst == s) return EdgeName{EdgeKind::DummyToSink, 0};
    if (sl.role == VertexRole::Sink && dst == s) return EdgeName{EdgeKind::SinkLoop, 0};
    return std::nullopt;
  }
};

/// "enter(3)"-style names on the base process, "x(a1->b1)->y(a1->b1)"-style
/// gadget-qualified names elsewhere.
inline std::string edge_display_name(const Mdp& mdp, int src, int dst) {
  const VertexRole sr = mdp.vertex(src).label.role;
  const VertexRole dr = mdp.vertex(dst).label.role;
  const bool gadget = sr == VertexRole::GadgetX || sr == VertexRole::GadgetY ||
                      sr == VertexRole::GadgetZ || dr == VertexRole::GadgetX ||
                      dr == VertexRole::GadgetY || dr == VertexRole::GadgetZ;
  if (!gadget) {
    BTopology topo = BTopology::from(mdp);
    if (auto name = topo.name_of(mdp, src, dst)) return to_string(*name);
  }
  return vertex_name(mdp, src) + "->" + vertex_name(mdp, dst);
}

}  // namespace pivotlab
