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

#include "pivotlab/errors.hpp"
#include "pivotlab/mdp.hpp"
#include "pivotlab/names.hpp"

namespace pivotlab {

/// The deterministic level family. 2n+3 vertices (in vertex-numbering order
/// t, a1, b1, ..., an, bn, d, s) and 6n+2 agent edges. Entering level l pays
/// 2^l, staying pays 3/4, boarding the transport vertex from a_l pays
/// -2^l + 5/4; everything else pays zero. Edge numbers: travel(i) = i,
/// then five numbers per level starting at n+1, then d->s and the sink loop.
inline Mdp build_B(int n) {
  if (n < 1) throw DomainError("build_B requires n >= 1");
  MdpBuilder builder;
  const int t = builder.add_vertex(VertexKind::Agent, {VertexRole::Transport});
  std::vector<int> a(static_cast<size_t>(n) + 2, -1), b(static_cast<size_t>(n) + 2, -1);
  for (int i = 1; i <= n; ++i) {
    a[static_cast<size_t>(i)] = builder.add_vertex(VertexKind::Agent, {VertexRole::LevelA, i});
    b[static_cast<size_t>(i)] = builder.add_vertex(VertexKind::Agent, {VertexRole::LevelB, i});
  }
  const int d = builder.add_vertex(VertexKind::Agent, {VertexRole::Dummy});
  const int s = builder.add_vertex(VertexKind::Agent, {VertexRole::Sink});
  a[static_cast<size_t>(n) + 1] = s;
  b[static_cast<size_t>(n) + 1] = d;

  for (int i = 1; i <= n; ++i) builder.add_edge(t, a[static_cast<size_t>(i)], Rational(0), i);
  for (int i = 1; i <= n; ++i) {
    const int base = n + 5 * (i - 1);
    builder.add_edge(a[static_cast<size_t>(i)], b[static_cast<size_t>(i)], pow2(i), base + 1);
    builder.add_edge(a[static_cast<size_t>(i)], a[static_cast<size_t>(i) + 1], Rational(0), base + 2);
    builder.add_edge(a[static_cast<size_t>(i)], t, Rational(5, 4) - pow2(i), base + 3);
    builder.add_edge(b[static_cast<size_t>(i)], b[static_cast<size_t>(i) + 1], Rational(3, 4), base + 4);
    builder.add_edge(b[static_cast<size_t>(i)], a[static_cast<size_t>(i) + 1], Rational(0), base + 5);
  }
  builder.add_edge(d, s, Rational(0), 6 * n + 1);
  builder.add_edge(s, s, Rational(0), 6 * n + 2);
  builder.set_sink(s);
  return std::move(builder).build();
}

/// Position in the vertex numbering (t, a1, b1, ..., an, bn, d, s), starting
/// at 1. Builders emit base vertices in exactly this order, so the number of
/// a base vertex is its id + 1; this holds for the gadget-expanded family too.
inline int vertex_number(int base_vertex_id) { return base_vertex_id + 1; }

}  // namespace pivotlab
