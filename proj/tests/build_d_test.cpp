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

#include "pivotlab/build_d.hpp"

#include "gtest/gtest.h"
#include "pivotlab/properties.hpp"

namespace pivotlab {
namespace {

TEST(BuildDTest, Counts) {
  auto [d, gadgets] = build_D(4);
  // 25 replaced edges: every base edge except the sink loop.
  EXPECT_EQ(gadgets.gadgets.size(), 25u);
  EXPECT_EQ(d.vertex_count(), 11 + 3 * 25);
  EXPECT_EQ(d.agent_edges().size(), 4u * 25 + 1);
  EXPECT_EQ(d.agent_vertex_count(), 11 + 2 * 25);
  EXPECT_THROW(build_D(0), DomainError);
}

TEST(BuildDTest, DefaultProbabilities) {
  auto [d, gadgets] = build_D(4);
  const BTopology topo = BTopology::from(d);
  // p_v = 2^{-N_V(v)(n+5)}
  EXPECT_EQ(gadgets.at({topo.t, topo.a_vertex(1)}).p, pow2(-9));
  EXPECT_EQ(gadgets.at({topo.a_vertex(1), topo.b_vertex(1)}).p, pow2(-18));
  EXPECT_EQ(gadgets.at({topo.d, topo.s}).p, pow2(-90));

  auto [d2, gadgets2] = build_D(2);
  const BTopology topo2 = BTopology::from(d2);
  EXPECT_EQ(gadgets2.at({topo2.t, topo2.a_vertex(1)}).p, Rational(1, 128));
}

TEST(BuildDTest, GadgetShape) {
  auto [d, gadgets] = build_D(2);
  const BTopology topo = BTopology::from(d);
  const Gadget& g = gadgets.at({topo.a_vertex(1), topo.b_vertex(1)});
  EXPECT_EQ(d.kind(g.x), VertexKind::Agent);
  EXPECT_EQ(d.kind(g.y), VertexKind::Randomization);
  EXPECT_EQ(d.kind(g.z), VertexKind::Agent);
  EXPECT_EQ(d.edge_at(topo.a_vertex(1), g.x).payload, Rational(0));
  EXPECT_EQ(d.edge_at(g.x, topo.a_vertex(1)).payload, Rational(0));
  EXPECT_EQ(d.edge_at(g.x, g.y).payload, Rational(0));
  EXPECT_EQ(d.edge_at(g.y, topo.a_vertex(1)).payload, Rational(1) - g.p);
  EXPECT_EQ(d.edge_at(g.y, g.z).payload, g.p);
  // The z edge carries the base reward of enter(1).
  EXPECT_EQ(d.edge_at(g.z, topo.b_vertex(1)).payload, Rational(2));
  EXPECT_EQ(vertex_name(d, g.x), "x(a1->b1)");
  EXPECT_EQ(vertex_name(d, g.y), "y(a1->b1)");
  EXPECT_EQ(vertex_name(d, g.z), "z(a1->b1)");
}

TEST(BuildDTest, NumberingStructure) {
  for (int n : {1, 2, 3}) {
    auto [d, gadgets] = build_D(n);
    const PropertyResult result = prop_gadget_construction(d, gadgets, n);
    EXPECT_TRUE(result.pass) << result.detail;
  }
  // The leading block follows ascending vertex numbers of the owners.
  auto [d, gadgets] = build_D(2);
  const BTopology topo = BTopology::from(d);
  const Gadget& travel1 = gadgets.at({topo.t, topo.a_vertex(1)});
  const Gadget& travel2 = gadgets.at({topo.t, topo.a_vertex(2)});
  const Gadget& enter1 = gadgets.at({topo.a_vertex(1), topo.b_vertex(1)});
  EXPECT_EQ(*d.edge_at(travel1.x, topo.t).bland, 1);
  EXPECT_EQ(*d.edge_at(travel2.x, topo.t).bland, 2);
  EXPECT_EQ(*d.edge_at(enter1.x, topo.a_vertex(1)).bland, 3);
}

TEST(BuildDTest, AlternativePrependOrder) {
  BuildDOptions options;
  options.prepend_order = PrependOrder::ByBaseNumber;
  auto [d, gadgets] = build_D(2, options);
  EXPECT_TRUE(prop_gadget_construction(d, gadgets, 2).pass);
  // Base order starts with the travel edges, so the first two slots agree
  // with the default order; enter(1) now comes after skip(1)'s... the block
  // is simply ordered by base edge number.
  const BTopology topo = BTopology::from(d);
  const Gadget& travel1 = gadgets.at({topo.t, topo.a_vertex(1)});
  EXPECT_EQ(*d.edge_at(travel1.x, topo.t).bland, 1);
}

TEST(BuildDTest, ProbabilityOverrides) {
  BuildDOptions options;
  options.probability_overrides["t"] = Rational(1, 2);
  auto [d, gadgets] = build_D(2, options);
  const BTopology topo = BTopology::from(d);
  EXPECT_EQ(gadgets.at({topo.t, topo.a_vertex(1)}).p, Rational(1, 2));
  EXPECT_EQ(gadgets.at({topo.t, topo.a_vertex(2)}).p, Rational(1, 2));
  // Untouched vertices keep the default.
  EXPECT_EQ(gadgets.at({topo.a_vertex(1), topo.b_vertex(1)}).p, pow2(-14));
}

TEST(BuildDTest, ProbabilityOneDropsTheReturnEdge) {
  BuildDOptions options;
  for (const char* name : {"t", "a1", "b1", "d"}) options.probability_overrides[name] = Rational(1);
  auto [d, gadgets] = build_D(1, options);
  for (const auto& [base_edge, g] : gadgets.gadgets) {
    EXPECT_EQ(d.out_degree(g.y), 1);
    EXPECT_EQ(d.out_edges(g.y)[0].dst, g.z);
    EXPECT_EQ(d.out_edges(g.y)[0].payload, Rational(1));
  }
}

// The exponential run survives any probability choice in (0,1]; exercise the
// override hook end to end at the degenerate-gadget extreme.
TEST(BuildDTest, RunsWorkUnderProbabilityOverrides) {
  BuildDOptions options;
  for (const char* name : {"t", "a1", "b1", "a2", "b2", "d"})
    options.probability_overrides[name] = Rational(1);
  auto [d, gadgets] = build_D(2, options);
  const Mdp b = build_B(2);
  const Policy twin = twin_policy(d, gadgets, b, canonical_policy(b, 0));
  RunOptions run_options;
  run_options.max_iters = default_max_iters(2) * 4;
  const Trace trace = run(d, twin, PivotRuleSpec::bland(), run_options);
  EXPECT_GE(trace.total_switches, 4);
  EXPECT_EQ(trace.terminal, optimal_policy_D(d, gadgets, b));
}

TEST(BuildDTest, RejectsBadProbabilities) {
  BuildDOptions zero;
  zero.probability_overrides["t"] = Rational(0);
  EXPECT_THROW(build_D(2, zero), BadProbabilityError);
  BuildDOptions above_one;
  above_one.probability_overrides["t"] = Rational(3, 2);
  EXPECT_THROW(build_D(2, above_one), BadProbabilityError);
  BuildDOptions unknown;
  unknown.probability_overrides["q7"] = Rational(1, 2);
  EXPECT_THROW(build_D(2, unknown), BadProbabilityError);
}

TEST(BuildDTest, ClassifyCoversAllAgentEdges) {
  auto [d, gadgets] = build_D(2);
  int v_to_x = 0, x_to_v = 0, x_to_y = 0, z_to_w = 0, loops = 0;
  for (const Edge* e : d.agent_edges()) {
    switch (gadgets.classify(e->src, e->dst).type) {
      case DEdgeType::VToX: ++v_to_x; break;
      case DEdgeType::XToV: ++x_to_v; break;
      case DEdgeType::XToY: ++x_to_y; break;
      case DEdgeType::ZToW: ++z_to_w; break;
      case DEdgeType::SinkLoop: ++loops; break;
    }
  }
  const int gadget_count = 6 * 2 + 1;
  EXPECT_EQ(v_to_x, gadget_count);
  EXPECT_EQ(x_to_v, gadget_count);
  EXPECT_EQ(x_to_y, gadget_count);
  EXPECT_EQ(z_to_w, gadget_count);
  EXPECT_EQ(loops, 1);
}

}  // namespace
}  // namespace pivotlab
