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

#include "pivotlab/canonical.hpp"

#include "gtest/gtest.h"
#include "pivotlab/bellman.hpp"
#include "pivotlab/properties.hpp"
#include "support.hpp"

namespace pivotlab {
namespace {

using test_support::policy_from_names;

TEST(CanonicalPolicyTest, StateSevenActiveSet) {
  const Mdp b = build_B(4);
  const BTopology topo = BTopology::from(b);
  const Policy expected = policy_from_names(
      b, topo,
      {{EdgeKind::Travel, 1},
       {EdgeKind::Enter, 1},
       {EdgeKind::Enter, 2},
       {EdgeKind::Enter, 3},
       {EdgeKind::Leave, 1},
       {EdgeKind::Leave, 2},
       {EdgeKind::Leave, 3},
       {EdgeKind::Skip, 4},
       {EdgeKind::Leave, 4}});
  EXPECT_EQ(canonical_policy(b, 7), expected);
}

TEST(CanonicalPolicyTest, StateEightActiveSet) {
  const Mdp b = build_B(4);
  const BTopology topo = BTopology::from(b);
  const Policy expected = policy_from_names(
      b, topo,
      {{EdgeKind::Travel, 4},
       {EdgeKind::Enter, 4},
       {EdgeKind::Leave, 4},
       {EdgeKind::Stay, 3},
       {EdgeKind::Skip, 3},
       {EdgeKind::Leave, 2},
       {EdgeKind::Board, 2},
       {EdgeKind::Stay, 1},
       {EdgeKind::Board, 1}});
  EXPECT_EQ(canonical_policy(b, 8), expected);
}

TEST(CanonicalPolicyTest, StateZero) {
  const Mdp b = build_B(3);
  const BTopology topo = BTopology::from(b);
  const Policy expected = policy_from_names(b, topo,
                                            {{EdgeKind::Travel, 1},
                                             {EdgeKind::Skip, 1},
                                             {EdgeKind::Skip, 2},
                                             {EdgeKind::Skip, 3},
                                             {EdgeKind::Leave, 1},
                                             {EdgeKind::Leave, 2},
                                             {EdgeKind::Leave, 3}});
  EXPECT_EQ(canonical_policy(b, 0), expected);
}

TEST(CanonicalPolicyTest, OutOfRange) {
  const Mdp b = build_B(3);
  EXPECT_THROW(canonical_policy(b, -1), DomainError);
  EXPECT_THROW(canonical_policy(b, 8), DomainError);
}

TEST(CanonicalPolicyTest, DefinitionHoldsAndRecognizerInverts) {
  for (int n = 1; n <= 6; ++n) {
    const Mdp b = build_B(n);
    const PropertyResult result = prop_canonical_definition(b, n);
    EXPECT_TRUE(result.pass) << "n=" << n << ": " << result.detail;
  }
}

TEST(RecognizeCanonicalTest, RejectsNearMisses) {
  const Mdp b = build_B(4);
  const BTopology topo = BTopology::from(b);
  EXPECT_FALSE(recognize_canonical(b, optimal_policy_B(b)).has_value());
  Policy flipped = canonical_policy(b, 7);
  flipped.set_target(b, topo.b_vertex(1), topo.b_vertex(2));  // stay(1) instead of leave(1)
  EXPECT_FALSE(recognize_canonical(b, flipped).has_value());
}

TEST(CanonicalPhasesTest, KnownSequences) {
  const std::vector<EdgeName> expected7 = {
      {EdgeKind::Stay, 3},  {EdgeKind::Enter, 4}, {EdgeKind::Travel, 4}, {EdgeKind::Board, 1},
      {EdgeKind::Board, 2}, {EdgeKind::Skip, 3},  {EdgeKind::Stay, 1}};
  EXPECT_EQ(canonical_phases(4, 7), expected7);

  const std::vector<EdgeName> expected1 = {{EdgeKind::Stay, 1},
                                           {EdgeKind::Enter, 2},
                                           {EdgeKind::Travel, 2},
                                           {EdgeKind::Skip, 1},
                                           {EdgeKind::Leave, 1}};
  EXPECT_EQ(canonical_phases(2, 1), expected1);
}

TEST(CanonicalPhasesTest, DomainErrors) {
  EXPECT_THROW(canonical_phases(4, 2), DomainError);   // even
  EXPECT_THROW(canonical_phases(4, 15), DomainError);  // above 2^n - 3
  EXPECT_THROW(canonical_phases(4, -3), DomainError);
  EXPECT_THROW(canonical_phases(1, 1), DomainError);  // empty domain at n = 1
}

TEST(CanonicalPhasesTest, TransitionsReachTheNextCanonicalPolicy) {
  for (int n = 1; n <= 6; ++n) {
    const Mdp b = build_B(n);
    const PropertyResult result = prop_phase_transitions(b, n);
    EXPECT_TRUE(result.pass) << "n=" << n << ": " << result.detail;
  }
}

TEST(PredictedTraceTest, SmallCases) {
  const std::vector<EdgeName> expected1 = {{EdgeKind::Enter, 1}};
  EXPECT_EQ(predicted_bland_trace(1), expected1);

  const std::vector<EdgeName> expected2 = {
      {EdgeKind::Enter, 1}, {EdgeKind::Stay, 1}, {EdgeKind::Enter, 2},  {EdgeKind::Travel, 2},
      {EdgeKind::Skip, 1},  {EdgeKind::Leave, 1}, {EdgeKind::Enter, 1}, {EdgeKind::Travel, 1}};
  EXPECT_EQ(predicted_bland_trace(2), expected2);

  // Sum of the per-state segment lengths: 1, 5, 2, 5, 2, 6, 2.
  EXPECT_EQ(predicted_bland_trace(3).size(), 23u);
}

TEST(OptimalPolicyTest, ValuesAndNoImprovement) {
  for (int n = 1; n <= 6; ++n) {
    const Mdp b = build_B(n);
    const BTopology topo = BTopology::from(b);
    const Policy optimal = optimal_policy_B(b);
    const ValueVector values = solve_values(b, optimal);
    EXPECT_EQ(values.at(topo.t), pow2(n + 1) - Rational(5, 4));
    EXPECT_TRUE(improving_switches(b, optimal, values).empty());
  }
}

}  // namespace
}  // namespace pivotlab
