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
#include <functional>
#include <string>
#include <unordered_set>
#include <vector>

#include "pivotlab/bellman.hpp"
#include "pivotlab/mdp.hpp"
#include "pivotlab/names.hpp"
#include "pivotlab/rules.hpp"

namespace pivotlab {

struct TraceStep {
  std::int64_t iteration = 0;  // 1-based
  int src = -1, dst = -1;      // the applied switch
  Rational reduced_cost;
  Rational value_sum_after;
  int improving_count = 0;  // candidates at selection time
  int tie_count = 0;
  RuleKind rule_used = RuleKind::Bland;
};

/// Ordered record of one policy-iteration run. value_sum_after never
/// decreases along the steps.
struct Trace {
  std::vector<TraceStep> steps;
  Policy terminal;
  Rational terminal_value_sum;
  std::int64_t total_switches = 0;
};

/// Everything a per-step observer gets to look at before the switch is
/// applied. Used by the property suites; the trace itself stays compact.
struct StepContext {
  std::int64_t iteration;
  const Policy& policy;
  const ValueVector& values;
  const std::vector<ImprovingSwitch>& candidates;
  const ImprovingSwitch& chosen;
  int tie_count;
  RuleKind rule_used;
};

struct RunOptions {
  std::int64_t max_iters = 1 << 20;
  /// Track visited policies and abort on a repeat. Affordable on small
  /// instances only; value-sum monotonicity covers the rest.
  bool forbid_policy_revisit = false;
  std::function<void(const StepContext&)> observer;
};

/// Default iteration cap for instances of size parameter n: comfortably
/// above the expected switch counts while bounding runaway bugs.
inline std::int64_t default_max_iters(int n) { return std::int64_t(1) << (n + 6); }

/// Runs policy iteration with one switch per step until no improving switch
/// remains. Asserts on every step that the policy is weak unichain and that
/// the value sum did not decrease; throws IterationCapError when the cap is
/// reached first.
inline Trace run(const Mdp& mdp, const Policy& initial, const PivotRuleSpec& rule,
                 const RunOptions& options = {}) {
  Policy policy = initial;
  ValueVector values = solve_values(mdp, policy);  // checks weak unichain
  Rational sum = value_sum(mdp, values);
  RuleSequencer sequencer(rule);

  std::unordered_set<std::uint64_t> visited;
  if (options.forbid_policy_revisit) visited.insert(hash_policy(mdp, policy));

  Trace trace;
  for (std::int64_t iteration = 1;; ++iteration) {
    const std::vector<ImprovingSwitch> candidates = improving_switches(mdp, policy, values);
    if (candidates.empty()) break;
    if (iteration > options.max_iters)
      throw IterationCapError("no optimum after " + std::to_string(options.max_iters) +
                              " switches");

    const RuleKind rule_used = sequencer.next(iteration);
    Selection selection;
    switch (rule_used) {
      case RuleKind::Bland: selection = select_bland(candidates); break;
      case RuleKind::Dantzig: selection = select_dantzig(candidates); break;
      case RuleKind::LargestIncrease:
        selection = select_largest_increase(mdp, policy, candidates);
        break;
      case RuleKind::Mix: throw std::logic_error("mix must resolve to a base rule");
    }

    if (options.observer)
      options.observer(StepContext{iteration, policy, values, candidates, selection.chosen,
                                   selection.tie_count, rule_used});

    policy = apply_switch(mdp, policy, selection.chosen.edge);
    values = solve_values(mdp, policy);  // throws if weak unichain breaks
    Rational new_sum = value_sum(mdp, values);
    if (new_sum < sum)
      throw InvariantViolationError("value sum decreased at iteration " +
                                    std::to_string(iteration));
    if (options.forbid_policy_revisit && !visited.insert(hash_policy(mdp, policy)).second)
      throw InvariantViolationError("policy revisited at iteration " + std::to_string(iteration));

    trace.steps.push_back(TraceStep{iteration, selection.chosen.edge.src,
                                    selection.chosen.edge.dst, selection.chosen.z, new_sum,
                                    static_cast<int>(candidates.size()), selection.tie_count,
                                    rule_used});
    sum = std::move(new_sum);
  }
  trace.terminal = std::move(policy);
  trace.terminal_value_sum = std::move(sum);
  trace.total_switches = static_cast<std::int64_t>(trace.steps.size());
  return trace;
}

/// Switch sequence of a base-process trace as edge names.
inline std::vector<EdgeName> switch_names(const Mdp& b, const Trace& trace) {
  const BTopology topo = BTopology::from(b);
  std::vector<EdgeName> names;
  names.reserve(trace.steps.size());
  for (const TraceStep& step : trace.steps) {
    auto name = topo.name_of(b, step.src, step.dst);
    if (!name.has_value()) throw std::invalid_argument("unnamed switch in base trace");
    names.push_back(*name);
  }
  return names;
}

/// Positional diff against a predicted sequence; empty diff = pass.
struct TraceDiff {
  bool pass = true;
  size_t position = 0;
  std::string expected;
  std::string actual;
};

inline TraceDiff verify_trace_against(const std::vector<EdgeName>& actual,
                                      const std::vector<EdgeName>& predicted) {
  const size_t common = std::min(actual.size(), predicted.size());
  for (size_t i = 0; i < common; ++i) {
    if (!(actual[i] == predicted[i]))
      return {false, i, to_string(predicted[i]), to_string(actual[i])};
  }
  if (actual.size() != predicted.size()) {
    if (actual.size() < predicted.size())
      return {false, actual.size(), to_string(predicted[actual.size()]), "<end>"};
    return {false, predicted.size(), "<end>", to_string(actual[predicted.size()])};
  }
  return {};
}

}  // namespace pivotlab
