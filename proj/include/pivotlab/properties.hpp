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
#include <random>
#include <set>
#include <string>
#include <vector>

#include "pivotlab/bellman.hpp"
#include "pivotlab/build_b.hpp"
#include "pivotlab/build_d.hpp"
#include "pivotlab/canonical.hpp"
#include "pivotlab/engine.hpp"
#include "pivotlab/twin.hpp"

namespace pivotlab {

struct PropertyResult {
  std::string name;
  int n = 0;
  bool pass = true;
  std::string detail;
};

/// Uniform random policy, rejection-sampled until weak unichain.
inline Policy random_weak_unichain_policy(const Mdp& mdp, std::mt19937_64& rng) {
  for (int attempt = 0; attempt < 100000; ++attempt) {
    Policy policy(mdp);
    for (int v = 0; v < mdp.vertex_count(); ++v) {
      if (!mdp.is_agent(v) || mdp.out_degree(v) < 2) continue;
      std::uniform_int_distribution<int> pick(0, mdp.out_degree(v) - 1);
      policy.set_target(mdp, v, mdp.out_edges(v)[static_cast<size_t>(pick(rng))].dst);
    }
    if (is_weak_unichain(mdp, policy)) return policy;
  }
  throw std::runtime_error("could not sample a weak unichain policy");
}

/// Random weak unichain policy on the gadget-expanded process: a random weak
/// unichain base policy, the chosen gadget of each base vertex forced onto
/// its advancing edge, every other gadget choice sampled freely. (Uniform
/// rejection would almost never avoid the v <-> x two-cycles.)
inline Policy random_weak_unichain_policy_d(const Mdp& d, const GadgetMap& gadgets, const Mdp& b,
                                            std::mt19937_64& rng) {
  const Policy base = random_weak_unichain_policy(b, rng);
  Policy policy(d);
  std::bernoulli_distribution coin;
  for (int v = 0; v < gadgets.base_vertex_count; ++v) {
    if (v == b.sink()) continue;
    const int w = base.target(b, v);
    for (const Edge& e : b.out_edges(v)) {
      const Gadget& g = gadgets.at({v, e.dst});
      if (e.dst == w) {
        policy.set_target(d, v, g.x);
        policy.set_target(d, g.x, g.y);
      } else {
        policy.set_target(d, g.x, coin(rng) ? v : g.y);
      }
    }
  }
  if (!is_weak_unichain(d, policy))
    throw InvariantViolationError("structured gadget policy should be weak unichain");
  return policy;
}

// ---------------------------------------------------------------------------
// Base-family properties.

/// Every counter state has a policy satisfying all of its clauses, the
/// recognizer inverts the construction, and the optimal policy is not
/// canonical.
inline PropertyResult prop_canonical_definition(const Mdp& b, int n) {
  PropertyResult result{"canonical-definition", n};
  for (std::int64_t x = 0; x <= (std::int64_t(1) << n) - 1; ++x) {
    const Policy policy = canonical_policy(b, x);
    if (auto violated = violated_canonical_clause(b, policy, x)) {
      result.pass = false;
      result.detail = "x=" + std::to_string(x) + ": " + *violated;
      return result;
    }
    auto recognized = recognize_canonical(b, policy);
    if (!recognized.has_value() || *recognized != x) {
      result.pass = false;
      result.detail = "recognizer failed at x=" + std::to_string(x);
      return result;
    }
  }
  if (recognize_canonical(b, optimal_policy_B(b)).has_value()) {
    result.pass = false;
    result.detail = "optimal policy recognized as canonical";
  }
  return result;
}

/// travel(i) is never improving at a canonical policy.
inline PropertyResult prop_travel_not_improving(const Mdp& b, int n) {
  PropertyResult result{"travel-not-improving-at-canonical", n};
  const BTopology topo = BTopology::from(b);
  for (std::int64_t x = 0; x <= (std::int64_t(1) << n) - 1; ++x) {
    const Policy policy = canonical_policy(b, x);
    const ValueVector values = solve_values(b, policy);
    for (int i = 1; i <= n; ++i) {
      const Edge& travel = b.edge_at(topo.t, topo.a_vertex(i));
      if (reduced_cost(b, policy, values, travel) > 0) {
        result.pass = false;
        result.detail = "travel(" + std::to_string(i) + ") improving at x=" + std::to_string(x);
        return result;
      }
    }
  }
  return result;
}

/// Applying the canonical phases to an odd canonical policy (or the one- or
/// two-switch transition to an even one) yields the next canonical policy.
inline PropertyResult prop_phase_transitions(const Mdp& b, int n) {
  PropertyResult result{"phase-transitions", n};
  const BTopology topo = BTopology::from(b);
  for (std::int64_t x = 0; x <= (std::int64_t(1) << n) - 2; ++x) {
    Policy policy = canonical_policy(b, x);
    std::vector<EdgeName> switches;
    if (x == 0) {
      switches = {{EdgeKind::Enter, 1}};
    } else if (x % 2 == 0) {
      switches = {{EdgeKind::Enter, 1}, {EdgeKind::Travel, 1}};
    } else {
      switches = canonical_phases(n, x);
    }
    for (const EdgeName& name : switches) {
      auto [src, dst] = topo.edge_of(name);
      policy = apply_switch(b, policy, b.edge_at(src, dst));
    }
    if (!(policy == canonical_policy(b, x + 1))) {
      result.pass = false;
      result.detail = "transition from x=" + std::to_string(x) + " missed the next canonical policy";
      return result;
    }
  }
  return result;
}

/// Everything observable along one smallest-number run on the base process.
struct BlandBReport {
  Trace trace;
  std::vector<EdgeName> names;
  int canonical_visits = 0;       // distinct counter states seen
  bool sequence_matches = false;  // prefix equals the predicted sequence
  TraceDiff sequence_diff;
  bool at_most_one_travel = true;
  bool orderings_ok = true;  // z(enter) > z(skip), z(board); z(skip) > z(board) at application
  bool quarter_values = true;
  bool terminal_optimal = false;
  bool terminal_value_ok = false;  // Val(t) = 2^{n+1} - 5/4
  std::string detail;
};

inline BlandBReport analyze_bland_b(const Mdp& b, int n) {
  const BTopology topo = BTopology::from(b);
  BlandBReport report;
  std::set<std::int64_t> seen;

  RunOptions options;
  options.max_iters = default_max_iters(n);
  options.forbid_policy_revisit = n <= 5;
  options.observer = [&](const StepContext& ctx) {
    if (auto x = recognize_canonical(b, ctx.policy)) seen.insert(*x);
    int improving_travel = 0;
    for (const ImprovingSwitch& c : ctx.candidates)
      if (c.edge.src == topo.t) ++improving_travel;
    if (improving_travel > 1) report.at_most_one_travel = false;

    auto name = topo.name_of(b, ctx.chosen.edge.src, ctx.chosen.edge.dst);
    if (name.has_value() && (name->kind == EdgeKind::Enter || name->kind == EdgeKind::Skip)) {
      const int i = name->level;
      const Rational z_skip =
          reduced_cost(b, ctx.policy, ctx.values, b.edge_at(topo.a_vertex(i), topo.a_vertex(i + 1)));
      const Rational z_board =
          reduced_cost(b, ctx.policy, ctx.values, b.edge_at(topo.a_vertex(i), topo.t));
      if (name->kind == EdgeKind::Enter) {
        if (!(ctx.chosen.z > z_skip && ctx.chosen.z > z_board)) report.orderings_ok = false;
      } else {
        if (!(ctx.chosen.z > z_board)) report.orderings_ok = false;
      }
    }
    for (const Rational& value : ctx.values.values)
      if (denominator(value) != 1 && denominator(value) != 2 && denominator(value) != 4)
        report.quarter_values = false;
  };

  report.trace = run(b, canonical_policy(b, 0), PivotRuleSpec::bland(), options);
  if (auto x = recognize_canonical(b, report.trace.terminal)) seen.insert(*x);
  report.canonical_visits = static_cast<int>(seen.size());
  report.names = switch_names(b, report.trace);

  const auto predicted = predicted_bland_trace(n);
  std::vector<EdgeName> prefix(report.names.begin(),
                               report.names.begin() +
                                   static_cast<std::ptrdiff_t>(
                                       std::min(report.names.size(), predicted.size())));
  report.sequence_diff = verify_trace_against(prefix, predicted);
  report.sequence_matches = report.sequence_diff.pass;

  report.terminal_optimal = report.trace.terminal == optimal_policy_B(b);
  const ValueVector terminal_values = solve_values(b, report.trace.terminal);
  report.terminal_value_ok = terminal_values.at(topo.t) == pow2(n + 1) - Rational(5, 4);
  for (const Rational& value : terminal_values.values)
    if (denominator(value) != 1 && denominator(value) != 2 && denominator(value) != 4)
      report.quarter_values = false;
  return report;
}

// ---------------------------------------------------------------------------
// Gadget-family properties.

/// Everything observable along one run on the gadget-expanded process.
struct DRunReport {
  Trace trace;
  std::vector<EdgeName> xy_names;  // the (x,y)-switch subsequence as base names
  bool xy_matches_base = false;    // equals the full base-run switch sequence
  TraceDiff xy_diff;
  bool condition_b_ok = true;  // no deep (x,y) while a shallower (x_,v) is improving
  bool bounds_ok = true;       // p_v/4 <= z <= p_v 2^{n+2} for improving owned edges
  std::int64_t tie_total = 0;
  bool terminal_twin_optimal = false;
  bool terminal_value_ok = false;
};

inline DRunReport analyze_d_run(const Mdp& d, const GadgetMap& gadgets, const Mdp& b, int n,
                                const PivotRuleSpec& rule, const std::vector<EdgeName>& base_names,
                                bool check_bounds) {
  const BTopology topo = BTopology::from(b);
  DRunReport report;

  RunOptions options;
  options.max_iters = default_max_iters(n) * 4;
  options.forbid_policy_revisit = n <= 5;
  options.observer = [&](const StepContext& ctx) {
    report.tie_total += ctx.tie_count;
    const DEdgeInfo chosen = gadgets.classify(ctx.chosen.edge.src, ctx.chosen.edge.dst);
    if (chosen.type == DEdgeType::XToY) {
      const int owner = chosen.base_edge.first;
      for (const ImprovingSwitch& c : ctx.candidates) {
        const DEdgeInfo info = gadgets.classify(c.edge.src, c.edge.dst);
        if (info.type == DEdgeType::XToV &&
            vertex_number(info.base_edge.first) < vertex_number(owner))
          report.condition_b_ok = false;
      }
    }
    if (check_bounds) {
      for (const ImprovingSwitch& c : ctx.candidates) {
        auto owner = owner_vertex(gadgets, c.edge.src, c.edge.dst);
        if (!owner.has_value()) continue;
        const Rational& p = gadgets.at(gadgets.classify(c.edge.src, c.edge.dst).base_edge).p;
        if (!(c.z >= p / 4 && c.z <= p * pow2(n + 2))) report.bounds_ok = false;
      }
    }
  };

  const Policy initial = twin_policy(d, gadgets, b, canonical_policy(b, 0));
  report.trace = run(d, initial, rule, options);

  for (const TraceStep& step : report.trace.steps) {
    const DEdgeInfo info = gadgets.classify(step.src, step.dst);
    if (info.type != DEdgeType::XToY) continue;
    auto name = topo.name_of(b, info.base_edge.first, info.base_edge.second);
    if (!name.has_value()) throw InvariantViolationError("gadget over an unnamed base edge");
    report.xy_names.push_back(*name);
  }
  report.xy_diff = verify_trace_against(report.xy_names, base_names);
  report.xy_matches_base = report.xy_diff.pass;

  report.terminal_twin_optimal = report.trace.terminal == optimal_policy_D(d, gadgets, b);
  const ValueVector terminal_values = solve_values(d, report.trace.terminal);
  report.terminal_value_ok = terminal_values.at(topo.t) == pow2(n + 1) - Rational(5, 4);
  return report;
}

/// z'(x_{v,w},y_{v,w}) = p_v * z(v,w) over all replaced edges, for random
/// weak unichain base policies and their twins.
inline PropertyResult prop_reduced_cost_scaling(const Mdp& b, const Mdp& d,
                                                const GadgetMap& gadgets, int n, int samples,
                                                std::uint64_t seed) {
  PropertyResult result{"reduced-cost-scaling", n};
  std::mt19937_64 rng(seed);
  for (int trial = 0; trial < samples; ++trial) {
    const Policy base = random_weak_unichain_policy(b, rng);
    const Policy twin = twin_policy(d, gadgets, b, base);
    const ValueVector base_values = solve_values(b, base);
    const ValueVector twin_values = solve_values(d, twin);
    for (const auto& [base_edge, g] : gadgets.gadgets) {
      const Rational expected =
          g.p * reduced_cost(b, base, base_values, b.edge_at(base_edge.first, base_edge.second));
      const Rational actual = reduced_cost(d, twin, twin_values, d.edge_at(g.x, g.y));
      if (actual != expected) {
        result.pass = false;
        result.detail = "scaling violated at trial " + std::to_string(trial);
        return result;
      }
    }
  }
  return result;
}

/// The reduced costs of the three switches of a gadget reorientation agree:
/// z(x,y) at the twin, then z(v,x), then z(old_x, v) after each application.
inline PropertyResult prop_reorientation_triple(const Mdp& b, const Mdp& d,
                                                const GadgetMap& gadgets, int n, int samples,
                                                std::uint64_t seed) {
  PropertyResult result{"reorientation-equal-reduced-costs", n};
  std::mt19937_64 rng(seed);
  int done = 0, attempts = 0;
  while (done < samples && attempts < samples * 50) {
    ++attempts;
    const Policy base = random_weak_unichain_policy(b, rng);
    const ValueVector base_values = solve_values(b, base);
    const auto base_candidates = improving_switches(b, base, base_values);
    if (base_candidates.empty()) continue;
    std::uniform_int_distribution<size_t> pick(0, base_candidates.size() - 1);
    const Edge& base_switch = base_candidates[pick(rng)].edge;
    const int v = base_switch.src, w = base_switch.dst;

    const Policy twin = twin_policy(d, gadgets, b, base);
    const Gadget& g = gadgets.at({v, w});
    const int old_x = gadgets.at({v, base.target(b, v)}).x;

    const ValueVector values0 = solve_values(d, twin);
    const Rational z0 = reduced_cost(d, twin, values0, d.edge_at(g.x, g.y));
    const Policy after_xy = apply_switch(d, twin, d.edge_at(g.x, g.y));
    const ValueVector values1 = solve_values(d, after_xy);
    const Rational z1 = reduced_cost(d, after_xy, values1, d.edge_at(v, g.x));
    const Policy after_vx = apply_switch(d, after_xy, d.edge_at(v, g.x));
    const ValueVector values2 = solve_values(d, after_vx);
    const Rational z2 = reduced_cost(d, after_vx, values2, d.edge_at(old_x, v));
    if (z0 <= 0 || z0 != z1 || z1 != z2) {
      result.pass = false;
      result.detail = "triple mismatch for " + edge_display_name(b, v, w);
      return result;
    }
    ++done;
  }
  if (done < samples) {
    result.pass = false;
    result.detail = "could not sample enough improvable policies";
  }
  return result;
}

/// Construction sanity of the gadget family: probability rows sum to one and
/// edge numbers are a permutation of 1..|agent edges|, with the (x,v) block
/// in front and each (x,y) immediately followed by its (v,x).
inline PropertyResult prop_gadget_construction(const Mdp& d, const GadgetMap& gadgets, int n) {
  PropertyResult result{"gadget-construction", n};
  for (int v = 0; v < d.vertex_count(); ++v) {
    if (d.kind(v) != VertexKind::Randomization) continue;
    Rational sum = 0;
    for (const Edge& e : d.out_edges(v)) sum += e.payload;
    if (sum != 1) {
      result.pass = false;
      result.detail = "probability row of " + vertex_name(d, v) + " sums to " + format_rational(sum);
      return result;
    }
  }
  const auto agent_edges = d.agent_edges();
  std::vector<int> numbers;
  for (const Edge* e : agent_edges) {
    if (!e->bland.has_value()) {
      result.pass = false;
      result.detail = "agent edge without a number";
      return result;
    }
    numbers.push_back(*e->bland);
  }
  std::sort(numbers.begin(), numbers.end());
  for (size_t i = 0; i < numbers.size(); ++i)
    if (numbers[i] != static_cast<int>(i) + 1) {
      result.pass = false;
      result.detail = "edge numbers are not a permutation of 1..|E_A|";
      return result;
    }
  const int gadget_count = static_cast<int>(gadgets.gadgets.size());
  for (const Edge* e : agent_edges) {
    const DEdgeInfo info = gadgets.classify(e->src, e->dst);
    if (info.type == DEdgeType::XToV && *e->bland > gadget_count) {
      result.pass = false;
      result.detail = "(x,v) edge outside the leading block";
      return result;
    }
    if (info.type == DEdgeType::XToY) {
      const int v = info.base_edge.first;
      if (d.out_degree(v) >= 2) {
        const Edge& vx = d.edge_at(v, e->src);
        if (*vx.bland != *e->bland + 1) {
          result.pass = false;
          result.detail = "(v,x) does not follow its (x,y) in the numbering";
          return result;
        }
      }
    }
  }
  return result;
}

/// An improving switch raises the switched vertex strictly and no vertex
/// drops.
inline PropertyResult prop_switch_monotonicity(const Mdp& mdp, int n, int samples,
                                               std::uint64_t seed) {
  PropertyResult result{"switch-monotonicity", n};
  std::mt19937_64 rng(seed);
  int done = 0, attempts = 0;
  while (done < samples && attempts < samples * 50) {
    ++attempts;
    const Policy policy = random_weak_unichain_policy(mdp, rng);
    const ValueVector values = solve_values(mdp, policy);
    const auto candidates = improving_switches(mdp, policy, values);
    if (candidates.empty()) continue;
    std::uniform_int_distribution<size_t> pick(0, candidates.size() - 1);
    const Edge& edge = candidates[pick(rng)].edge;
    const ValueVector after = solve_values(mdp, apply_switch(mdp, policy, edge));
    for (int v = 0; v < mdp.vertex_count(); ++v)
      if (after.at(v) < values.at(v)) {
        result.pass = false;
        result.detail = "value dropped at " + vertex_name(mdp, v);
        return result;
      }
    if (!(after.at(edge.src) > values.at(edge.src))) {
      result.pass = false;
      result.detail = "switched vertex did not improve strictly";
      return result;
    }
    ++done;
  }
  if (done < samples) {
    result.pass = false;
    result.detail = "could not sample enough improvable policies";
  }
  return result;
}

// ---------------------------------------------------------------------------
// Aggregated verification used by the command-line front end.

inline std::vector<PropertyResult> run_verification(int n_max) {
  std::vector<PropertyResult> results;
  for (int n = 1; n <= n_max; ++n) {
    const Mdp b = build_B(n);
    results.push_back(prop_canonical_definition(b, n));
    results.push_back(prop_travel_not_improving(b, n));
    results.push_back(prop_phase_transitions(b, n));

    BlandBReport bland = analyze_bland_b(b, n);
    results.push_back({"canonical-visits", n, bland.canonical_visits == (1 << n),
                       "visited " + std::to_string(bland.canonical_visits)});
    results.push_back({"predicted-switch-sequence", n, bland.sequence_matches,
                       bland.sequence_matches ? ""
                                              : "first mismatch at position " +
                                                    std::to_string(bland.sequence_diff.position)});
    results.push_back({"at-most-one-improving-travel", n, bland.at_most_one_travel, ""});
    results.push_back({"enter-skip-board-orderings", n, bland.orderings_ok, ""});
    results.push_back({"quarter-integer-values", n, bland.quarter_values, ""});
    results.push_back({"terminal-optimal", n, bland.terminal_optimal && bland.terminal_value_ok, ""});

    auto [d, gadgets] = build_D(n);
    results.push_back(prop_gadget_construction(d, gadgets, n));
    for (RuleKind kind : {RuleKind::Bland, RuleKind::Dantzig, RuleKind::LargestIncrease}) {
      PivotRuleSpec rule;
      rule.kind = kind;
      DRunReport report =
          analyze_d_run(d, gadgets, b, n, rule, bland.names, kind == RuleKind::Dantzig);
      const std::string prefix = to_string(kind);
      results.push_back({prefix + "-condition-a-switch-mapping", n, report.xy_matches_base,
                         report.xy_matches_base
                             ? ""
                             : "diverges at position " + std::to_string(report.xy_diff.position)});
      results.push_back({prefix + "-condition-b-ordering", n, report.condition_b_ok, ""});
      if (kind == RuleKind::Dantzig)
        results.push_back({prefix + "-reduced-cost-bounds", n, report.bounds_ok, ""});
      if (kind != RuleKind::Bland)
        results.push_back({prefix + "-unique-maximizer", n, report.tie_total == 0,
                           std::to_string(report.tie_total) + " ties"});
      results.push_back({prefix + "-terminal-twin-optimal", n,
                         report.terminal_twin_optimal && report.terminal_value_ok, ""});
      results.push_back({prefix + "-exponential-switches", n,
                         report.trace.total_switches >= (std::int64_t(1) << n),
                         std::to_string(report.trace.total_switches) + " switches"});
    }
  }
  return results;
}

}  // namespace pivotlab
