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

#include <string>
#include <vector>

#include "pivotlab/engine.hpp"
#include "pivotlab/flux_lp.hpp"
#include "pivotlab/simplex.hpp"

namespace pivotlab {

/// Outcome of running policy iteration and the exact simplex side by side
/// from the same start with the same pivot rule.
struct CoupledReport {
  Trace policy_trace;
  SimplexTrace simplex_trace;
  bool pivot_count_matches = false;
  bool entering_sequence_matches = false;
  bool reduced_costs_match = true;  // LP reduced costs == edge reduced costs at every basis
  bool objective_matches = true;    // LP objective == value sum at every basis
  std::string detail;
};

/// Runs both engines and checks the correspondence at every visited
/// basis/policy pair: the basis maps back to the current policy, each
/// nonbasic variable's LP reduced cost equals the edge's reduced cost, and
/// the LP objective equals the value sum. Degenerate pivots surface as
/// DegeneratePivotError from the simplex itself.
inline CoupledReport run_coupled(const Mdp& mdp, const Policy& initial, const PivotRuleSpec& rule,
                                 std::int64_t max_iters) {
  CoupledReport report;
  RunOptions run_options;
  run_options.max_iters = max_iters;
  report.policy_trace = run(mdp, initial, rule, run_options);

  const FluxLp lp = build_flux_lp(mdp);
  SimplexOptions simplex_options;
  simplex_options.max_pivots = max_iters;
  simplex_options.observer = [&](const SimplexStepContext& ctx) {
    Policy policy(mdp);
    for (int j : ctx.var_of_row) {
      const LpVar& var = lp.vars[static_cast<size_t>(j)];
      policy.set_target(mdp, var.src, var.dst);
    }
    const ValueVector values = solve_values(mdp, policy);
    if (ctx.objective != value_sum(mdp, values)) {
      report.objective_matches = false;
      report.detail = "objective mismatch at pivot " + std::to_string(ctx.pivot);
    }
    for (int j = 0; j < lp.var_count(); ++j) {
      const auto& zc = ctx.reduced_costs[static_cast<size_t>(j)];
      if (!zc.has_value()) continue;  // basic
      const LpVar& var = lp.vars[static_cast<size_t>(j)];
      const Rational z = reduced_cost(mdp, policy, values, mdp.edge_at(var.src, var.dst));
      if (*zc != z) {
        report.reduced_costs_match = false;
        report.detail = "reduced-cost mismatch for " + var.name + " at pivot " +
                        std::to_string(ctx.pivot);
      }
    }
  };
  report.simplex_trace =
      simplex_run(lp, basis_of_policy(lp, mdp, initial), rule, simplex_options);

  report.pivot_count_matches =
      report.simplex_trace.total_pivots == report.policy_trace.total_switches;
  report.entering_sequence_matches =
      report.simplex_trace.pivots.size() == report.policy_trace.steps.size();
  if (report.entering_sequence_matches) {
    for (size_t i = 0; i < report.simplex_trace.pivots.size(); ++i) {
      const LpVar& var =
          lp.vars[static_cast<size_t>(report.simplex_trace.pivots[i].entering)];
      if (var.src != report.policy_trace.steps[i].src ||
          var.dst != report.policy_trace.steps[i].dst) {
        report.entering_sequence_matches = false;
        report.detail = "entering variable diverges at pivot " + std::to_string(i + 1);
        break;
      }
    }
  }
  return report;
}

}  // namespace pivotlab
