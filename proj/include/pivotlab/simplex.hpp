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
#include <optional>
#include <vector>

#include "pivotlab/errors.hpp"
#include "pivotlab/flux_lp.hpp"
#include "pivotlab/rules.hpp"

namespace pivotlab {

struct PivotRecord {
  std::int64_t pivot = 0;  // 1-based
  int entering = -1;       // variable indices
  int leaving = -1;
  Rational reduced_cost;
  Rational step_length;
  Rational objective_after;
  int tie_count = 0;
  RuleKind rule_used = RuleKind::Bland;
};

struct SimplexTrace {
  std::vector<PivotRecord> pivots;
  Basis terminal;
  Rational objective;
  std::int64_t total_pivots = 0;
};

/// Snapshot handed to an observer before each pivot (and once at optimality
/// with entering = -1): current basis, basic values, objective, and the
/// reduced cost of every nonbasic variable.
struct SimplexStepContext {
  std::int64_t pivot;
  const std::vector<int>& var_of_row;
  const RatVector& x_basic;
  const Rational& objective;
  const std::vector<std::optional<Rational>>& reduced_costs;  // nullopt = basic
  int entering;  // -1 at the terminal snapshot
};

struct SimplexOptions {
  std::int64_t max_pivots = 1 << 20;
  std::function<void(const SimplexStepContext&)> observer;
};

/// Primal revised simplex with exact rational arithmetic. The basis inverse
/// is kept explicitly (initial Gaussian inversion, then a product-form update
/// per pivot); entering variables follow the pivot rule, the leaving variable
/// comes from an exact ratio test. A zero or tied minimum ratio contradicts
/// the non-degeneracy of these instances and aborts.
inline SimplexTrace simplex_run(const FluxLp& lp, const Basis& start, const PivotRuleSpec& rule,
                                const SimplexOptions& options = {}) {
  const size_t m = static_cast<size_t>(lp.row_count());
  detail::FactoredBasis basis = detail::factor_basis(lp, start);
  std::vector<char> is_basic(static_cast<size_t>(lp.var_count()), 0);
  for (int j : basis.var_of_row) is_basic[static_cast<size_t>(j)] = 1;

  Rational objective = lp_objective(lp, basis);
  RuleSequencer sequencer(rule);
  SimplexTrace trace;

  auto column_times_inverse = [&](int var) {
    RatVector d(m, Rational(0));
    for (const auto& [row, coef] : lp.vars[static_cast<size_t>(var)].column)
      for (size_t i = 0; i < m; ++i) d[i] += basis.inverse[i][static_cast<size_t>(row)] * coef;
    return d;
  };
  auto ratio_test = [&](const RatVector& d) -> std::optional<std::pair<size_t, Rational>> {
    std::optional<size_t> leave;
    Rational best;
    int ties = 0;
    for (size_t i = 0; i < m; ++i) {
      if (d[i] <= 0) continue;
      Rational ratio = basis.x_basic[i] / d[i];
      if (!leave.has_value() || ratio < best) {
        leave = i;
        best = std::move(ratio);
        ties = 0;
      } else if (ratio == best) {
        ++ties;
      }
    }
    if (!leave.has_value()) return std::nullopt;
    if (ties > 0)
      throw DegeneratePivotError("tied minimum ratio: the next basis would be degenerate");
    return std::pair(*leave, best);
  };

  for (std::int64_t pivot = 1;; ++pivot) {
    // Reduced costs: z_j = c_j - y^T A_j with y^T = c_B^T B^{-1}.
    RatVector y(m, Rational(0));
    for (size_t i = 0; i < m; ++i) {
      const Rational& cb = lp.vars[static_cast<size_t>(basis.var_of_row[i])].obj;
      if (cb == 0) continue;
      for (size_t k = 0; k < m; ++k) y[k] += cb * basis.inverse[i][k];
    }
    std::vector<std::optional<Rational>> reduced_costs(static_cast<size_t>(lp.var_count()));
    std::vector<ImprovingSwitch> candidates;
    for (int j = 0; j < lp.var_count(); ++j) {
      if (is_basic[static_cast<size_t>(j)]) continue;
      const LpVar& var = lp.vars[static_cast<size_t>(j)];
      Rational zc = var.obj;
      for (const auto& [row, coef] : var.column) zc -= y[static_cast<size_t>(row)] * coef;
      if (zc > 0) {
        Edge pseudo;
        pseudo.src = j;  // candidate selection only needs an id and a number
        pseudo.dst = j;
        pseudo.bland = var.bland;
        candidates.push_back({pseudo, zc});
      }
      reduced_costs[static_cast<size_t>(j)] = std::move(zc);
    }

    if (candidates.empty()) {
      if (options.observer)
        options.observer(
            SimplexStepContext{pivot, basis.var_of_row, basis.x_basic, objective, reduced_costs, -1});
      break;
    }
    if (pivot > options.max_pivots)
      throw PivotCapError("no optimum after " + std::to_string(options.max_pivots) + " pivots");

    const RuleKind rule_used = sequencer.next(pivot);
    Selection selection;
    switch (rule_used) {
      case RuleKind::Bland: selection = select_bland(candidates); break;
      case RuleKind::Dantzig: selection = select_dantzig(candidates); break;
      case RuleKind::LargestIncrease: {
        // Exact ratio test per candidate; the entering variable maximizes the
        // objective increase z_j * theta_j of the full pivot.
        const ImprovingSwitch* best = nullptr;
        Rational best_increase;
        int ties = 0;
        for (const ImprovingSwitch& c : candidates) {
          auto step = ratio_test(column_times_inverse(c.edge.src));
          if (!step.has_value()) throw InvariantViolationError("unbounded flux LP");
          Rational increase = c.z * step->second;
          if (best == nullptr || increase > best_increase) {
            best = &c;
            best_increase = std::move(increase);
            ties = 0;
          } else if (increase == best_increase) {
            ++ties;
            if (c.edge.bland.has_value() && best->edge.bland.has_value() &&
                *c.edge.bland < *best->edge.bland)
              best = &c;
          }
        }
        selection = {*best, ties};
        break;
      }
      case RuleKind::Mix: throw std::logic_error("mix must resolve to a base rule");
    }

    const int entering = selection.chosen.edge.src;
    if (options.observer)
      options.observer(SimplexStepContext{pivot, basis.var_of_row, basis.x_basic, objective,
                                          reduced_costs, entering});

    RatVector d = column_times_inverse(entering);
    auto step = ratio_test(d);
    if (!step.has_value()) throw InvariantViolationError("unbounded flux LP");
    const auto [leave_row, theta] = *step;
    if (theta == 0)
      throw DegeneratePivotError("zero-length pivot step at pivot " + std::to_string(pivot));

    // Product-form update of the explicit inverse.
    const Rational pivot_value = d[leave_row];
    for (size_t k = 0; k < m; ++k) basis.inverse[leave_row][k] /= pivot_value;
    for (size_t i = 0; i < m; ++i) {
      if (i == leave_row || d[i] == 0) continue;
      const Rational factor = d[i];
      for (size_t k = 0; k < m; ++k)
        basis.inverse[i][k] -= factor * basis.inverse[leave_row][k];
    }
    for (size_t i = 0; i < m; ++i)
      if (i != leave_row) basis.x_basic[i] -= theta * d[i];
    basis.x_basic[leave_row] = theta;

    const int leaving = basis.var_of_row[leave_row];
    is_basic[static_cast<size_t>(leaving)] = 0;
    is_basic[static_cast<size_t>(entering)] = 1;
    basis.var_of_row[leave_row] = entering;

    Rational objective_after = objective + selection.chosen.z * theta;
    if (objective_after <= objective)
      throw InvariantViolationError("objective did not increase at pivot " + std::to_string(pivot));
    objective = std::move(objective_after);

    trace.pivots.push_back(PivotRecord{pivot, entering, leaving, selection.chosen.z, theta,
                                       objective, selection.tie_count, rule_used});
  }

  Basis terminal;
  terminal.vars = basis.var_of_row;
  std::sort(terminal.vars.begin(), terminal.vars.end());
  trace.terminal = std::move(terminal);
  trace.objective = std::move(objective);
  trace.total_pivots = static_cast<std::int64_t>(trace.pivots.size());
  return trace;
}

}  // namespace pivotlab
