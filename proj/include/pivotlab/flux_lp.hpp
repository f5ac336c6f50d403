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
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pivotlab/errors.hpp"
#include "pivotlab/linalg.hpp"
#include "pivotlab/mdp.hpp"
#include "pivotlab/names.hpp"

namespace pivotlab {

struct LpVar {
  std::string name;
  Rational obj;
  std::vector<std::pair<int, Rational>> column;  // (row, coefficient)
  // Edge linkage; absent (-1 / nullopt) on LPs read back from files.
  int src = -1, dst = -1;
  std::optional<int> bland;
};

/// Unit-supply flux formulation: one variable per agent edge excluding the
/// sink loop, one flow-balance equality per non-sink agent vertex with
/// right-hand side 1, maximization of total reward. A column carries +1 at
/// its source row and, at each agent-vertex row the edge's walk can land on
/// (folding through at most one randomization vertex), minus that landing
/// probability; the sink has no row.
struct FluxLp {
  std::vector<LpVar> vars;
  std::vector<std::string> row_names;
  std::vector<Rational> rhs;
  std::map<std::pair<int, int>, int> var_of_edge;  // by (src, dst)
  std::vector<int> row_of_vertex;                  // -1 for sink/randomization vertices

  int var_count() const { return static_cast<int>(vars.size()); }
  int row_count() const { return static_cast<int>(row_names.size()); }
};

inline FluxLp build_flux_lp(const Mdp& mdp) {
  FluxLp lp;
  lp.row_of_vertex.assign(static_cast<size_t>(mdp.vertex_count()), -1);
  for (int v = 0; v < mdp.vertex_count(); ++v) {
    if (!mdp.is_agent(v) || v == mdp.sink()) continue;
    lp.row_of_vertex[static_cast<size_t>(v)] = static_cast<int>(lp.row_names.size());
    lp.row_names.push_back(vertex_name(mdp, v));
    lp.rhs.push_back(Rational(1));
  }
  for (const Edge* e : mdp.agent_edges()) {
    if (e->src == mdp.sink() && e->dst == mdp.sink()) continue;
    LpVar var;
    var.name = edge_display_name(mdp, e->src, e->dst);
    var.obj = e->payload;
    var.src = e->src;
    var.dst = e->dst;
    var.bland = e->bland;
    std::map<int, Rational> coeffs;
    coeffs[lp.row_of_vertex[static_cast<size_t>(e->src)]] += 1;
    auto land = [&](int w, const Rational& probability) {
      const int row = lp.row_of_vertex[static_cast<size_t>(w)];
      if (row >= 0) coeffs[row] -= probability;
    };
    if (mdp.is_agent(e->dst)) {
      land(e->dst, Rational(1));
    } else {
      for (const Edge& r : mdp.out_edges(e->dst)) {
        if (!mdp.is_agent(r.dst))
          throw UnsupportedTopologyError("randomization vertex feeds another randomization vertex");
        land(r.dst, r.payload);
      }
    }
    for (const auto& [row, coef] : coeffs)
      if (coef != 0) var.column.push_back({row, coef});
    lp.var_of_edge[{e->src, e->dst}] = static_cast<int>(lp.vars.size());
    lp.vars.push_back(std::move(var));
  }
  return lp;
}

/// A simplex basis; in bijection with policies (the basic variables are the
/// active edges of all non-sink agent vertices). Stored as the sorted set of
/// basic variable indices.
struct Basis {
  std::vector<int> vars;

  friend bool operator==(const Basis&, const Basis&) = default;
};

inline Basis basis_of_policy(const FluxLp& lp, const Mdp& mdp, const Policy& policy) {
  Basis basis;
  for (int v = 0; v < mdp.vertex_count(); ++v) {
    if (!mdp.is_agent(v) || v == mdp.sink()) continue;
    basis.vars.push_back(lp.var_of_edge.at({v, policy.target(mdp, v)}));
  }
  std::sort(basis.vars.begin(), basis.vars.end());
  return basis;
}

namespace detail {

/// Basic variables keyed by their source-vertex row. Throws when the set is
/// not one edge per constrained vertex.
inline std::vector<int> basis_rows(const FluxLp& lp, const Basis& basis) {
  std::vector<int> var_of_row(static_cast<size_t>(lp.row_count()), -1);
  if (static_cast<int>(basis.vars.size()) != lp.row_count())
    throw InfeasibleBasisError("basis size does not match the row count");
  for (int j : basis.vars) {
    if (j < 0 || j >= lp.var_count()) throw InfeasibleBasisError("unknown basic variable");
    const int src = lp.vars[static_cast<size_t>(j)].src;
    if (src < 0 || lp.row_of_vertex[static_cast<size_t>(src)] < 0)
      throw InfeasibleBasisError("basic variable without edge linkage");
    const int row = lp.row_of_vertex[static_cast<size_t>(src)];
    if (var_of_row[static_cast<size_t>(row)] != -1)
      throw InfeasibleBasisError("two basic variables leave the same vertex");
    var_of_row[static_cast<size_t>(row)] = j;
  }
  return var_of_row;
}

struct FactoredBasis {
  std::vector<int> var_of_row;
  RatMatrix inverse;
  RatVector x_basic;  // indexed by row
};

inline FactoredBasis factor_basis(const FluxLp& lp, const Basis& basis) {
  FactoredBasis f;
  f.var_of_row = basis_rows(lp, basis);
  const size_t m = static_cast<size_t>(lp.row_count());
  RatMatrix b(m, RatVector(m, Rational(0)));
  for (size_t r = 0; r < m; ++r)
    for (const auto& [row, coef] : lp.vars[static_cast<size_t>(f.var_of_row[r])].column)
      b[static_cast<size_t>(row)][r] = coef;
  if (!invert(b, f.inverse)) throw InfeasibleBasisError("singular basis matrix");
  f.x_basic.assign(m, Rational(0));
  for (size_t i = 0; i < m; ++i)
    for (size_t k = 0; k < m; ++k) f.x_basic[i] += f.inverse[i][k] * lp.rhs[k];
  for (const Rational& x : f.x_basic)
    if (x < 0) throw InfeasibleBasisError("negative basic value");
  return f;
}

}  // namespace detail

/// Inverse of basis_of_policy. Throws InfeasibleBasisError when the basis is
/// structurally broken, singular, or has a negative basic value (which is
/// exactly the non-weak-unichain case).
inline Policy policy_of_basis(const FluxLp& lp, const Mdp& mdp, const Basis& basis) {
  const auto var_of_row = detail::basis_rows(lp, basis);
  detail::factor_basis(lp, basis);  // feasibility gate
  Policy policy(mdp);
  for (int v = 0; v < mdp.vertex_count(); ++v) {
    if (!mdp.is_agent(v) || v == mdp.sink()) continue;
    const LpVar& var =
        lp.vars[static_cast<size_t>(var_of_row[static_cast<size_t>(lp.row_of_vertex[static_cast<size_t>(v)])])];
    policy.set_target(mdp, v, var.dst);
  }
  return policy;
}

/// Whether the basis is feasible (equivalently: its policy is weak unichain).
inline bool basis_feasible(const FluxLp& lp, const Basis& basis) {
  try {
    detail::factor_basis(lp, basis);
    return true;
  } catch (const InfeasibleBasisError&) {
    return false;
  }
}

inline Rational lp_objective(const FluxLp& lp, const detail::FactoredBasis& f) {
  Rational obj = 0;
  for (size_t i = 0; i < f.x_basic.size(); ++i)
    obj += lp.vars[static_cast<size_t>(f.var_of_row[i])].obj * f.x_basic[i];
  return obj;
}

}  // namespace pivotlab
