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

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pivotlab/bits.hpp"
#include "pivotlab/build_b.hpp"
#include "pivotlab/errors.hpp"
#include "pivotlab/mdp.hpp"
#include "pivotlab/names.hpp"

namespace pivotlab {

namespace detail {

// Conditions on the distinguished policy encoding the counter state x, one
// activation per switchable vertex. The collector detects conflicting
// requirements and reports the clause that produced each activation.
struct CanonicalClauses {
  int n;
  std::int64_t x;
  std::vector<std::pair<EdgeName, std::string>> activations;

  void activate(EdgeName name, std::string clause) { activations.push_back({name, std::move(clause)}); }

  void collect() {
    if (x == 0) {
      activate({EdgeKind::Travel, 1}, "x=0");
      for (int i = 1; i <= n; ++i) {
        activate({EdgeKind::Skip, i}, "x=0");
        activate({EdgeKind::Leave, i}, "x=0");
      }
      return;
    }
    activate({EdgeKind::Travel, bit_ell1(x)}, "<1>");
    const int msb = bit_m(x);
    activate({EdgeKind::Leave, msb}, "<2>");
    for (int i = msb + 1; i <= n; ++i) {
      activate({EdgeKind::Skip, i}, "<2>");
      activate({EdgeKind::Leave, i}, "<2>");
    }
    for (int i = 1; i <= n; ++i) {
      if (!bit_at(x, i)) continue;
      activate({EdgeKind::Enter, i}, "<a>");
      if (i == 2) {
        activate({EdgeKind::Leave, 1}, "<b>");
        if (!bit_at(x, 1)) activate({EdgeKind::Skip, 1}, "<b>");
      }
      if (i >= 3 && bit_at(x, i - 1)) activate({EdgeKind::Leave, i - 1}, "<c>");
      if (i >= 3 && !bit_at(x, i - 1)) {
        activate({EdgeKind::Stay, i - 1}, "<d1>");
        activate({EdgeKind::Skip, i - 1}, "<d1>");
        activate({EdgeKind::Leave, i - 2}, "<d1>");
        const int l = bit_L(i, x);
        if (l < i - 2) {
          for (int j = l + 1; j <= i - 2; ++j) {
            activate({EdgeKind::Board, j}, "<d2>");
            activate({EdgeKind::Stay, j - 1}, "<d2>");
          }
        }
        if (l == 1 && !bit_at(x, 1)) activate({EdgeKind::Board, 1}, "<d2>");
      }
    }
  }
};

}  // namespace detail

/// The unique policy satisfying the counter-state conditions for x. Throws
/// InvariantViolationError if two clauses ever disagree (they never do).
inline Policy canonical_policy(const Mdp& b, std::int64_t x) {
  const BTopology topo = BTopology::from(b);
  if (x < 0 || x > (std::int64_t(1) << topo.n) - 1)
    throw DomainError("canonical policy index out of range");

  detail::CanonicalClauses clauses{topo.n, x, {}};
  clauses.collect();

  std::map<int, std::pair<int, std::string>> chosen;  // vertex -> (target, clause)
  for (const auto& [name, clause] : clauses.activations) {
    auto [src, dst] = topo.edge_of(name);
    auto [it, inserted] = chosen.emplace(src, std::pair(dst, clause));
    if (!inserted && it->second.first != dst)
      throw InvariantViolationError("conflicting clauses " + it->second.second + " and " + clause +
                                    " at vertex " + vertex_name(b, src));
  }
  Policy policy(b);
  for (int v = 0; v < b.vertex_count(); ++v) {
    if (!b.is_agent(v)) continue;
    auto it = chosen.find(v);
    if (b.out_degree(v) < 2) {
      // A clause can still mention a forced vertex (travel(1) when n = 1);
      // it must agree with the only edge.
      if (it != chosen.end() && it->second.first != policy.target(b, v))
        throw InvariantViolationError("clause " + it->second.second +
                                      " contradicts the forced edge at " + vertex_name(b, v));
      continue;
    }
    if (it == chosen.end())
      throw InvariantViolationError("no clause covers vertex " + vertex_name(b, v));
    policy.set_target(b, v, it->second.first);
  }
  return policy;
}

/// Clause-by-clause check that `policy` satisfies the conditions for x.
/// Returns the first violated clause, or nullopt when all hold.
inline std::optional<std::string> violated_canonical_clause(const Mdp& b, const Policy& policy,
                                                            std::int64_t x) {
  const BTopology topo = BTopology::from(b);
  detail::CanonicalClauses clauses{topo.n, x, {}};
  clauses.collect();
  for (const auto& [name, clause] : clauses.activations) {
    auto [src, dst] = topo.edge_of(name);
    if (policy.target(b, src) != dst) return clause + " requires " + to_string(name);
  }
  return std::nullopt;
}

/// Inverse of canonical_policy: the x whose canonical policy equals `policy`,
/// read off the entered levels, or nullopt when the policy is not canonical.
inline std::optional<std::int64_t> recognize_canonical(const Mdp& b, const Policy& policy) {
  const BTopology topo = BTopology::from(b);
  std::int64_t x = 0;
  for (int i = 1; i <= topo.n; ++i)
    if (policy.target(b, topo.a_vertex(i)) == topo.b_vertex(i)) x |= std::int64_t(1) << (i - 1);
  if (canonical_policy(b, x) == policy) return x;
  return std::nullopt;
}

/// The switch sequence turning the canonical policy for an odd x into the
/// next one: conditional leave(l) and stay(l-1), then enter(l) and travel(l),
/// board(1..l-2) ascending, skip(l-1), stay(l-3..1) descending, and a final
/// leave(1) when l = 2, where l is the least unset bit of x.
inline std::vector<EdgeName> canonical_phases(int n, std::int64_t x) {
  if (x < 1 || x > (std::int64_t(1) << n) - 3 || x % 2 == 0)
    throw DomainError("canonical phases need odd x in [2^n-3]");
  const int l = bit_ell0(x);
  std::vector<EdgeName> out;
  if (bit_at(x, l + 1)) out.push_back({EdgeKind::Leave, l});
  if (bit_at(x, l + 1) || l > bit_m(x)) out.push_back({EdgeKind::Stay, l - 1});
  out.push_back({EdgeKind::Enter, l});
  out.push_back({EdgeKind::Travel, l});
  if (l >= 3)
    for (int j = 1; j <= l - 2; ++j) out.push_back({EdgeKind::Board, j});
  out.push_back({EdgeKind::Skip, l - 1});
  if (l >= 4)
    for (int j = l - 3; j >= 1; --j) out.push_back({EdgeKind::Stay, j});
  if (l == 2) out.push_back({EdgeKind::Leave, 1});
  return out;
}

/// The full predicted switch sequence of the smallest-number rule from the
/// zero policy up to the last canonical policy: enter(1) alone for x = 0,
/// enter(1) then travel(1) for even x >= 2, the canonical phases for odd x.
/// The tail from there to the optimum is run, not predicted.
inline std::vector<EdgeName> predicted_bland_trace(int n) {
  if (n < 1) throw DomainError("predicted trace requires n >= 1");
  std::vector<EdgeName> out;
  for (std::int64_t x = 0; x <= (std::int64_t(1) << n) - 2; ++x) {
    if (x == 0) {
      out.push_back({EdgeKind::Enter, 1});
    } else if (x % 2 == 0) {
      out.push_back({EdgeKind::Enter, 1});
      out.push_back({EdgeKind::Travel, 1});
    } else {
      auto phases = canonical_phases(n, x);
      out.insert(out.end(), phases.begin(), phases.end());
    }
  }
  return out;
}

/// The optimal policy: travel(1), stay(n), every enter(i), leave(1..n-1).
inline Policy optimal_policy_B(const Mdp& b) {
  const BTopology topo = BTopology::from(b);
  Policy policy(b);
  policy.set_target(b, topo.t, topo.a_vertex(1));
  policy.set_target(b, topo.b_vertex(topo.n), topo.b_vertex(topo.n + 1));
  for (int i = 1; i <= topo.n; ++i) policy.set_target(b, topo.a_vertex(i), topo.b_vertex(i));
  for (int j = 1; j + 1 <= topo.n; ++j) policy.set_target(b, topo.b_vertex(j), topo.a_vertex(j + 1));
  return policy;
}

}  // namespace pivotlab
