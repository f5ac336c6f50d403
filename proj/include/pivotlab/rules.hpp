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
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "pivotlab/bellman.hpp"
#include "pivotlab/errors.hpp"
#include "pivotlab/mdp.hpp"

namespace pivotlab {

enum class RuleKind { Bland, Dantzig, LargestIncrease, Mix };

inline std::string to_string(RuleKind kind) {
  switch (kind) {
    case RuleKind::Bland: return "bland";
    case RuleKind::Dantzig: return "dantzig";
    case RuleKind::LargestIncrease: return "li";
    case RuleKind::Mix: return "mix";
  }
  return "?";
}

/// Switch-selection discipline. Mix resolves a base rule per iteration,
/// either from an explicit schedule (cycled) or by a seeded uniform draw
/// from the pool; both are reproducible.
struct PivotRuleSpec {
  RuleKind kind = RuleKind::Bland;
  std::vector<RuleKind> mix_schedule;
  std::optional<std::uint64_t> mix_seed;
  std::vector<RuleKind> mix_pool{RuleKind::Bland, RuleKind::Dantzig, RuleKind::LargestIncrease};

  static PivotRuleSpec bland() { return {RuleKind::Bland, {}, std::nullopt, {}}; }
  static PivotRuleSpec dantzig() { return {RuleKind::Dantzig, {}, std::nullopt, {}}; }
  static PivotRuleSpec largest_increase() { return {RuleKind::LargestIncrease, {}, std::nullopt, {}}; }
  static PivotRuleSpec mix_seeded(std::uint64_t seed) {
    PivotRuleSpec spec;
    spec.kind = RuleKind::Mix;
    spec.mix_seed = seed;
    return spec;
  }
  static PivotRuleSpec mix_scheduled(std::vector<RuleKind> schedule) {
    PivotRuleSpec spec;
    spec.kind = RuleKind::Mix;
    spec.mix_schedule = std::move(schedule);
    return spec;
  }

  std::string display() const {
    if (kind != RuleKind::Mix) return to_string(kind);
    if (!mix_schedule.empty()) return "sched";
    return "mix:" + std::to_string(mix_seed.value_or(0));
  }
};

/// Per-iteration resolver of Mix specs.
class RuleSequencer {
 public:
  explicit RuleSequencer(const PivotRuleSpec& spec)
      : spec_(spec), rng_(spec.mix_seed.value_or(0)) {}

  RuleKind next(std::int64_t iteration) {
    if (spec_.kind != RuleKind::Mix) return spec_.kind;
    if (!spec_.mix_schedule.empty())
      return spec_.mix_schedule[static_cast<size_t>((iteration - 1) %
                                                    static_cast<std::int64_t>(spec_.mix_schedule.size()))];
    std::uniform_int_distribution<size_t> pick(0, spec_.mix_pool.size() - 1);
    return spec_.mix_pool[pick(rng_)];
  }

 private:
  PivotRuleSpec spec_;
  std::mt19937_64 rng_;
};

/// Outcome of one selection: the chosen switch and how many other candidates
/// tied with it under the rule's score.
struct Selection {
  ImprovingSwitch chosen;
  int tie_count = 0;
};

/// Smallest edge number wins.
inline Selection select_bland(const std::vector<ImprovingSwitch>& candidates) {
  if (candidates.empty()) throw std::invalid_argument("no candidates");
  const ImprovingSwitch* best = nullptr;
  for (const ImprovingSwitch& c : candidates) {
    if (!c.edge.bland.has_value())
      throw MissingNumberError("improving switch without an edge number");
    if (best == nullptr || *c.edge.bland < *best->edge.bland) best = &c;
  }
  return {*best, 0};
}

/// Maximal reduced cost wins; ties go to the smallest edge number and are
/// counted for the trace telemetry.
inline Selection select_dantzig(const std::vector<ImprovingSwitch>& candidates) {
  if (candidates.empty()) throw std::invalid_argument("no candidates");
  const ImprovingSwitch* best = nullptr;
  int ties = 0;
  for (const ImprovingSwitch& c : candidates) {
    if (best == nullptr) {
      best = &c;
      continue;
    }
    if (c.z > best->z) {
      best = &c;
      ties = 0;
    } else if (c.z == best->z) {
      ++ties;
      if (c.edge.bland.has_value() && best->edge.bland.has_value() &&
          *c.edge.bland < *best->edge.bland)
        best = &c;
    }
  }
  return {*best, ties};
}

/// Maximal value sum after the switch wins, evaluated by a full exact
/// re-solve per candidate; ties go to the smallest edge number.
inline Selection select_largest_increase(const Mdp& mdp, const Policy& policy,
                                         const std::vector<ImprovingSwitch>& candidates) {
  if (candidates.empty()) throw std::invalid_argument("no candidates");
  const ImprovingSwitch* best = nullptr;
  Rational best_sum;
  int ties = 0;
  for (const ImprovingSwitch& c : candidates) {
    const Policy next = apply_switch(mdp, policy, c.edge);
    Rational sum = value_sum(mdp, solve_values(mdp, next));
    if (best == nullptr || sum > best_sum) {
      best = &c;
      best_sum = std::move(sum);
      ties = 0;
    } else if (sum == best_sum) {
      ++ties;
      if (c.edge.bland.has_value() && best->edge.bland.has_value() &&
          *c.edge.bland < *best->edge.bland)
        best = &c;
    }
  }
  return {*best, ties};
}

}  // namespace pivotlab
