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

#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>

#include "pivotlab/engine.hpp"
#include "pivotlab/mdp_json.hpp"
#include "pivotlab/names.hpp"

namespace pivotlab {

inline std::string policy_hash_hex(const Mdp& mdp, const Policy& policy) {
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << hash_policy(mdp, policy);
  return out.str();
}

/// JSON-lines trace: one step object per line, then a summary object with
/// the switch total and the terminal-policy hash.
inline void write_trace_jsonl(std::ostream& out, const Mdp& mdp, const Trace& trace) {
  for (const TraceStep& step : trace.steps) {
    Json js;
    js["iteration"] = step.iteration;
    js["edge"] = edge_display_name(mdp, step.src, step.dst);
    js["z"] = format_rational(step.reduced_cost);
    js["value_sum_after"] = format_rational(step.value_sum_after);
    js["improving"] = step.improving_count;
    js["ties"] = step.tie_count;
    js["rule"] = to_string(step.rule_used);
    out << js.dump() << "\n";
  }
  Json summary;
  summary["total_switches"] = trace.total_switches;
  summary["terminal_policy_hash"] = policy_hash_hex(mdp, trace.terminal);
  summary["terminal_value_sum"] = format_rational(trace.terminal_value_sum);
  out << summary.dump() << "\n";
}

inline std::string trace_jsonl_string(const Mdp& mdp, const Trace& trace) {
  std::ostringstream out;
  write_trace_jsonl(out, mdp, trace);
  return out.str();
}

}  // namespace pivotlab
