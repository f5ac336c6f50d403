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

// Command-line front door: generate instances, run policy iteration, sweep
// switch counts, verify the structural properties, and export/run/compare
// the flux LP.
//
// Exit codes: 0 success, 2 property failure, 3 invariant abort, 4 usage.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pivotlab/engine.hpp"
#include "pivotlab/lp_check.hpp"
#include "pivotlab/lp_io.hpp"
#include "pivotlab/mdp_json.hpp"
#include "pivotlab/properties.hpp"
#include "pivotlab/trace_io.hpp"

namespace {

using namespace pivotlab;

constexpr int kExitOk = 0;
constexpr int kExitPropertyFailure = 2;
constexpr int kExitInvariantAbort = 3;
constexpr int kExitUsage = 4;

struct Instance {
  Mdp mdp;
  Mdp base;          // equals mdp for the B family
  GadgetMap gadgets;  // empty for the B family
  bool is_d = false;
};

std::map<std::string, Rational> load_probability_overrides(const std::string& path) {
  std::map<std::string, Rational> overrides;
  if (path.empty()) return overrides;
  const Json j = read_json_file(path);
  for (const auto& [key, value] : j.items()) overrides[key] = parse_rational(value.get<std::string>());
  return overrides;
}

Instance make_instance(const std::string& family, int n, const std::string& p_override_path) {
  if (family == "B") {
    if (!p_override_path.empty())
      throw CLI::ValidationError("--p-override only applies to the D family");
    Mdp b = build_B(n);
    return Instance{b, build_B(n), {}, false};
  }
  if (family == "D") {
    BuildDOptions options;
    options.probability_overrides = load_probability_overrides(p_override_path);
    auto [d, gadgets] = build_D(n, options);
    return Instance{std::move(d), build_B(n), std::move(gadgets), true};
  }
  throw CLI::ValidationError("--family must be B or D");
}

Policy initial_policy(const Instance& instance) {
  const Policy base = canonical_policy(instance.base, 0);
  if (!instance.is_d) return base;
  return twin_policy(instance.mdp, instance.gadgets, instance.base, base);
}

PivotRuleSpec parse_rule(const std::string& text) {
  if (text == "bland") return PivotRuleSpec::bland();
  if (text == "dantzig") return PivotRuleSpec::dantzig();
  if (text == "li") return PivotRuleSpec::largest_increase();
  if (text.rfind("mix:", 0) == 0)
    return PivotRuleSpec::mix_seeded(std::stoull(text.substr(4)));
  if (text.rfind("sched:", 0) == 0) {
    std::ifstream in(text.substr(6));
    if (!in) throw CLI::ValidationError("cannot open schedule file " + text.substr(6));
    std::vector<RuleKind> schedule;
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      if (line == "bland") schedule.push_back(RuleKind::Bland);
      else if (line == "dantzig") schedule.push_back(RuleKind::Dantzig);
      else if (line == "li") schedule.push_back(RuleKind::LargestIncrease);
      else throw CLI::ValidationError("unknown rule '" + line + "' in schedule");
    }
    if (schedule.empty()) throw CLI::ValidationError("empty schedule file");
    return PivotRuleSpec::mix_scheduled(std::move(schedule));
  }
  throw CLI::ValidationError("--rule must be bland|dantzig|li|mix:<seed>|sched:<file>");
}

int canonical_policies_visited(const Instance& instance, const Trace& trace,
                               const Policy& initial) {
  std::set<std::int64_t> seen;
  auto record = [&](const Policy& policy) {
    if (instance.is_d) {
      auto base = project_twin(instance.mdp, instance.gadgets, instance.base, policy);
      if (base.has_value())
        if (auto x = recognize_canonical(instance.base, *base)) seen.insert(*x);
    } else if (auto x = recognize_canonical(instance.mdp, policy)) {
      seen.insert(*x);
    }
  };
  Policy policy = initial;
  record(policy);
  for (const TraceStep& step : trace.steps) {
    policy = apply_switch(instance.mdp, policy, instance.mdp.edge_at(step.src, step.dst));
    record(policy);
  }
  return static_cast<int>(seen.size());
}

int cmd_gen(const std::string& family, int n, const std::string& out,
            const std::string& p_override_path) {
  const Instance instance = make_instance(family, n, p_override_path);
  write_file_atomic(out, dump_json(mdp_to_json(instance.mdp)));
  if (instance.is_d) {
    const std::string gadget_path = out + ".gadgets.json";
    write_file_atomic(gadget_path, dump_json(gadgets_to_json(instance.mdp, instance.gadgets)));
    std::cout << "wrote " << out << " and " << gadget_path << "\n";
  } else {
    std::cout << "wrote " << out << "\n";
  }
  return kExitOk;
}

int cmd_run(const std::string& family, int n, const std::string& rule_text,
            std::int64_t max_iters, const std::string& out, const std::string& p_override_path) {
  const Instance instance = make_instance(family, n, p_override_path);
  const PivotRuleSpec rule = parse_rule(rule_text);
  const Policy initial = initial_policy(instance);

  RunOptions options;
  options.max_iters = max_iters > 0 ? max_iters : default_max_iters(n);
  const Trace trace = run(instance.mdp, initial, rule, options);

  if (!out.empty()) write_file_atomic(out, trace_jsonl_string(instance.mdp, trace));

  const ValueVector terminal_values = solve_values(instance.mdp, trace.terminal);
  const Policy optimal = instance.is_d
                             ? optimal_policy_D(instance.mdp, instance.gadgets, instance.base)
                             : optimal_policy_B(instance.mdp);
  Json summary;
  summary["total_switches"] = trace.total_switches;
  summary["terminal_optimal"] = trace.terminal == optimal;
  summary["canonical_policies_visited"] = canonical_policies_visited(instance, trace, initial);
  summary["terminal_value_sum"] = format_rational(trace.terminal_value_sum);
  // Echo the full configuration; together with the code version it pins the
  // trace byte for byte.
  Json config;
  config["family"] = family;
  config["n"] = n;
  config["rule"] = rule_text;
  config["max_iters"] = options.max_iters;
  if (!p_override_path.empty()) config["p_override"] = p_override_path;
  summary["config"] = std::move(config);
  std::cout << summary.dump(2) << "\n";
  return kExitOk;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

std::pair<int, int> parse_range(const std::string& text) {
  auto dots = text.find("..");
  if (dots == std::string::npos) {
    int n = std::stoi(text);
    return {n, n};
  }
  return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
}

int cmd_sweep(const std::string& families, const std::string& rules, const std::string& n_range,
              const std::string& seeds, const std::string& csv_out) {
  const auto family_list = split_list(families);
  const auto rule_list = split_list(rules);
  const auto seed_list = split_list(seeds.empty() ? "0" : seeds);
  const auto [n_lo, n_hi] = parse_range(n_range);
  if (family_list.empty() || rule_list.empty() || n_lo < 1 || n_hi < n_lo)
    throw CLI::ValidationError("sweep needs non-empty families, rules and a valid n range");

  // Rows stream out and flush per cell, so partial results survive a failure.
  std::ofstream file;
  if (!csv_out.empty()) {
    file.open(csv_out, std::ios::binary | std::ios::trunc);
    if (!file) throw std::runtime_error("cannot open " + csv_out);
  }
  std::ostream& csv = csv_out.empty() ? std::cout : file;
  csv << "family,n,rule,seed,total_switches,runtime_ms,ties_seen,doubling_ratio,status\n";
  bool any_failure = false;
  for (const std::string& family : family_list) {
    for (const std::string& rule_text : rule_list) {
      const bool seeded_mix = rule_text == "mix";
      for (const std::string& seed_text : seeded_mix ? seed_list : std::vector<std::string>{"0"}) {
        std::int64_t previous_total = -1;
        for (int n = n_lo; n <= n_hi; ++n) {
          const std::string effective_rule =
              seeded_mix ? "mix:" + seed_text : rule_text;
          std::string status = "ok";
          std::int64_t total = -1, ties = 0;
          long long ms = 0;
          try {
            const Instance instance = make_instance(family, n, "");
            const PivotRuleSpec rule = parse_rule(effective_rule);
            RunOptions options;
            options.max_iters = default_max_iters(n) * 4;
            const auto start = std::chrono::steady_clock::now();
            const Trace trace = run(instance.mdp, initial_policy(instance), rule, options);
            ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                     std::chrono::steady_clock::now() - start)
                     .count();
            total = trace.total_switches;
            for (const TraceStep& step : trace.steps) ties += step.tie_count;
          } catch (const std::exception& error) {
            status = std::string("error: ") + error.what();
            any_failure = true;
          }
          csv << family << "," << n << "," << effective_rule << "," << seed_text << ",";
          if (total >= 0) csv << total;
          csv << "," << ms << "," << ties << ",";
          if (total >= 0 && previous_total > 0) {
            csv << format_rational(Rational(total, previous_total));
          }
          csv << "," << status << "\n";
          csv.flush();
          previous_total = total;
        }
      }
    }
  }
  if (!csv_out.empty()) std::cout << "wrote " << csv_out << "\n";
  return any_failure ? kExitInvariantAbort : kExitOk;
}

int cmd_verify(int n_max) {
  const auto results = run_verification(n_max);
  bool all_pass = true;
  for (const PropertyResult& result : results) {
    std::cout << (result.pass ? "PASS" : "FAIL") << "  n=" << result.n << "  " << result.name;
    if (!result.detail.empty()) std::cout << "  (" << result.detail << ")";
    std::cout << "\n";
    all_pass = all_pass && result.pass;
  }
  std::cout << (all_pass ? "all properties hold" : "property failures detected") << "\n";
  return all_pass ? kExitOk : kExitPropertyFailure;
}

int cmd_lp(const std::string& action, const std::string& family, int n,
           const std::string& rule_text, const std::string& in_path, const std::string& out,
           std::int64_t max_pivots, const std::string& start) {
  FluxLp lp;
  Instance instance;
  bool have_instance = false;
  if (!in_path.empty()) {
    instance.mdp = mdp_from_json(read_json_file(in_path));
    lp = build_flux_lp(instance.mdp);
  } else {
    instance = make_instance(family, n, "");
    have_instance = true;
    lp = build_flux_lp(instance.mdp);
  }

  if (action == "export") {
    if (out.empty()) throw CLI::ValidationError("lp export needs --out");
    write_file_atomic(out + ".json", dump_json(lp_to_exact_json(lp)));
    write_file_atomic(out + ".lp", lossy_lp_text(lp));
    std::cout << "wrote " << out << ".json and " << out << ".lp\n";
    return kExitOk;
  }
  if (!have_instance)
    throw CLI::ValidationError("lp " + action + " needs --family/--n (a start basis)");

  const PivotRuleSpec rule = parse_rule(rule_text);
  Policy initial = initial_policy(instance);
  if (start == "optimal") {
    initial = instance.is_d ? optimal_policy_D(instance.mdp, instance.gadgets, instance.base)
                            : optimal_policy_B(instance.mdp);
  } else if (start != "zero") {
    throw CLI::ValidationError("--start must be zero or optimal");
  }
  const std::int64_t cap = max_pivots > 0 ? max_pivots : default_max_iters(n) * 4;

  if (action == "run") {
    const SimplexTrace trace = simplex_run(lp, basis_of_policy(lp, instance.mdp, initial), rule,
                                           SimplexOptions{cap, nullptr});
    Json summary;
    summary["total_pivots"] = trace.total_pivots;
    summary["objective"] = format_rational(trace.objective);
    std::cout << summary.dump(2) << "\n";
    if (!out.empty()) {
      std::ostringstream lines;
      for (const PivotRecord& pivot : trace.pivots) {
        Json jp;
        jp["pivot"] = pivot.pivot;
        jp["entering"] = lp.vars[static_cast<size_t>(pivot.entering)].name;
        jp["leaving"] = lp.vars[static_cast<size_t>(pivot.leaving)].name;
        jp["z"] = format_rational(pivot.reduced_cost);
        jp["objective_after"] = format_rational(pivot.objective_after);
        jp["ties"] = pivot.tie_count;
        lines << jp.dump() << "\n";
      }
      write_file_atomic(out, lines.str());
    }
    return kExitOk;
  }
  if (action == "compare") {
    const CoupledReport report = run_coupled(instance.mdp, initial, rule, cap);
    Json summary;
    summary["switches"] = report.policy_trace.total_switches;
    summary["pivots"] = report.simplex_trace.total_pivots;
    summary["pivot_count_matches"] = report.pivot_count_matches;
    summary["entering_sequence_matches"] = report.entering_sequence_matches;
    summary["reduced_costs_match"] = report.reduced_costs_match;
    summary["objective_matches"] = report.objective_matches;
    if (!report.detail.empty()) summary["detail"] = report.detail;
    std::cout << summary.dump(2) << "\n";
    const bool ok = report.pivot_count_matches && report.entering_sequence_matches &&
                    report.reduced_costs_match && report.objective_matches;
    return ok ? kExitOk : kExitPropertyFailure;
  }
  throw CLI::ValidationError("lp action must be export|run|compare");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact policy-iteration and simplex laboratory"};
  app.require_subcommand(1);

  std::string family = "B", rule = "bland", out, csv, p_override, in_path;
  std::string families = "B", rules = "bland", n_range = "1..4", seeds;
  int n = 1, n_max = 4;
  std::int64_t max_iters = 0;

  CLI::App* gen = app.add_subcommand("gen", "generate an instance as JSON");
  gen->add_option("--family", family, "B or D")->required();
  gen->add_option("--n", n, "size parameter")->required()->check(CLI::PositiveNumber);
  gen->add_option("--out", out, "output file")->required();
  gen->add_option("--p-override", p_override, "JSON file of per-vertex probabilities");

  CLI::App* run_cmd = app.add_subcommand("run", "run policy iteration, write a JSONL trace");
  run_cmd->add_option("--family", family, "B or D")->required();
  run_cmd->add_option("--n", n, "size parameter")->required()->check(CLI::PositiveNumber);
  run_cmd->add_option("--rule", rule, "bland|dantzig|li|mix:<seed>|sched:<file>");
  run_cmd->add_option("--max-iters", max_iters, "iteration cap (default 2^(n+6))");
  run_cmd->add_option("--out", out, "trace output file (JSONL)");
  run_cmd->add_option("--p-override", p_override, "JSON file of per-vertex probabilities");

  CLI::App* sweep = app.add_subcommand("sweep", "switch-count sweep to CSV");
  sweep->add_option("--family", families, "comma list, e.g. B,D")->required();
  sweep->add_option("--rule", rules, "comma list; bare 'mix' expands over --seeds")->required();
  sweep->add_option("--n", n_range, "range, e.g. 1..6")->required();
  sweep->add_option("--seeds", seeds, "comma list of seeds for bare 'mix'");
  sweep->add_option("--csv", csv, "CSV output file (stdout when omitted)");

  CLI::App* verify = app.add_subcommand("verify", "check the structural properties");
  verify->add_option("--n-max", n_max, "largest size parameter")->required()->check(CLI::PositiveNumber);

  CLI::App* lp = app.add_subcommand("lp", "flux LP: export, run simplex, or compare engines");
  std::string lp_action, lp_start = "zero";
  lp->add_option("action", lp_action, "export|run|compare")->required();
  lp->add_option("--family", family, "B or D");
  lp->add_option("--n", n, "size parameter")->check(CLI::PositiveNumber);
  lp->add_option("--rule", rule, "pivot rule for run/compare");
  lp->add_option("--in", in_path, "MDP JSON input (export only)");
  lp->add_option("--out", out, "output path or prefix");
  lp->add_option("--max-iters", max_iters, "pivot cap");
  lp->add_option("--start", lp_start, "start basis: zero (default) or optimal");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& help) {
    app.exit(help);
    return kExitOk;
  } catch (const CLI::ParseError& error) {
    app.exit(error);
    return kExitUsage;
  }

  try {
    if (gen->parsed()) return cmd_gen(family, n, out, p_override);
    if (run_cmd->parsed()) return cmd_run(family, n, rule, max_iters, out, p_override);
    if (sweep->parsed()) return cmd_sweep(families, rules, n_range, seeds, csv);
    if (verify->parsed()) return cmd_verify(n_max);
    if (lp->parsed()) return cmd_lp(lp_action, family, n, rule, in_path, out, max_iters, lp_start);
  } catch (const CLI::ValidationError& error) {
    std::cerr << "usage error: " << error.what() << "\n";
    return kExitUsage;
  } catch (const InvariantViolationError& error) {
    std::cerr << "invariant violation: " << error.what() << "\n";
    return kExitInvariantAbort;
  } catch (const DegeneratePivotError& error) {
    std::cerr << "degenerate pivot: " << error.what() << "\n";
    return kExitInvariantAbort;
  } catch (const NotWeakUnichainError& error) {
    std::cerr << "not weak unichain: " << error.what() << "\n";
    return kExitInvariantAbort;
  } catch (const IterationCapError& error) {
    std::cerr << "iteration cap: " << error.what() << "\n";
    return kExitInvariantAbort;
  } catch (const PivotCapError& error) {
    std::cerr << "pivot cap: " << error.what() << "\n";
    return kExitInvariantAbort;
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 1;
  }
  return kExitOk;
}
