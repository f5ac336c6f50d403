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

#include <cctype>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

#include "pivotlab/flux_lp.hpp"
#include "pivotlab/mdp_json.hpp"

namespace pivotlab {

// EXACT_JSON schema:
//   {"vars":[{"name":..., "obj":"num/den"}, ...],
//    "rows":[{"name":..., "rhs":"num/den", "coeffs":{"var":"num/den", ...}}, ...],
//    "sense":"max"}
// Round-trips bit-exactly. Edge linkage (Bland numbers, vertex ids) is not
// part of the schema; an imported LP supports export and inspection but not
// basis construction.

inline Json lp_to_exact_json(const FluxLp& lp) {
  Json out;
  out["vars"] = Json::array();
  for (const LpVar& var : lp.vars) {
    Json jv;
    jv["name"] = var.name;
    jv["obj"] = format_rational(var.obj);
    out["vars"].push_back(std::move(jv));
  }
  // Row-major view of the column-stored matrix, variables in declaration
  // order within each row.
  std::vector<std::vector<std::pair<int, Rational>>> rows(static_cast<size_t>(lp.row_count()));
  for (int j = 0; j < lp.var_count(); ++j)
    for (const auto& [row, coef] : lp.vars[static_cast<size_t>(j)].column)
      rows[static_cast<size_t>(row)].push_back({j, coef});
  out["rows"] = Json::array();
  for (int r = 0; r < lp.row_count(); ++r) {
    Json jr;
    jr["name"] = lp.row_names[static_cast<size_t>(r)];
    jr["rhs"] = format_rational(lp.rhs[static_cast<size_t>(r)]);
    Json coeffs = Json::object();
    for (const auto& [j, coef] : rows[static_cast<size_t>(r)])
      coeffs[lp.vars[static_cast<size_t>(j)].name] = format_rational(coef);
    jr["coeffs"] = std::move(coeffs);
    out["rows"].push_back(std::move(jr));
  }
  out["sense"] = "max";
  return out;
}

inline FluxLp lp_from_exact_json(const Json& in) {
  if (in.at("sense").get<std::string>() != "max")
    throw std::invalid_argument("only maximization LPs are supported");
  FluxLp lp;
  std::map<std::string, int> var_index;
  for (const Json& jv : in.at("vars")) {
    LpVar var;
    var.name = jv.at("name").get<std::string>();
    var.obj = parse_rational(jv.at("obj").get<std::string>());
    var_index[var.name] = static_cast<int>(lp.vars.size());
    lp.vars.push_back(std::move(var));
  }
  for (const Json& jr : in.at("rows")) {
    const int row = static_cast<int>(lp.row_names.size());
    lp.row_names.push_back(jr.at("name").get<std::string>());
    lp.rhs.push_back(parse_rational(jr.at("rhs").get<std::string>()));
    for (const auto& [name, value] : jr.at("coeffs").items())
      lp.vars[static_cast<size_t>(var_index.at(name))].column.push_back(
          {row, parse_rational(value.get<std::string>())});
  }
  return lp;
}

namespace detail {

inline std::string sanitize_lp_name(const std::string& name) {
  std::string out;
  for (size_t i = 0; i < name.size(); ++i) {
    char c = name[i];
    if (c == '-' && i + 1 < name.size() && name[i + 1] == '>') {
      out += "_to_";
      ++i;
    } else if (std::isalnum(static_cast<unsigned char>(c))) {
      out += c;
    } else if (c == '(' || c == ')' || c == '.') {
      out += '_';
    }
  }
  return out;
}

inline std::string lossy_number(const Rational& r) {
  auto digits = decimal_digit_count(r);
  if (digits.has_value() && *digits <= 40) return to_exact_decimal(r);
  std::ostringstream out;
  out.precision(17);
  out << to_double(r);
  return out.str();
}

}  // namespace detail

/// Conventional LP text with decimal coefficients: objective, constraints,
/// then one bound declaration per variable. Coefficients whose exact decimal
/// expansion needs more than 40 digits are approximated and flagged by a
/// banner, since gadget probabilities do not fit decimal notation.
inline void write_lossy_lp_text(std::ostream& out, const FluxLp& lp) {
  bool lossy = false;
  auto check = [&lossy](const Rational& r) {
    auto digits = decimal_digit_count(r);
    if (!digits.has_value() || *digits > 40) lossy = true;
  };
  for (const LpVar& var : lp.vars) {
    check(var.obj);
    for (const auto& [row, coef] : var.column) check(coef);
  }
  for (const Rational& r : lp.rhs) check(r);

  out << "\\ flux LP (text form)\n";
  if (lossy) {
    out << "\\ *** LOSSY EXPORT ***\n";
    out << "\\ *** some exact coefficients exceed 40 decimal digits and were\n";
    out << "\\ *** replaced by floating-point approximations; use the JSON\n";
    out << "\\ *** export for exact values\n";
  }
  out << "Maximize\n obj:";
  bool first = true;
  for (const LpVar& var : lp.vars) {
    if (var.obj == 0) continue;
    const std::string coef = detail::lossy_number(abs(var.obj));
    out << (var.obj < 0 ? " - " : (first ? " " : " + ")) << coef << " "
        << detail::sanitize_lp_name(var.name);
    first = false;
  }
  if (first) out << " 0";
  out << "\nSubject To\n";
  std::vector<std::vector<std::pair<int, Rational>>> rows(static_cast<size_t>(lp.row_count()));
  for (int j = 0; j < lp.var_count(); ++j)
    for (const auto& [row, coef] : lp.vars[static_cast<size_t>(j)].column)
      rows[static_cast<size_t>(row)].push_back({j, coef});
  for (int r = 0; r < lp.row_count(); ++r) {
    out << " " << detail::sanitize_lp_name(lp.row_names[static_cast<size_t>(r)]) << ":";
    bool row_first = true;
    for (const auto& [j, coef] : rows[static_cast<size_t>(r)]) {
      out << (coef < 0 ? " - " : (row_first ? " " : " + ")) << detail::lossy_number(abs(coef))
          << " " << detail::sanitize_lp_name(lp.vars[static_cast<size_t>(j)].name);
      row_first = false;
    }
    out << " = " << detail::lossy_number(lp.rhs[static_cast<size_t>(r)]) << "\n";
  }
  out << "Bounds\n";
  for (const LpVar& var : lp.vars)
    out << " 0 <= " << detail::sanitize_lp_name(var.name) << "\n";
  out << "End\n";
}

inline std::string lossy_lp_text(const FluxLp& lp) {
  std::ostringstream out;
  write_lossy_lp_text(out, lp);
  return out.str();
}

}  // namespace pivotlab
