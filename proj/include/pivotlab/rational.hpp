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

#include <boost/multiprecision/gmp.hpp>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pivotlab {

// Exact arithmetic everywhere. Rationals stay in lowest terms with a positive
// denominator; GMP canonicalizes on construction from (num, den) and after
// every arithmetic operation.
using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

/// 2^e for any (possibly negative) exponent.
inline Rational pow2(long e) {
  BigInt num = 1;
  if (e >= 0) {
    return Rational(BigInt(1) << static_cast<unsigned>(e), BigInt(1));
  }
  return Rational(BigInt(1), BigInt(1) << static_cast<unsigned>(-e));
}

/// Serializes as "num/den" with the denominator omitted when it is 1.
inline std::string format_rational(const Rational& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) {
    s += "/";
    s += denominator(r).str();
  }
  return s;
}

/// Parses "num" or "num/den" (optional leading '-'); canonicalizes.
inline Rational parse_rational(std::string_view text) {
  auto bad = [&] { throw std::invalid_argument("malformed rational: '" + std::string(text) + "'"); };
  auto is_digits = [](std::string_view t) {
    if (t.empty()) return false;
    for (char c : t)
      if (c < '0' || c > '9') return false;
    return true;
  };
  std::string_view num = text, den = "1";
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    num = text.substr(0, slash);
    den = text.substr(slash + 1);
  }
  std::string_view num_digits = num;
  if (!num_digits.empty() && num_digits.front() == '-') num_digits.remove_prefix(1);
  // The sign lives on the numerator; denominators are plain positive digits.
  if (!is_digits(num_digits) || !is_digits(den)) bad();
  BigInt n{std::string(num)}, d{std::string(den)};
  if (d == 0) bad();
  return Rational(n, d);
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// Number of digits of the exact decimal expansion (integer digits plus
/// fractional digits), or nullopt when the expansion is infinite. Used to
/// decide whether a lossy text export needs its banner.
inline std::optional<int> decimal_digit_count(const Rational& r) {
  BigInt den = denominator(r);
  int twos = 0, fives = 0;
  while (den % 2 == 0) {
    den /= 2;
    ++twos;
  }
  while (den % 5 == 0) {
    den /= 5;
    ++fives;
  }
  if (den != 1) return std::nullopt;
  BigInt ipart = abs(numerator(r)) / denominator(r);
  int int_digits = static_cast<int>(ipart.str().size());
  return int_digits + std::max(twos, fives);
}

/// Exact decimal rendering for rationals with a finite expansion
/// (e.g. "-14.75"). Caller must check decimal_digit_count first.
inline std::string to_exact_decimal(const Rational& r) {
  BigInt den = denominator(r);
  int twos = 0, fives = 0;
  while (den % 2 == 0) {
    den /= 2;
    ++twos;
  }
  while (den % 5 == 0) {
    den /= 5;
    ++fives;
  }
  if (den != 1) throw std::invalid_argument("no finite decimal expansion");
  int frac = std::max(twos, fives);
  BigInt scaled = abs(numerator(r));
  // scale numerator so that denominator becomes 10^frac
  for (int i = twos; i < frac; ++i) scaled *= 2;
  for (int i = fives; i < frac; ++i) scaled *= 5;
  std::string digits = scaled.str();
  if (static_cast<int>(digits.size()) <= frac) digits.insert(0, frac + 1 - digits.size(), '0');
  std::string out;
  if (r < 0) out += "-";
  out += digits.substr(0, digits.size() - frac);
  if (frac > 0) {
    out += ".";
    out += digits.substr(digits.size() - frac);
  }
  return out;
}

}  // namespace pivotlab
