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

#include "pivotlab/rational.hpp"

#include <random>

#include "gtest/gtest.h"

namespace pivotlab {
namespace {

TEST(RationalTest, FormatOmitsUnitDenominator) {
  EXPECT_EQ(format_rational(Rational(5)), "5");
  EXPECT_EQ(format_rational(Rational(-7)), "-7");
  EXPECT_EQ(format_rational(Rational(3, 4)), "3/4");
  EXPECT_EQ(format_rational(Rational(0)), "0");
}

TEST(RationalTest, ParseCanonicalizes) {
  Rational r = parse_rational("-3/6");
  EXPECT_EQ(numerator(r), -1);
  EXPECT_EQ(denominator(r), 2);
  EXPECT_EQ(parse_rational("246/8"), Rational(123, 4));
  EXPECT_EQ(parse_rational("0/17"), Rational(0));
}

TEST(RationalTest, ParseRejectsGarbage) {
  EXPECT_THROW(parse_rational(""), std::invalid_argument);
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_rational("a"), std::invalid_argument);
  EXPECT_THROW(parse_rational("1/-2"), std::invalid_argument);
  EXPECT_THROW(parse_rational("--1"), std::invalid_argument);
  EXPECT_THROW(parse_rational("1.5"), std::invalid_argument);
}

TEST(RationalTest, Pow2) {
  EXPECT_EQ(pow2(0), Rational(1));
  EXPECT_EQ(pow2(10), Rational(1024));
  EXPECT_EQ(pow2(-3), Rational(1, 8));
  EXPECT_EQ(pow2(-17), Rational(1, 131072));
}

TEST(RationalTest, DecimalDigitCount) {
  EXPECT_EQ(decimal_digit_count(Rational(3, 4)), 3);     // 0.75
  EXPECT_EQ(decimal_digit_count(Rational(-59, 4)), 4);   // -14.75
  EXPECT_EQ(decimal_digit_count(Rational(16)), 2);
  EXPECT_EQ(decimal_digit_count(pow2(-49)).value(), 50);
  EXPECT_FALSE(decimal_digit_count(Rational(1, 3)).has_value());
  EXPECT_EQ(decimal_digit_count(Rational(1, 10)), 2);    // 0.1
}

TEST(RationalTest, ExactDecimal) {
  EXPECT_EQ(to_exact_decimal(Rational(-59, 4)), "-14.75");
  EXPECT_EQ(to_exact_decimal(Rational(3, 4)), "0.75");
  EXPECT_EQ(to_exact_decimal(Rational(2)), "2");
  EXPECT_EQ(to_exact_decimal(Rational(5, 4)), "1.25");
  EXPECT_EQ(to_exact_decimal(Rational(1, 10)), "0.1");
  EXPECT_THROW(to_exact_decimal(Rational(1, 3)), std::invalid_argument);
}

TEST(RationalTest, FormatParseRoundTrip) {
  std::mt19937_64 rng(12345);
  std::uniform_int_distribution<long> num(-1000000, 1000000);
  std::uniform_int_distribution<long> den(1, 1000000);
  for (int i = 0; i < 2000; ++i) {
    Rational r(num(rng), den(rng));
    EXPECT_EQ(parse_rational(format_rational(r)), r);
    EXPECT_GT(denominator(r), 0);
  }
}

}  // namespace
}  // namespace pivotlab
