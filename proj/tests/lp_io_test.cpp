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

#include "pivotlab/lp_io.hpp"

#include "gtest/gtest.h"
#include "pivotlab/build_d.hpp"

namespace pivotlab {
namespace {

TEST(LpJsonTest, RoundTripIsByteExact) {
  for (int n : {2, 4}) {
    const FluxLp lp = build_flux_lp(build_B(n));
    const Json first = lp_to_exact_json(lp);
    const Json second = lp_to_exact_json(lp_from_exact_json(first));
    EXPECT_EQ(dump_json(first), dump_json(second));
  }
  auto [d, gadgets] = build_D(2);
  const FluxLp dlp = build_flux_lp(d);
  const Json first = lp_to_exact_json(dlp);
  EXPECT_EQ(dump_json(first), dump_json(lp_to_exact_json(lp_from_exact_json(first))));
}

TEST(LpJsonTest, SchemaFields) {
  const Json j = lp_to_exact_json(build_flux_lp(build_B(2)));
  EXPECT_EQ(j.at("sense").get<std::string>(), "max");
  EXPECT_EQ(j.at("vars").size(), 13u);
  EXPECT_EQ(j.at("rows").size(), 6u);
  for (const Json& row : j.at("rows")) {
    EXPECT_TRUE(row.contains("name"));
    EXPECT_EQ(row.at("rhs").get<std::string>(), "1");
    EXPECT_TRUE(row.at("coeffs").is_object());
  }
  // Rewards keep the num/den encoding.
  bool saw_quarter = false;
  for (const Json& var : j.at("vars"))
    if (var.at("obj").get<std::string>() == "3/4") saw_quarter = true;
  EXPECT_TRUE(saw_quarter);
}

TEST(LossyTextTest, BaseFamilyIsExactAndComplete) {
  const FluxLp lp = build_flux_lp(build_B(4));
  const std::string text = lossy_lp_text(lp);
  EXPECT_EQ(text.find("LOSSY"), std::string::npos);  // all coefficients fit
  EXPECT_NE(text.find("Maximize"), std::string::npos);
  EXPECT_NE(text.find("Subject To"), std::string::npos);
  EXPECT_NE(text.find("Bounds"), std::string::npos);
  EXPECT_NE(text.find("End"), std::string::npos);
  EXPECT_NE(text.find("0.75"), std::string::npos);
  EXPECT_NE(text.find("14.75"), std::string::npos);
  int declarations = 0;
  size_t position = 0;
  while ((position = text.find("0 <= ", position)) != std::string::npos) {
    ++declarations;
    ++position;
  }
  EXPECT_EQ(declarations, 25);
}

TEST(LossyTextTest, GadgetFamilyGetsTheBanner) {
  auto [d, gadgets] = build_D(2);
  const std::string text = lossy_lp_text(build_flux_lp(d));
  // Default probabilities need 2^{-N_V(v)(n+5)}: far beyond 40 digits.
  EXPECT_NE(text.find("LOSSY"), std::string::npos);
}

TEST(LossyTextTest, BannerFollowsTheDigitThreshold) {
  // 2^-40 needs 41 digits; 2^-39 needs 40 and stays exact.
  FluxLp narrow;
  narrow.row_names = {"r"};
  narrow.rhs = {Rational(1)};
  narrow.vars = {{"x", pow2(-39), {{0, Rational(1)}}, -1, -1, std::nullopt}};
  EXPECT_EQ(lossy_lp_text(narrow).find("LOSSY"), std::string::npos);
  FluxLp wide = narrow;
  wide.vars[0].obj = pow2(-40);
  EXPECT_NE(lossy_lp_text(wide).find("LOSSY"), std::string::npos);
}

}  // namespace
}  // namespace pivotlab
