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

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "gtest/gtest.h"
#include "pivotlab/mdp_json.hpp"

namespace pivotlab {
namespace {

namespace fs = std::filesystem;

struct CommandResult {
  int exit_code;
  std::string output;  // stdout only
};

CommandResult run_cli(const std::string& args) {
  const std::string command = std::string(PIVOTLAB_CLI_PATH) + " " + args + " 2>/dev/null";
  std::array<char, 4096> buffer{};
  std::string output;
  FILE* pipe = popen(command.c_str(), "r");
  EXPECT_NE(pipe, nullptr);
  while (fgets(buffer.data(), buffer.size(), pipe) != nullptr) output += buffer.data();
  const int status = pclose(pipe);
  return {WEXITSTATUS(status), output};
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("pivotlab_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

TEST_F(CliTest, GenWritesTheProcessFile) {
  const fs::path out = dir_ / "b4.json";
  const CommandResult result = run_cli("gen --family B --n 4 --out " + out.string());
  EXPECT_EQ(result.exit_code, 0);
  const Json j = Json::parse(read_file(out));
  EXPECT_EQ(j.at("vertices").size(), 11u);
  EXPECT_EQ(j.at("edges").size(), 26u);
}

TEST_F(CliTest, GenRoundTripsThroughTheSchema) {
  const fs::path out = dir_ / "b1.json";
  ASSERT_EQ(run_cli("gen --family B --n 1 --out " + out.string()).exit_code, 0);
  const std::string bytes = read_file(out);
  const Mdp parsed = mdp_from_json(Json::parse(bytes));
  EXPECT_EQ(dump_json(mdp_to_json(parsed)), bytes);
}

TEST_F(CliTest, GenEmitsGadgetsWithDyadicProbabilities) {
  const fs::path out = dir_ / "d2.json";
  ASSERT_EQ(run_cli("gen --family D --n 2 --out " + out.string()).exit_code, 0);
  const Json gadgets = Json::parse(read_file(out.string() + ".gadgets.json"));
  EXPECT_EQ(gadgets.at("t->a1").at("p").get<std::string>(), "1/128");
  EXPECT_EQ(gadgets.at("a1->b1").at("p").get<std::string>(), "1/16384");
  // 7 base vertices plus a triple per replaced edge.
  const Json j = Json::parse(read_file(out));
  EXPECT_EQ(j.at("vertices").size(), 7u + 3u * 13u);
}

TEST_F(CliTest, RunReportsTheCounterTraversal) {
  const fs::path out = dir_ / "trace.jsonl";
  const CommandResult result =
      run_cli("run --family B --n 4 --rule bland --out " + out.string());
  EXPECT_EQ(result.exit_code, 0);
  const Json summary = Json::parse(result.output);
  EXPECT_EQ(summary.at("canonical_policies_visited").get<int>(), 16);
  EXPECT_TRUE(summary.at("terminal_optimal").get<bool>());
  EXPECT_EQ(summary.at("total_switches").get<int>(), 55);
  // One line per switch plus the summary.
  const std::string trace = read_file(out);
  EXPECT_EQ(std::count(trace.begin(), trace.end(), '\n'), 56);
}

TEST_F(CliTest, RunsAreByteIdentical) {
  const fs::path first = dir_ / "a.jsonl", second = dir_ / "b.jsonl";
  ASSERT_EQ(run_cli("run --family D --n 2 --rule mix:7 --out " + first.string()).exit_code, 0);
  ASSERT_EQ(run_cli("run --family D --n 2 --rule mix:7 --out " + second.string()).exit_code, 0);
  EXPECT_EQ(read_file(first), read_file(second));
}

TEST_F(CliTest, RunGadgetFamilyBeatsTheExponentialBound) {
  const CommandResult result = run_cli("run --family D --n 4 --rule dantzig");
  EXPECT_EQ(result.exit_code, 0);
  const Json summary = Json::parse(result.output);
  EXPECT_GE(summary.at("total_switches").get<int>(), 16);
  EXPECT_TRUE(summary.at("terminal_optimal").get<bool>());
}

TEST_F(CliTest, ScheduleFileDrivesTheMix) {
  const fs::path sched = dir_ / "sched.txt";
  std::ofstream(sched) << "bland\ndantzig\n";
  const CommandResult result =
      run_cli("run --family D --n 2 --rule sched:" + sched.string());
  EXPECT_EQ(result.exit_code, 0);
  EXPECT_GE(Json::parse(result.output).at("total_switches").get<int>(), 4);
}

TEST_F(CliTest, ProbabilityOverrideFileIsApplied) {
  const fs::path overrides = dir_ / "p.json";
  std::ofstream(overrides) << R"({"t":"1/2"})";
  const fs::path out = dir_ / "d1.json";
  ASSERT_EQ(run_cli("gen --family D --n 1 --p-override " + overrides.string() + " --out " +
                    out.string())
                .exit_code,
            0);
  const Json gadgets = Json::parse(read_file(out.string() + ".gadgets.json"));
  EXPECT_EQ(gadgets.at("t->a1").at("p").get<std::string>(), "1/2");
}

TEST_F(CliTest, SweepEmitsTheStableSchema) {
  const fs::path csv = dir_ / "sweep.csv";
  const CommandResult result =
      run_cli("sweep --family B --rule bland --n 1..5 --csv " + csv.string());
  EXPECT_EQ(result.exit_code, 0);
  std::ifstream in(csv);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "family,n,rule,seed,total_switches,runtime_ms,ties_seen,doubling_ratio,status");
  std::string line;
  int rows = 0;
  std::int64_t previous = 0;
  while (std::getline(in, line)) {
    ++rows;
    std::stringstream fields(line);
    std::string family, n, rule, seed, total;
    std::getline(fields, family, ',');
    std::getline(fields, n, ',');
    std::getline(fields, rule, ',');
    std::getline(fields, seed, ',');
    std::getline(fields, total, ',');
    EXPECT_EQ(family, "B");
    EXPECT_EQ(rule, "bland");
    const std::int64_t switches = std::stoll(total);
    EXPECT_GE(switches, std::int64_t(1) << std::stoi(n));
    EXPECT_GT(switches, previous);
    previous = switches;
  }
  EXPECT_EQ(rows, 5);
}

TEST_F(CliTest, SweepWithMixSeedsRowsPerSeed) {
  const CommandResult result = run_cli("sweep --family D --rule mix --n 2..3 --seeds 1,2");
  EXPECT_EQ(result.exit_code, 0);
  EXPECT_NE(result.output.find("D,2,mix:1,1,"), std::string::npos);
  EXPECT_NE(result.output.find("D,3,mix:2,2,"), std::string::npos);
}

TEST_F(CliTest, VerifySucceedsOnSmallSizes) {
  const CommandResult result = run_cli("verify --n-max 2");
  EXPECT_EQ(result.exit_code, 0);
  EXPECT_NE(result.output.find("all properties hold"), std::string::npos);
  EXPECT_EQ(result.output.find("FAIL"), std::string::npos);
  // n = 1 has no odd counter states; the phase properties pass vacuously.
  EXPECT_EQ(run_cli("verify --n-max 1").exit_code, 0);
}

TEST_F(CliTest, UsageErrorsExitWithFour) {
  EXPECT_EQ(run_cli("run --family Q --n 2").exit_code, 4);
  EXPECT_EQ(run_cli("frobnicate").exit_code, 4);
  EXPECT_EQ(run_cli("run --family B").exit_code, 4);             // missing --n
  EXPECT_EQ(run_cli("sweep --family B --rule --n 1..2").exit_code, 4);
  EXPECT_EQ(run_cli("run --family B --n 2 --rule zigzag").exit_code, 4);
}

TEST_F(CliTest, LpExportWritesBothForms) {
  const fs::path prefix = dir_ / "b2lp";
  const CommandResult result =
      run_cli("lp export --family B --n 2 --out " + prefix.string());
  EXPECT_EQ(result.exit_code, 0);
  const Json exact = Json::parse(read_file(prefix.string() + ".json"));
  EXPECT_EQ(exact.at("vars").size(), 13u);
  EXPECT_NE(read_file(prefix.string() + ".lp").find("Maximize"), std::string::npos);
}

TEST_F(CliTest, LpRunReachesTheOptimalObjective) {
  const CommandResult result = run_cli("lp run --family B --n 3 --rule dantzig");
  EXPECT_EQ(result.exit_code, 0);
  const Json summary = Json::parse(result.output);
  EXPECT_GT(summary.at("total_pivots").get<int>(), 0);
  // Sum of the optimal vertex values of the n = 3 process.
  EXPECT_EQ(summary.at("objective").get<std::string>(), "293/4");
}

TEST_F(CliTest, LpRunFromTheOptimalBasisTakesNoPivots) {
  const CommandResult result =
      run_cli("lp run --family B --n 4 --rule bland --start optimal");
  EXPECT_EQ(result.exit_code, 0);
  EXPECT_EQ(Json::parse(result.output).at("total_pivots").get<int>(), 0);
}

TEST_F(CliTest, LpCompareAgreesAcrossEngines) {
  EXPECT_EQ(run_cli("lp compare --family B --n 4 --rule bland").exit_code, 0);
  EXPECT_EQ(run_cli("lp compare --family D --n 2 --rule dantzig").exit_code, 0);
  const CommandResult result = run_cli("lp compare --family B --n 3 --rule li");
  EXPECT_EQ(result.exit_code, 0);
  const Json summary = Json::parse(result.output);
  EXPECT_TRUE(summary.at("pivot_count_matches").get<bool>());
  EXPECT_TRUE(summary.at("entering_sequence_matches").get<bool>());
}

}  // namespace
}  // namespace pivotlab
