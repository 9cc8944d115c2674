// Copyright 2026 The dyncoloc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "dyncoloc/io.hpp"
#include "fixtures.hpp"

namespace dyncoloc {
namespace {

namespace fs = std::filesystem;

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("dyncoloc_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  void write(const std::string& name, const std::string& text) const {
    std::ofstream(dir_ / name) << text;
  }

  static std::string slurp(const std::string& p) {
    std::ifstream in(p);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }

  int call(std::vector<std::string> args) {
    out_.str("");
    err_.str("");
    return cli::run(args, out_, err_);
  }

  void write_sample() const {
    std::ostringstream s, lc;
    write_series(s, test::sample_series());
    write_life_cycles(lc, test::sample_life_cycles());
    write("series.csv", s.str());
    write("lc.csv", lc.str());
  }

  fs::path dir_;
  std::ostringstream out_, err_;
};

TEST_F(Cli, DiffWritesSeries) {
  write("snap.csv", "t_point,feature,instance_id,x,y\n0,A,1,0,0\n0,B,2,1,1\n1,A,1,0,0\n1,A,3,4,4\n");
  ASSERT_EQ(call({"diff", path("snap.csv"), path("series.csv")}), cli::kOk) << err_.str();
  std::ifstream in(path("series.csv"));
  const auto s = read_series(in);
  EXPECT_EQ(s.window_count(), 1u);
  EXPECT_EQ(s.instance_count(), 2u);
}

TEST_F(Cli, MineSampleSeries) {
  write_sample();
  ASSERT_EQ(call({"mine", path("series.csv"), "--lifecycles", path("lc.csv"), "-o", path("r.txt"),
                  "--dd", "10", "--min-prev", "0.3"}),
            cli::kOk)
      << err_.str();
  std::ifstream in(path("r.txt"));
  const auto rows = read_pattern_report(in);
  ASSERT_EQ(rows.size(), 4u);
  bool found = false;
  for (const auto& r : rows) {
    if (r.features == std::vector<std::string>{"A_new", "B_new"}) {
      found = true;
      EXPECT_DOUBLE_EQ(r.dpi, 0.5);
    }
  }
  EXPECT_TRUE(found);
  EXPECT_TRUE(fs::exists(path("r.txt.manifest")));
}

TEST_F(Cli, ThresholdOneKeepsOnlyFullParticipation) {
  write_sample();
  ASSERT_EQ(call({"mine", path("series.csv"), "--lifecycles", path("lc.csv"), "-o", path("r.txt"),
                  "--dd", "10", "--min-prev", "1.0"}),
            cli::kOk);
  // {A_dead, B_new} has DPI exactly 1.
  EXPECT_NE(out_.str().find("maximal: 1"), std::string::npos) << out_.str();
  ASSERT_EQ(call({"mine", path("series.csv"), "--lifecycles", path("lc.csv"), "-o", path("r.txt"),
                  "--dd", "10", "--min-prev", "1.0", "--prevalence", "strict"}),
            cli::kOk);
  EXPECT_NE(out_.str().find("maximal: 0"), std::string::npos) << out_.str();
}

TEST_F(Cli, AlgorithmsAgreeOnDeriveAll) {
  write_sample();
  for (const char* algo : {"mdc", "join", "brute"}) {
    ASSERT_EQ(call({"mine", path("series.csv"), "--lifecycles", path("lc.csv"), "-o",
                    path(std::string(algo) + ".txt"), "--dd", "10", "--min-prev", "0.3",
                    "--derive-all", "--seedless-report", "--algo", algo}),
              cli::kOk)
        << algo << ": " << err_.str();
  }
  EXPECT_EQ(slurp(path("mdc.txt")), slurp(path("join.txt")));
  EXPECT_EQ(slurp(path("mdc.txt")), slurp(path("brute.txt")));
}

TEST_F(Cli, BadInputsExitWithTwo) {
  write_sample();
  write("noheader.csv", "0,A,1,0,0\n1,A,1,0,0\n");
  EXPECT_EQ(call({"mine", path("noheader.csv"), "--lifecycles", path("lc.csv"), "-o",
                  path("r.txt")}),
            cli::kBadInput);
  EXPECT_NE(err_.str().find("line 1"), std::string::npos) << err_.str();
  EXPECT_NE(err_.str().find("missing header"), std::string::npos) << err_.str();
  write("lc2.csv", "feature,life_cycle\nA,9\nB,9\nC,9\nQ,3\n");
  EXPECT_EQ(call({"mine", path("series.csv"), "--lifecycles", path("lc2.csv"), "-o",
                  path("r.txt")}),
            cli::kBadInput);
  EXPECT_NE(err_.str().find("Q"), std::string::npos);
  EXPECT_EQ(call({"mine", path("series.csv"), "--lifecycles", path("lc.csv"), "-o", path("r.txt"),
                  "--min-prev", "2"}),
            cli::kBadInput);
  EXPECT_EQ(call({"frobnicate"}), cli::kBadInput);
}

TEST_F(Cli, UnreadableInputIsBadInput) {
  EXPECT_EQ(call({"diff", path("absent.csv"), path("o.csv")}), cli::kBadInput);
  EXPECT_NE(err_.str().find("cannot open"), std::string::npos);
}

TEST_F(Cli, GenIsDeterministic) {
  for (const char* d : {"g1", "g2"}) {
    ASSERT_EQ(call({"gen", path(d), "--seed", "5", "--set", "n_dynamic_instances=300", "--set",
                    "static_instances=20"}),
              cli::kOk)
        << err_.str();
  }
  EXPECT_EQ(slurp(path("g1/snapshots.csv")), slurp(path("g2/snapshots.csv")));
  EXPECT_EQ(slurp(path("g1/lifecycles.csv")), slurp(path("g2/lifecycles.csv")));
  EXPECT_NE(out_.str().find("dynamic_instances: 300"), std::string::npos);
  ASSERT_EQ(call({"mine", path("g1/snapshots.csv"), "--lifecycles", path("g1/lifecycles.csv"),
                  "-o", path("g1/r.txt")}),
            cli::kOk)
      << err_.str();
}

TEST_F(Cli, BenchSinglePoint) {
  write("spec.txt", "dd = 20\nn_dynamic_instances = 300\nstatic_instances = 20\n");
  ASSERT_EQ(call({"bench", path("spec.txt"), path("b")}), cli::kOk) << err_.str();
  std::istringstream csv(slurp(path("b/bench.csv")));
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(csv, line)) lines.push_back(line);
  ASSERT_EQ(lines.size(), 3u);
  EXPECT_EQ(lines[1].rfind("dd,20,mdc,", 0), 0u);
  EXPECT_EQ(lines[2].rfind("dd,20,join,", 0), 0u);
  EXPECT_TRUE(fs::exists(path("b/bench.manifest")));
}

}  // namespace
}  // namespace dyncoloc
