//
// Copyright 2026 The mpcgen Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "gtest/gtest.h"
#include "mpcgen/cohort.h"
#include "mpcgen/generator.h"

namespace mpcgen {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("mpcgen_cli_" + std::string(
                                ::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  int Run(const std::string& args) {
    const std::string cmd = std::string(MPCGEN_CLI) + " " + args + " > " +
                            (dir_ / "stdout").string() + " 2> " + (dir_ / "stderr").string();
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }
  std::string Read(const std::string& name) {
    std::ifstream in(dir_ / name);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
  }
  std::string Path(const std::string& name) { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(CliTest, Calibrate) {
  ASSERT_EQ(Run("calibrate --epsilon 1 --delta 1e-5 --d 2"), 0);
  EXPECT_NE(Read("stdout").find("sigma 10.8333"), std::string::npos);
  EXPECT_EQ(Run("calibrate --epsilon -1 --d 2"), 2);
}

TEST_F(CliTest, RunLocalThenGenerate) {
  ASSERT_EQ(Run("cohort --rows 80 --genes 4 --classes 2 --out " + Path("c.csv")), 0);
  ASSERT_EQ(Run("run-local --input " + Path("c.csv") + " --epsilon 16 --seed 2 --synthetic " +
                Path("s.csv") + " --report " + Path("r.json") + " --release " + Path("rel.json")),
            0)
      << Read("stderr");
  EXPECT_EQ(Read("r.json").rfind("{\n  \"tstr_accuracy\"", 0), 0u);
  const CohortTable syn = ReadCohortCsv(Path("s.csv"));
  EXPECT_EQ(syn.rows(), 64u);
  // `generate` on the written release with the same seed reproduces the CSV.
  ASSERT_EQ(Run("generate --release " + Path("rel.json") + " --seed 2 --out " + Path("g.csv")),
            0);
  EXPECT_EQ(Read("g.csv"), Read("s.csv"));
  ASSERT_EQ(Run("evaluate --train " + Path("c.csv") + " --test " + Path("c.csv") +
                " --synthetic " + Path("s.csv") + " --release " + Path("rel.json")),
            0)
      << Read("stderr");
  EXPECT_NE(Read("stdout").find("\"epsilon\": 16.0"), std::string::npos);
}

TEST_F(CliTest, ConfigFileAndOverride) {
  ASSERT_EQ(Run("cohort --rows 60 --genes 3 --classes 2 --out " + Path("c.csv")), 0);
  std::ofstream(Path("run.conf")) << "epsilon = 2\nseed = 4\n";
  ASSERT_EQ(Run("run-local --input " + Path("c.csv") + " --config " + Path("run.conf") +
                " --epsilon inf --synthetic " + Path("s.csv") + " --report " + Path("r.json")),
            0);
  EXPECT_NE(Read("r.json").find("\"sigma\": 0.0"), std::string::npos);
  EXPECT_NE(Read("r.json").find("\"seed\": 4"), std::string::npos);
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(Run("run-local --input " + Path("missing.csv")), 3);
  std::ofstream(Path("bad.csv")) << "a,b\n1,2\n";
  EXPECT_EQ(Run("run-local --input " + Path("bad.csv")), 3);
  EXPECT_NE(Read("stderr").find("'label'"), std::string::npos);
  ASSERT_EQ(Run("cohort --rows 20 --genes 2 --out " + Path("c.csv")), 0);
  EXPECT_EQ(Run("run-local --input " + Path("c.csv") + " --holders 100"), 2);
  EXPECT_EQ(Run("run-local --input " + Path("c.csv") + " --unknown 1"), 2);
  EXPECT_EQ(Run("generate --release " + Path("c.csv")), 3);
  // A lone server whose peers never appear.
  ASSERT_EQ(Run("share --input " + Path("c.csv") + " --out-dir " + Path("s")), 0);
  EXPECT_EQ(Run("server --party 1 --shares " + Path("s/holder0_party1.shares") +
                " --classes 2 --timeout_s 0.5 --party1 127.0.0.1:0"),
            4);
}

}  // namespace
}  // namespace mpcgen
