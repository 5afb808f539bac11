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

#include "mpcgen/config.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>

#include "gtest/gtest.h"
#include "mpcgen/errors.h"

namespace mpcgen {
namespace {

TEST(ConfigTest, ParsesEveryKey) {
  const Config c = ParseConfig(
      "# run manifest\n"
      "epsilon = 4\n"
      "delta = 1e-6\n"
      "sigma = 2.5   # explicit\n"
      "classes = 3\n"
      "seed = 99\n"
      "noise_bin_means = false\n"
      "frac_bits = 20\n"
      "bins = 4\n"
      "holders = 5\n"
      "party1 = 10.0.0.1:9001\n"
      "party2 = 10.0.0.2:9002\n"
      "party3 = host3:9003\n"
      "timeout_s = 12.5\n"
      "n_syn = 1000\n"
      "log1p = true\n"
      "detpr_k = 20\n"
      "test_fraction = 0.25\n");
  EXPECT_EQ(c.epsilon, 4);
  EXPECT_EQ(c.delta, 1e-6);
  EXPECT_EQ(c.sigma, 2.5);
  EXPECT_EQ(c.classes, 3u);
  EXPECT_EQ(c.seed, 99u);
  EXPECT_FALSE(c.noise_bin_means);
  EXPECT_EQ(c.frac_bits, 20);
  EXPECT_EQ(c.holders, 5u);
  EXPECT_EQ(c.parties[2], "host3:9003");
  EXPECT_EQ(c.timeout_s, 12.5);
  EXPECT_EQ(c.n_syn, 1000u);
  EXPECT_TRUE(c.log1p);
  EXPECT_EQ(c.detpr_k, 20u);
  EXPECT_EQ(c.test_fraction, 0.25);
  EXPECT_NO_THROW(ValidateConfig(c));
}

TEST(ConfigTest, FormatRoundTrips) {
  Config c;
  c.epsilon = std::numeric_limits<double>::infinity();
  c.sigma = 0.125;
  c.seed = 1234567890123ULL;
  c.log1p = true;
  const Config back = ParseConfig(FormatConfig(c));
  EXPECT_TRUE(std::isinf(back.epsilon));
  EXPECT_EQ(back.sigma, 0.125);
  EXPECT_EQ(back.seed, c.seed);
  EXPECT_EQ(FormatConfig(back), FormatConfig(c));
  EXPECT_EQ(ConfigKeys().size(), 17u);
}

TEST(ConfigTest, OverridesApplyOnTopOfFile) {
  const auto path = std::filesystem::temp_directory_path() / "mpcgen_config_test.conf";
  std::ofstream(path) << "epsilon = 2\nseed = 5\n";
  Config c;
  c.holders = 3;
  LoadConfigFile(c, path);
  SetConfigValue(c, "seed", "6");
  EXPECT_EQ(c.epsilon, 2);
  EXPECT_EQ(c.seed, 6u);
  EXPECT_EQ(c.holders, 3u);
  std::filesystem::remove(path);
  EXPECT_THROW(LoadConfigFile(c, path), IngestionError);
}

TEST(ConfigTest, ErrorsNameTheLine) {
  try {
    ParseConfig("epsilon = 1\nbogus = 3\n");
    FAIL();
  } catch (const ParameterError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
  EXPECT_THROW(ParseConfig("epsilon\n"), ParameterError);
  EXPECT_THROW(ParseConfig("seed = -1\n"), ParameterError);
  EXPECT_THROW(ParseConfig("log1p = maybe\n"), ParameterError);
  EXPECT_THROW(ParseConfig("party1 = nohost\n"), ParameterError);
}

TEST(ConfigTest, ValidationRanges) {
  auto invalid = [](const char* key, const char* value) {
    Config c;
    SetConfigValue(c, key, value);
    EXPECT_THROW(ValidateConfig(c), ParameterError) << key << "=" << value;
  };
  invalid("epsilon", "0");
  invalid("delta", "1");
  invalid("sigma", "-1");
  invalid("bins", "5");
  invalid("classes", "1");
  invalid("holders", "0");
  invalid("test_fraction", "0");
  EXPECT_NO_THROW(ValidateConfig(Config()));
}

}  // namespace
}  // namespace mpcgen
