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

#include "mpcgen/generator.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "gtest/gtest.h"
#include "mpcgen/errors.h"

namespace mpcgen {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// A release with d genes and C classes whose two-way table is built from
// per-class bin counts; one-way tables are the consistent row sums.
ReleasedMarginals MakeRelease(std::size_t d, std::size_t classes,
                              const std::vector<double>& mu_y,
                              const std::vector<double>& mu_gy) {
  ReleasedMarginals m;
  m.d = d;
  m.classes = classes;
  m.mu_y = mu_y;
  m.mu_gy = mu_gy;
  m.mu_g.assign(d * kBins, 0);
  for (std::size_t g = 0; g < d; ++g) {
    for (std::size_t f = 0; f < kBins; ++f) {
      for (std::size_t c = 0; c < classes; ++c) m.mu_g[g * kBins + f] += m.gy(g, f, c);
    }
  }
  m.bin_means.assign(d * kBins, 0);
  return m;
}

TEST(CalibrateTest, WorkedValue) {
  // sqrt(2*2+1) * sqrt(2 ln(1.25e5)) evaluated by hand: 2.2360680 * 4.8447...
  const DPParams p = Calibrate(1.0, 1e-5, 2);
  EXPECT_NEAR(p.sigma, 10.8333, 5e-4);
  EXPECT_DOUBLE_EQ(p.sensitivity, std::sqrt(5.0));
}

TEST(CalibrateTest, InfiniteEpsilonMeansNoNoise) {
  EXPECT_EQ(Calibrate(kInf, 1e-5, 50).sigma, 0.0);
}

TEST(CalibrateTest, DoublingEpsilonHalvesSigma) {
  for (double eps : {0.5, 1.0, 4.0, 16.0}) {
    EXPECT_NEAR(Calibrate(2 * eps, 1e-5, 50).sigma, Calibrate(eps, 1e-5, 50).sigma / 2, 1e-12);
  }
}

TEST(CalibrateTest, MonotoneDecreasingInEpsilon) {
  double prev = kInf;
  for (double eps = 0.1; eps < 100; eps *= 1.7) {
    const double s = Calibrate(eps, 1e-5, 10).sigma;
    EXPECT_LT(s, prev);
    prev = s;
  }
}

TEST(CalibrateTest, RejectsBadParameters) {
  EXPECT_THROW(Calibrate(0, 1e-5, 5), ParameterError);
  EXPECT_THROW(Calibrate(-1, 1e-5, 5), ParameterError);
  EXPECT_THROW(Calibrate(1, 0, 5), ParameterError);
  EXPECT_THROW(Calibrate(1, 1, 5), ParameterError);
  EXPECT_THROW(Calibrate(1, 1e-5, 0), ParameterError);
  EXPECT_THROW(Calibrate(std::nan(""), 1e-5, 5), ParameterError);
}

TEST(EstimateModelTest, ClipsThenNormalisesLabels) {
  const ReleasedMarginals m = MakeRelease(1, 3, {-3, 10, 5}, std::vector<double>(12, 1.0));
  const StarModel model = EstimateModel(m);
  EXPECT_DOUBLE_EQ(model.p_y[0], 0.0);
  EXPECT_DOUBLE_EQ(model.p_y[1], 2.0 / 3);
  EXPECT_DOUBLE_EQ(model.p_y[2], 1.0 / 3);
}

TEST(EstimateModelTest, NonPositiveColumnBecomesUniform) {
  // gene 0, class 1 column is {-2, 0, -0.5, 0}.
  std::vector<double> gy = {3, -2, 1, 0, 0, -0.5, 4, 0};
  const StarModel model = EstimateModel(MakeRelease(1, 2, {5, 5}, gy));
  for (std::size_t f = 0; f < kBins; ++f) EXPECT_DOUBLE_EQ(model.cond(0, 1, f), 0.25);
  EXPECT_DOUBLE_EQ(model.cond(0, 0, 0), 3.0 / 8);
  EXPECT_DOUBLE_EQ(model.cond(0, 0, 1), 1.0 / 8);
  EXPECT_DOUBLE_EQ(model.cond(0, 0, 2), 0.0);
  EXPECT_DOUBLE_EQ(model.cond(0, 0, 3), 4.0 / 8);
}

TEST(EstimateModelTest, AllClassesClippedIsDegenerate) {
  EXPECT_THROW(EstimateModel(MakeRelease(1, 2, {-1, 0}, std::vector<double>(8, 1))),
               DegenerateInputError);
}

TEST(EstimateModelTest, ExactTablesGiveEmpiricalFrequencies) {
  // 2 genes, 2 classes; class counts 6 and 2.
  const std::vector<double> gy = {1, 0, 2, 1, 3, 0, 0, 1,   // gene 0, bins 0..3 x class
                                  0, 2, 3, 0, 2, 0, 1, 0};  // gene 1
  const StarModel model = EstimateModel(MakeRelease(2, 2, {6, 2}, gy));
  EXPECT_DOUBLE_EQ(model.p_y[0], 0.75);
  EXPECT_DOUBLE_EQ(model.cond(0, 0, 2), 0.5);
  EXPECT_DOUBLE_EQ(model.cond(0, 1, 3), 0.5);
  EXPECT_DOUBLE_EQ(model.cond(1, 0, 1), 0.5);
  EXPECT_DOUBLE_EQ(model.cond(1, 1, 0), 1.0);
  EXPECT_EQ(model.one_way_gap, 0.0);
}

TEST(EstimateModelTest, ScaleInvariant) {
  std::vector<double> gy = {1.5, -0.2, 2, 1, 3, 0.4, 0, 1};
  std::vector<double> y = {4.2, -1, 2.5};
  gy.resize(12, 0.7);
  const StarModel a = EstimateModel(MakeRelease(1, 3, y, gy));
  for (double& v : gy) v *= 7.5;
  for (double& v : y) v *= 7.5;
  const StarModel b = EstimateModel(MakeRelease(1, 3, y, gy));
  for (std::size_t i = 0; i < a.p_y.size(); ++i) EXPECT_NEAR(a.p_y[i], b.p_y[i], 1e-15);
  for (std::size_t i = 0; i < a.p_gy.size(); ++i) EXPECT_NEAR(a.p_gy[i], b.p_gy[i], 1e-15);
}

TEST(EstimateModelTest, ProbabilitiesSumToOne) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> noise(2, 5);
  const std::size_t d = 7, classes = 3;
  std::vector<double> y(classes), gy(d * kBins * classes);
  for (double& v : y) v = noise(rng);
  y[0] = 1;  // keep one class positive
  for (double& v : gy) v = noise(rng);
  const StarModel model = EstimateModel(MakeRelease(d, classes, y, gy));
  EXPECT_NEAR(std::accumulate(model.p_y.begin(), model.p_y.end(), 0.0), 1.0, 1e-12);
  for (std::size_t g = 0; g < d; ++g) {
    for (std::size_t c = 0; c < classes; ++c) {
      double s = 0;
      for (std::size_t f = 0; f < kBins; ++f) {
        EXPECT_GE(model.cond(g, c, f), 0.0);
        s += model.cond(g, c, f);
      }
      EXPECT_NEAR(s, 1.0, 1e-12);
    }
  }
}

StarModel RandomModel(std::size_t d, std::size_t classes, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.05, 1);
  std::vector<double> y(classes), gy(d * kBins * classes);
  for (double& v : y) v = u(rng);
  for (double& v : gy) v = u(rng);
  return EstimateModel(MakeRelease(d, classes, y, gy));
}

TEST(SampleTest, FrequenciesMatchModel) {
  const StarModel model = RandomModel(3, 3, 11);
  const std::size_t n = 100000;
  const DiscreteRows rows = Sample(model, n, 42);
  std::vector<double> label(3, 0), joint(3 * 3 * kBins, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const int y = rows.labels[i];
    ++label[y];
    for (std::size_t g = 0; g < 3; ++g) ++joint[(g * 3 + y) * kBins + rows.bins[i * 3 + g]];
  }
  for (std::size_t c = 0; c < 3; ++c) EXPECT_NEAR(label[c] / n, model.p_y[c], 0.01);
  for (std::size_t g = 0; g < 3; ++g) {
    for (std::size_t c = 0; c < 3; ++c) {
      for (std::size_t f = 0; f < kBins; ++f) {
        EXPECT_NEAR(joint[(g * 3 + c) * kBins + f] / label[c], model.cond(g, c, f), 0.02);
      }
    }
  }
}

TEST(SampleTest, PointMassGivesIdenticalRows) {
  std::vector<double> gy(2 * kBins * 2, 0);
  gy[(0 * kBins + 2) * 2 + 1] = 9;  // gene 0 -> bin 2 under class 1
  gy[(1 * kBins + 0) * 2 + 1] = 9;  // gene 1 -> bin 0 under class 1
  const DiscreteRows rows = Sample(EstimateModel(MakeRelease(2, 2, {0, 9}, gy)), 50, 3);
  for (std::size_t i = 0; i < rows.rows(); ++i) {
    EXPECT_EQ(rows.labels[i], 1);
    EXPECT_EQ(rows.bins[i * 2], 2);
    EXPECT_EQ(rows.bins[i * 2 + 1], 0);
  }
}

TEST(SampleTest, DeterministicAndRowAddressable) {
  const StarModel model = RandomModel(5, 4, 2);
  const DiscreteRows a = Sample(model, 200, 9);
  const DiscreteRows b = Sample(model, 200, 9);
  EXPECT_EQ(a.bins, b.bins);
  EXPECT_EQ(a.labels, b.labels);
  const DiscreteRows prefix = Sample(model, 20, 9);
  EXPECT_TRUE(std::equal(prefix.bins.begin(), prefix.bins.end(), a.bins.begin()));
  const DiscreteRows other = Sample(model, 200, 10);
  EXPECT_NE(other.bins, a.bins);
}

TEST(InverseBinTest, MapsBinsToMeans) {
  DiscreteRows rows{1, {0, 3, 2, 1}, {0, 0, 0, 0}};
  const CohortTable t = InverseBin(rows, {1.5, 3.5, 5.5, 7.5}, {"g"}, 1);
  EXPECT_EQ(t.values, (std::vector<double>{1.5, 7.5, 5.5, 3.5}));
}

TEST(InverseBinTest, ZeroMeansGiveZeros) {
  const DiscreteRows rows = Sample(RandomModel(3, 2, 4), 40, 1);
  const CohortTable t = InverseBin(rows, std::vector<double>(12, 0), {"a", "b", "c"}, 2);
  for (double v : t.values) EXPECT_EQ(v, 0.0);
}

TEST(InverseBinTest, ValuesComeFromTheGenesMeans) {
  const DiscreteRows rows = Sample(RandomModel(3, 2, 4), 300, 1);
  const std::vector<double> means = {1, 2, 3, 4, 10, 20, 30, 40, -1, -2, -3, -4};
  const CohortTable t = InverseBin(rows, means, {"a", "b", "c"}, 2);
  for (std::size_t i = 0; i < t.rows(); ++i) {
    for (std::size_t g = 0; g < 3; ++g) {
      const std::set<double> allowed(means.begin() + g * 4, means.begin() + g * 4 + 4);
      EXPECT_TRUE(allowed.count(t.at(i, g)));
    }
  }
  EXPECT_EQ(t.labels, rows.labels);
}

TEST(InverseBinTest, RejectsMismatchedMeans) {
  DiscreteRows rows{2, {0, 1}, {0}};
  EXPECT_THROW(InverseBin(rows, {1, 2, 3, 4}, {"a", "b"}, 1), ContractError);
}

class ReleaseFileTest : public ::testing::Test {
 protected:
  std::filesystem::path path_ =
      std::filesystem::temp_directory_path() /
      ("mpcgen_release_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
       "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name() + ".json");
  void TearDown() override { std::filesystem::remove(path_); }
};

TEST_F(ReleaseFileTest, RoundTrip) {
  ReleaseFile r;
  r.dp = Calibrate(kInf, 1e-5, 2);
  r.gene_names = {"TP53", "BRCA1"};
  r.marginals = MakeRelease(2, 2, {3.25, -1.5}, std::vector<double>(16, 0.125));
  r.marginals.n = 5;
  r.marginals.bin_means = {1, 2, 3, 4, 5, 6, 7, 8.0625};
  r.marginals.bin_means_noised = true;
  WriteReleaseJson(path_, r);
  const ReleaseFile back = ReadReleaseJson(path_);
  EXPECT_TRUE(std::isinf(back.dp.epsilon));
  EXPECT_EQ(back.dp.sigma, 0.0);
  EXPECT_EQ(back.gene_names, r.gene_names);
  EXPECT_EQ(back.marginals.mu_y, r.marginals.mu_y);
  EXPECT_EQ(back.marginals.mu_g, r.marginals.mu_g);
  EXPECT_EQ(back.marginals.mu_gy, r.marginals.mu_gy);
  EXPECT_EQ(back.marginals.bin_means, r.marginals.bin_means);
  EXPECT_EQ(back.marginals.n, 5u);
  EXPECT_TRUE(back.marginals.bin_means_noised);
}

TEST_F(ReleaseFileTest, MalformedFilesAreIngestionErrors) {
  EXPECT_THROW(ReadReleaseJson(path_), IngestionError);  // missing
  std::ofstream(path_) << "{ not json";
  EXPECT_THROW(ReadReleaseJson(path_), IngestionError);
  std::ofstream(path_) << R"({"format": "mpcgen-release-1", "epsilon": 1})";
  EXPECT_THROW(ReadReleaseJson(path_), IngestionError);
}

}  // namespace
}  // namespace mpcgen
