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

#include "mpcgen/metrics.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "mpcgen/errors.h"

namespace mpcgen {
namespace {

CohortTable Table(std::size_t d, std::size_t classes, std::vector<double> values,
                  std::vector<int> labels) {
  CohortTable t;
  for (std::size_t g = 0; g < d; ++g) t.gene_names.push_back("g" + std::to_string(g));
  t.classes = classes;
  t.values = std::move(values);
  t.labels = std::move(labels);
  return t;
}

CohortTable RandomTable(std::size_t n, std::size_t d, std::size_t classes, std::uint64_t seed,
                        double signal = 0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0, 1);
  CohortTable t = Table(d, classes, {}, {});
  for (std::size_t i = 0; i < n; ++i) {
    const int y = static_cast<int>(rng() % classes);
    t.labels.push_back(y);
    for (std::size_t g = 0; g < d; ++g) {
      t.values.push_back(5 + noise(rng) + (g < classes && g == static_cast<std::size_t>(y) ? signal : 0));
    }
  }
  return t;
}

CohortTable Shuffled(const CohortTable& t, std::uint64_t seed) {
  std::vector<std::size_t> order(t.rows());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), std::mt19937_64(seed));
  CohortTable out = Table(t.d(), t.classes, {}, {});
  for (std::size_t i : order) {
    out.values.insert(out.values.end(), t.values.begin() + i * t.d(),
                      t.values.begin() + (i + 1) * t.d());
    out.labels.push_back(t.labels[i]);
  }
  return out;
}

TEST(TstrTest, SeparableToyIsPerfect) {
  const CohortTable t = Table(2, 2, {0, 0, 0.5, 1, 1, 0.2, 5, 5, 6, 4.5, 5.5, 6}, {0, 0, 0, 1, 1, 1});
  EXPECT_EQ(Tstr(t, t), 1.0);
}

TEST(TstrTest, UninformativeSyntheticIsChance) {
  // Balanced four-class test set; synthetic labels independent of features.
  CohortTable test = RandomTable(400, 5, 4, 1, 3.0);
  for (std::size_t i = 0; i < test.rows(); ++i) test.labels[i] = static_cast<int>(i % 4);
  const CohortTable syn = RandomTable(400, 5, 4, 2);
  EXPECT_NEAR(Tstr(syn, test), 0.25, 0.05);
}

TEST(TstrTest, LearnsSignal) {
  const CohortTable train = RandomTable(300, 6, 3, 3, 4.0);
  const CohortTable test = RandomTable(200, 6, 3, 4, 4.0);
  EXPECT_GT(Tstr(train, test), 0.9);
}

TEST(TstrTest, MissingClassWarnsButScores) {
  CohortTable train = RandomTable(100, 3, 3, 5, 3.0);
  for (int& y : train.labels) y = y == 2 ? 0 : y;
  const CohortTable test = RandomTable(100, 3, 3, 6, 3.0);
  std::vector<std::string> warnings;
  const double acc = Tstr(train, test, {}, &warnings);
  ASSERT_EQ(warnings.size(), 1u);
  EXPECT_NE(warnings[0].find("class 2"), std::string::npos);
  EXPECT_GE(acc, 0.0);
  EXPECT_LE(acc, 1.0);
}

TEST(TstrTest, DeterministicAndShuffleInvariant) {
  const CohortTable train = RandomTable(150, 4, 3, 7, 1.0);
  const CohortTable test = RandomTable(90, 4, 3, 8, 1.0);
  const double a = Tstr(train, test);
  EXPECT_EQ(Tstr(train, test), a);
  EXPECT_NEAR(Tstr(Shuffled(train, 1), Shuffled(test, 2)), a, 1.0 / test.rows() + 1e-12);
}

// Exact W1 for unequal sizes: repeat each sorted sample value m (resp. n)
// times so both quantile functions are sampled on the same nm-point grid.
double ReplicatedW1(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::vector<double> ra, rb;
  for (double v : a) ra.insert(ra.end(), b.size(), v);
  for (double v : b) rb.insert(rb.end(), a.size(), v);
  double s = 0;
  for (std::size_t i = 0; i < ra.size(); ++i) s += std::fabs(ra[i] - rb[i]);
  return s / ra.size();
}

TEST(WassersteinTest, HandValues) {
  EXPECT_EQ(Wasserstein1D({0, 0}, {1, 1}), 1.0);
  EXPECT_EQ(Wasserstein1D({3, 1, 2}, {1, 2, 3}), 0.0);
  EXPECT_NEAR(Wasserstein1D({0}, {0, 1}), 0.5, 1e-15);
}

TEST(WassersteinTest, MatchesReplicationOracle) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-5, 5);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> a(1 + rng() % 13), b(1 + rng() % 17);
    for (double& v : a) v = std::round(u(rng) * 2) / 2;  // ties
    for (double& v : b) v = u(rng);
    EXPECT_NEAR(Wasserstein1D(a, b), ReplicatedW1(a, b), 1e-12);
  }
}

TEST(WassersteinTest, IdentityAveragingAndCommonShift) {
  const CohortTable real = RandomTable(60, 3, 2, 12);
  EXPECT_EQ(Wasserstein(real, real), 0.0);
  CohortTable syn = RandomTable(45, 3, 2, 13);
  double mean = 0;
  for (std::size_t g = 0; g < 3; ++g) {
    std::vector<double> a, b;
    for (std::size_t i = 0; i < real.rows(); ++i) a.push_back(real.at(i, g));
    for (std::size_t i = 0; i < syn.rows(); ++i) b.push_back(syn.at(i, g));
    mean += Wasserstein1D(a, b) / 3;
  }
  EXPECT_NEAR(Wasserstein(real, syn), mean, 1e-12);
  CohortTable real_shifted = real;
  for (double& v : real_shifted.values) v += 7;
  for (double& v : syn.values) v += 7;
  EXPECT_NEAR(Wasserstein(real_shifted, syn), mean, 1e-9);
  EXPECT_NEAR(Wasserstein(Shuffled(real_shifted, 1), Shuffled(syn, 2)), mean, 1e-9);
}

TEST(WassersteinTest, ShiftBeyondSupportAddsExactly) {
  // When every synthetic value already exceeds every real value, a further
  // shift c raises W1 by exactly c.
  const std::vector<double> real = {0, 1, 2, 3};
  std::vector<double> syn = {5, 6, 9};
  const double w = Wasserstein1D(real, syn);
  for (double& v : syn) v += 2.5;
  EXPECT_NEAR(Wasserstein1D(real, syn), w + 2.5, 1e-12);
}

// One-vs-rest Welch statistic for one gene and class, two-pass variances.
double WelchOracle(const std::vector<double>& x, const std::vector<int>& y, int c) {
  std::vector<double> in, out;
  for (std::size_t i = 0; i < x.size(); ++i) (y[i] == c ? in : out).push_back(x[i]);
  auto mean = [](const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / v.size();
  };
  auto var = [&](const std::vector<double>& v) {
    const double m = mean(v);
    double s = 0;
    for (double e : v) s += (e - m) * (e - m);
    return std::max(s / (v.size() - 1), 1e-12);
  };
  return std::fabs(mean(in) - mean(out)) / std::sqrt(var(in) / in.size() + var(out) / out.size());
}

TEST(DetprTest, ScoresMatchWelchOracle) {
  const CohortTable t = RandomTable(80, 4, 3, 14, 1.5);
  const std::vector<double> scores = DeScores(t);
  for (std::size_t g = 0; g < 4; ++g) {
    std::vector<double> x;
    for (std::size_t i = 0; i < t.rows(); ++i) x.push_back(t.at(i, g));
    double want = 0;
    for (int c = 0; c < 3; ++c) want = std::max(want, WelchOracle(x, t.labels, c));
    EXPECT_NEAR(scores[g], want, 1e-9 * want);
  }
}

TEST(DetprTest, ZeroVarianceGeneIsFinite) {
  const CohortTable t = Table(2, 2, {1, 0, 1, 1, 1, 5, 1, 6}, {0, 0, 1, 1});
  const auto scores = DeScores(t);
  EXPECT_EQ(scores[0], 0.0);
  EXPECT_TRUE(std::isfinite(scores[1]));
  EXPECT_GT(scores[1], 0.0);
}

TEST(DetprTest, IdentityAndFullK) {
  const CohortTable real = RandomTable(100, 20, 3, 15, 2.0);
  const CohortTable syn = RandomTable(100, 20, 3, 16);
  EXPECT_EQ(Detpr(real, real, 5), 1.0);
  EXPECT_EQ(Detpr(real, syn, 20), 1.0);
  EXPECT_THROW(Detpr(real, syn, 21), ParameterError);
  EXPECT_EQ(Detpr(Shuffled(real, 3), Shuffled(syn, 4), 5), Detpr(real, syn, 5));
}

TEST(DetprTest, ShuffledLabelsGiveChanceOverlap) {
  // Null permutation oracle: with labels shuffled the synthetic top-K is a
  // uniformly random K-subset, so E[TPR] = K/d.
  const std::size_t d = 60, k = 6;
  double total = 0;
  const int trials = 40;
  for (int t = 0; t < trials; ++t) {
    const CohortTable real = RandomTable(120, d, 2, 100 + t, 0);
    CohortTable syn = real;
    std::shuffle(syn.labels.begin(), syn.labels.end(), std::mt19937_64(t));
    total += Detpr(real, syn, k);
  }
  // sd of one trial <= sqrt(K/d (1-K/d) / K) ~ 0.12; mean of 40 ~ 0.02.
  EXPECT_NEAR(total / trials, static_cast<double>(k) / d, 0.06);
}

TEST(DcrTest, HandValues) {
  const CohortTable real = RandomTable(30, 4, 2, 17);
  EXPECT_EQ(Dcr(real, real), 0.0);
  const CohortTable origin = Table(2, 1, {0, 0}, {0});
  const CohortTable point = Table(2, 1, {3, 4}, {0});
  EXPECT_DOUBLE_EQ(Dcr(origin, point), 5.0);
}

TEST(DcrTest, StandardisesWithRealStatistics) {
  // Real gene 0 has deviation 2, gene 1 has deviation 0.5.
  const CohortTable real = Table(2, 1, {-2, -0.5, 2, 0.5}, {0, 0});
  const CohortTable syn = Table(2, 1, {6, 0.5}, {0});
  // Nearest standardised real row is (1, 1); syn standardises to (3, 1).
  EXPECT_DOUBLE_EQ(Dcr(real, syn), 2.0);
}

TEST(DcrTest, ShuffleInvariant) {
  const CohortTable real = RandomTable(50, 5, 2, 18);
  const CohortTable syn = RandomTable(40, 5, 2, 19);
  EXPECT_NEAR(Dcr(Shuffled(real, 5), Shuffled(syn, 6)), Dcr(real, syn), 1e-12);
  EXPECT_GT(Dcr(real, syn), 0.0);
}

TEST(ReportTest, FixedKeyOrder) {
  MetricsReport r;
  r.tstr_accuracy = 0.75;
  r.epsilon = std::numeric_limits<double>::infinity();
  r.n = 640;
  r.d = 50;
  r.seed = 3;
  const std::string text = FormatReport(r);
  const char* keys[] = {"tstr_accuracy", "wasserstein_mean", "detpr", "dcr_mean", "epsilon",
                        "delta",         "sigma",            "d",     "N",        "seed"};
  std::size_t pos = 0;
  for (const char* k : keys) {
    const std::size_t at = text.find(std::string("\"") + k + "\"");
    ASSERT_NE(at, std::string::npos) << k;
    EXPECT_GT(at + 1, pos) << k;
    pos = at;
  }
  EXPECT_NE(text.find("\"epsilon\": \"inf\""), std::string::npos);
  EXPECT_EQ(FormatReport(r), text);
}

}  // namespace
}  // namespace mpcgen
