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
#include <limits>
#include <numeric>

#include "json.hpp"
#include "mpcgen/errors.h"

namespace mpcgen {
namespace {

constexpr double kVarianceFloor = 1e-12;

void RequireSameGenes(const CohortTable& a, const CohortTable& b) {
  if (a.d() != b.d()) throw ParameterError("cohorts have different gene counts");
}

struct ColumnStats {
  std::vector<double> mean, sd;
};

// Deviation 0 is replaced by 1 so constant genes standardise to zero.
ColumnStats Stats(const CohortTable& t) {
  const std::size_t n = t.rows(), d = t.d();
  ColumnStats s{std::vector<double>(d, 0), std::vector<double>(d, 0)};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t g = 0; g < d; ++g) s.mean[g] += t.at(i, g);
  }
  for (double& m : s.mean) m /= std::max<std::size_t>(n, 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t g = 0; g < d; ++g) {
      const double z = t.at(i, g) - s.mean[g];
      s.sd[g] += z * z;
    }
  }
  for (double& v : s.sd) {
    v = std::sqrt(v / std::max<std::size_t>(n, 1));
    if (v < 1e-12) v = 1;
  }
  return s;
}

std::vector<double> Standardize(const CohortTable& t, const ColumnStats& s) {
  std::vector<double> out(t.values.size());
  for (std::size_t i = 0; i < t.rows(); ++i) {
    for (std::size_t g = 0; g < t.d(); ++g) {
      out[i * t.d() + g] = (t.at(i, g) - s.mean[g]) / s.sd[g];
    }
  }
  return out;
}

}  // namespace

double Tstr(const CohortTable& train, const CohortTable& test, const TstrOptions& options,
            std::vector<std::string>* warnings) {
  RequireSameGenes(train, test);
  if (train.rows() == 0 || test.rows() == 0) throw ParameterError("empty cohort in TSTR");
  const std::size_t d = train.d(), n = train.rows();
  const std::size_t classes = std::max(train.classes, test.classes);
  const std::size_t width = d + 1;  // bias last

  std::vector<std::size_t> seen(classes, 0);
  for (int y : train.labels) ++seen[y];
  for (std::size_t c = 0; c < classes; ++c) {
    if (seen[c] == 0 && warnings != nullptr) {
      warnings->push_back("class " + std::to_string(c) + " absent from synthetic training set");
    }
  }

  const ColumnStats stats = Stats(train);
  const std::vector<double> x = Standardize(train, stats);
  std::vector<double> w(classes * width, 0), grad(classes * width), p(classes);
  for (int epoch = 0; epoch < options.epochs; ++epoch) {
    std::fill(grad.begin(), grad.end(), 0);
    for (std::size_t i = 0; i < n; ++i) {
      const double* xi = &x[i * d];
      double top = -std::numeric_limits<double>::infinity();
      for (std::size_t c = 0; c < classes; ++c) {
        const double* wc = &w[c * width];
        p[c] = std::inner_product(xi, xi + d, wc, wc[d]);
        top = std::max(top, p[c]);
      }
      double total = 0;
      for (double& v : p) total += (v = std::exp(v - top));
      for (std::size_t c = 0; c < classes; ++c) {
        const double r = p[c] / total - (static_cast<std::size_t>(train.labels[i]) == c ? 1 : 0);
        double* gc = &grad[c * width];
        for (std::size_t g = 0; g < d; ++g) gc[g] += r * xi[g];
        gc[d] += r;
      }
    }
    for (std::size_t c = 0; c < classes; ++c) {
      for (std::size_t g = 0; g < width; ++g) {
        double& wk = w[c * width + g];
        const double reg = g < d ? options.l2 * wk : 0;
        wk -= options.learning_rate * (grad[c * width + g] / n + reg);
      }
    }
  }

  const std::vector<double> xt = Standardize(test, stats);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < test.rows(); ++i) {
    const double* xi = &xt[i * d];
    std::size_t best = 0;
    double best_score = -std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < classes; ++c) {
      const double* wc = &w[c * width];
      const double s = std::inner_product(xi, xi + d, wc, wc[d]);
      if (s > best_score) {
        best_score = s;
        best = c;
      }
    }
    if (static_cast<int>(best) == test.labels[i]) ++correct;
  }
  return static_cast<double>(correct) / test.rows();
}

double Wasserstein1D(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw ParameterError("Wasserstein distance of an empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  // Integrate |F_a - F_b| between consecutive points of the merged support.
  const double na = a.size(), nb = b.size();
  std::size_t i = 0, j = 0;
  double prev = std::min(a[0], b[0]), total = 0;
  while (i < a.size() || j < b.size()) {
    const double next = j == b.size() || (i < a.size() && a[i] <= b[j]) ? a[i] : b[j];
    total += std::fabs(i / na - j / nb) * (next - prev);
    while (i < a.size() && a[i] == next) ++i;
    while (j < b.size() && b[j] == next) ++j;
    prev = next;
  }
  return total;
}

double Wasserstein(const CohortTable& real, const CohortTable& syn) {
  RequireSameGenes(real, syn);
  double sum = 0;
  std::vector<double> a(real.rows()), b(syn.rows());
  for (std::size_t g = 0; g < real.d(); ++g) {
    for (std::size_t i = 0; i < real.rows(); ++i) a[i] = real.at(i, g);
    for (std::size_t i = 0; i < syn.rows(); ++i) b[i] = syn.at(i, g);
    sum += Wasserstein1D(a, b);
  }
  return sum / real.d();
}

std::vector<double> DeScores(const CohortTable& t) {
  const std::size_t d = t.d(), n = t.rows();
  const std::size_t classes = std::max<std::size_t>(
      t.classes, t.labels.empty() ? 0 : *std::max_element(t.labels.begin(), t.labels.end()) + 1);
  std::vector<double> scores(d, 0);
  std::vector<double> sum(classes), sq(classes);
  std::vector<std::size_t> count(classes, 0);
  for (int y : t.labels) ++count[y];
  for (std::size_t g = 0; g < d; ++g) {
    std::fill(sum.begin(), sum.end(), 0);
    std::fill(sq.begin(), sq.end(), 0);
    double all_sum = 0, all_sq = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double v = t.at(i, g);
      sum[t.labels[i]] += v;
      sq[t.labels[i]] += v * v;
      all_sum += v;
      all_sq += v * v;
    }
    for (std::size_t c = 0; c < classes; ++c) {
      const double n1 = count[c], n2 = n - count[c];
      if (n1 == 0 || n2 == 0) continue;
      const double s2 = all_sum - sum[c], q2 = all_sq - sq[c];
      const double m1 = sum[c] / n1, m2 = s2 / n2;
      const double v1 = n1 > 1 ? std::max(0.0, (sq[c] - n1 * m1 * m1) / (n1 - 1)) : 0;
      const double v2 = n2 > 1 ? std::max(0.0, (q2 - n2 * m2 * m2) / (n2 - 1)) : 0;
      const double se = std::sqrt(std::max(v1, kVarianceFloor) / n1 +
                                  std::max(v2, kVarianceFloor) / n2);
      scores[g] = std::max(scores[g], std::fabs(m1 - m2) / se);
    }
  }
  return scores;
}

double Detpr(const CohortTable& real, const CohortTable& syn, std::size_t k) {
  RequireSameGenes(real, syn);
  if (k == 0 || k > real.d()) throw ParameterError("DETPR needs 1 <= K <= d");
  auto top = [k](const std::vector<double>& s) {
    std::vector<std::size_t> idx(s.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&s](std::size_t a, std::size_t b) { return s[a] > s[b]; });
    idx.resize(k);
    std::sort(idx.begin(), idx.end());
    return idx;
  };
  const auto a = top(DeScores(real)), b = top(DeScores(syn));
  std::vector<std::size_t> both;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(both));
  return static_cast<double>(both.size()) / k;
}

double Dcr(const CohortTable& real, const CohortTable& syn) {
  RequireSameGenes(real, syn);
  if (real.rows() == 0 || syn.rows() == 0) throw ParameterError("DCR of an empty cohort");
  const ColumnStats stats = Stats(real);
  const std::vector<double> r = Standardize(real, stats), s = Standardize(syn, stats);
  const std::size_t d = real.d();
  double total = 0;
  for (std::size_t i = 0; i < syn.rows(); ++i) {
    const double* si = &s[i * d];
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < real.rows(); ++j) {
      const double* rj = &r[j * d];
      double dist = 0;
      for (std::size_t g = 0; g < d && dist < best; ++g) {
        const double z = si[g] - rj[g];
        dist += z * z;
      }
      best = std::min(best, dist);
    }
    total += std::sqrt(best);
  }
  return total / syn.rows();
}

std::string FormatReport(const MetricsReport& r) {
  nlohmann::ordered_json j;
  j["tstr_accuracy"] = r.tstr_accuracy;
  j["wasserstein_mean"] = r.wasserstein_mean;
  j["detpr"] = r.detpr;
  j["dcr_mean"] = r.dcr_mean;
  if (std::isinf(r.epsilon)) {
    j["epsilon"] = "inf";
  } else {
    j["epsilon"] = r.epsilon;
  }
  j["delta"] = r.delta;
  j["sigma"] = r.sigma;
  j["d"] = r.d;
  j["N"] = r.n;
  j["seed"] = r.seed;
  return j.dump(2) + "\n";
}

}  // namespace mpcgen
