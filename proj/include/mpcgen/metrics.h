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

#ifndef MPCGEN_METRICS_H_
#define MPCGEN_METRICS_H_

#include <cstdint>
#include <string>
#include <vector>

#include "mpcgen/cohort.h"

// Utility, fidelity and memorisation scores comparing a synthetic cohort to
// real data. All functions are pure and invariant to row order.
namespace mpcgen {

struct TstrOptions {
  int epochs = 500;
  double learning_rate = 0.1;
  double l2 = 1e-4;
};

// Multinomial logistic regression, full-batch gradient descent from zero
// weights, features standardised with the training set's statistics.
// Classes absent from `train` are appended to `warnings` (when given) and the
// score is still computed.
double Tstr(const CohortTable& train, const CohortTable& test, const TstrOptions& options = {},
            std::vector<std::string>* warnings = nullptr);

// Exact 1-D W1 per gene, averaged over genes. Samples may differ in size.
double Wasserstein(const CohortTable& real, const CohortTable& syn);
double Wasserstein1D(std::vector<double> a, std::vector<double> b);

// Per gene the largest one-vs-rest |Welch t| over classes; variances are
// floored at 1e-12.
std::vector<double> DeScores(const CohortTable& table);
// |topK(real) & topK(syn)| / K. Ties rank the lower gene index first.
double Detpr(const CohortTable& real, const CohortTable& syn, std::size_t k);

// Mean Euclidean distance from each synthetic row to its nearest real row,
// both standardised with the real data's per-gene mean and deviation.
double Dcr(const CohortTable& real, const CohortTable& syn);

struct MetricsReport {
  double tstr_accuracy = 0;
  double wasserstein_mean = 0;
  double detpr = 0;
  double dcr_mean = 0;
  double epsilon = 0;
  double delta = 0;
  double sigma = 0;
  std::size_t d = 0;
  std::size_t n = 0;
  std::uint64_t seed = 0;
};

// Single JSON object with a fixed key order.
std::string FormatReport(const MetricsReport& report);

}  // namespace mpcgen

#endif  // MPCGEN_METRICS_H_
