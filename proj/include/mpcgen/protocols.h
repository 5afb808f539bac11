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

#ifndef MPCGEN_PROTOCOLS_H_
#define MPCGEN_PROTOCOLS_H_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mpcgen/party.h"
#include "mpcgen/sharing.h"

// Server-side pipeline: pool the holders' submissions, discretise every gene
// into quartile bins, count one- and two-way marginals, perturb them, and
// open the result to S1.
namespace mpcgen {

inline constexpr std::size_t kBins = 4;

// Pooled cohort in gene-major layout. Genes are fixed-point, labels integer.
struct PreparedData {
  SharedMatrix genes;  // d x N
  SharedVector labels;  // N
  std::size_t holders = 0;
  std::size_t classes = 0;

  std::size_t n() const { return genes.cols(); }
  std::size_t d() const { return genes.rows(); }
};

// Each submission is one holder's N_i x (d+1) table whose last column is the
// label. Holders are concatenated in order. Throws IngestionError when the
// column counts disagree.
PreparedData Prepare(const std::vector<SharedMatrix>& submissions,
                     std::size_t classes);

struct BinModel {
  SharedVector quartiles;  // d x 3, Q0 <= Q1 <= Q2 per gene
  SharedVector counts;     // d x 4, integer
  SharedVector means;      // d x 4, fixed; 0 for empty bins
};

// Replaces every gene value by its bin index in {0..3}: 3 minus the number
// of quartiles it lies strictly below. Quartiles are the sorted values at
// positions floor(N/4), floor(N/2) and floor(3N/4).
struct BinResult {
  PreparedData binned;
  BinModel model;
};
BinResult Bin(Party& party, const PreparedData& data);

// Exact contingency counts, all integer scale.
struct MarginalSet {
  std::size_t d = 0;
  std::size_t classes = 0;
  SharedVector mu_g;   // d x 4: [g * 4 + f]
  SharedVector mu_y;   // C
  SharedVector mu_gy;  // d x 4 x C: [g * 4C + f * C + c]
};

// `binned` must hold bin indices.
MarginalSet Marginals(Party& party, const PreparedData& binned);

// Fixed-point concatenation (mu_g, mu_y, mu_gy[, bin means]) handed to the
// noise step and then opened.
struct FlatRelease {
  std::size_t d = 0;
  std::size_t classes = 0;
  bool includes_bin_means = false;
  bool noised = false;
  SharedVector values{PartyId(1)};
};

// Counts are lifted to fixed point here.
FlatRelease Flatten(const MarginalSet& marginals, const BinModel& model,
                    bool include_bin_means, const FixedPointCodec& codec);
// Adds sigma * (Irwin-Hall normal) to every entry in one batch.
void AddNoise(Party& party, FlatRelease& release, double sigma);

// Plaintext outputs as held by S1.
struct ReleasedMarginals {
  std::size_t d = 0;
  std::size_t classes = 0;
  std::size_t n = 0;
  double sigma = 0;
  bool bin_means_noised = false;
  std::vector<double> mu_g;
  std::vector<double> mu_y;
  std::vector<double> mu_gy;
  std::vector<double> bin_means;

  double g(std::size_t gene, std::size_t bin) const { return mu_g[gene * kBins + bin]; }
  double gy(std::size_t gene, std::size_t bin, std::size_t c) const {
    return mu_gy[(gene * kBins + bin) * classes + c];
  }
  double mean(std::size_t gene, std::size_t bin) const {
    return bin_means[gene * kBins + bin];
  }
};

// Opens the release (and, when they were left out of it, the bin means) to
// S1; other parties get nullopt. With `dp_mode` set, refuses to open a
// release that has not been through AddNoise (ContractError).
std::optional<ReleasedMarginals> RevealOutputs(Party& party,
                                               const FlatRelease& release,
                                               const BinModel& model, bool dp_mode);

struct ServerOptions {
  std::size_t classes = 2;
  double sigma = 0;
  bool noise_bin_means = true;
};

// Prepare, Bin, Marginals, noise and reveal, in order. Errors are wrapped in
// PhaseError naming the phase that failed.
std::optional<ReleasedMarginals> RunServer(Party& party,
                                           const std::vector<SharedMatrix>& submissions,
                                           const ServerOptions& options);

}  // namespace mpcgen

#endif  // MPCGEN_PROTOCOLS_H_
