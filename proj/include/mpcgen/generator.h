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

#ifndef MPCGEN_GENERATOR_H_
#define MPCGEN_GENERATOR_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "mpcgen/cohort.h"
#include "mpcgen/protocols.h"

// Release-side synthesis: calibrate the Gaussian noise, fit the label-hub
// star model to the noisy tables, sample discrete records and map bins back
// to values.
namespace mpcgen {

struct DPParams {
  double epsilon = 1.0;  // may be +infinity: no noise
  double delta = 1e-5;
  double sensitivity = 0;
  double sigma = 0;
};

// L2 sensitivity of the released tables under add/remove-one adjacency: one
// record moves one cell of mu_y, one cell of mu_g per gene and one cell of
// mu_gy per gene.
double Sensitivity(std::size_t d);

// Classical Gaussian mechanism. Throws ParameterError for epsilon <= 0,
// delta outside (0, 1) or d = 0.
DPParams Calibrate(double epsilon, double delta, std::size_t d);

struct StarModel {
  std::size_t d = 0;
  std::size_t classes = 0;
  std::vector<double> p_y;   // C
  std::vector<double> p_gy;  // d x C x 4: [(g * C + c) * 4 + f]
  // Mean absolute gap between the noisy one-way gene tables and the row
  // sums of the two-way tables; informational only.
  double one_way_gap = 0;

  double cond(std::size_t g, std::size_t c, std::size_t f) const {
    return p_gy[(g * classes + c) * kBins + f];
  }
};

// Clip negative cells to zero and normalise. A gene whose class column is
// all zero becomes uniform over the bins. Throws DegenerateInputError when
// every class count clips to zero.
StarModel EstimateModel(const ReleasedMarginals& release);

struct DiscreteRows {
  std::size_t d = 0;
  std::vector<std::uint8_t> bins;  // N x d
  std::vector<int> labels;

  std::size_t rows() const { return labels.size(); }
};

// Row i draws its label and then every gene bin independently given the
// label, from a counter-based stream keyed on (seed, i), so any row can be
// regenerated on its own.
DiscreteRows Sample(const StarModel& model, std::size_t rows, std::uint64_t seed);

// Replaces bin b of gene g by bin_means[g * 4 + b].
CohortTable InverseBin(const DiscreteRows& rows, const std::vector<double>& bin_means,
                       const std::vector<std::string>& gene_names, std::size_t classes);

// Release file exchanged between the server run and `generate`.
struct ReleaseFile {
  DPParams dp;
  std::vector<std::string> gene_names;
  ReleasedMarginals marginals;
};

void WriteReleaseJson(const std::filesystem::path& path, const ReleaseFile& release);
// Throws IngestionError on malformed files.
ReleaseFile ReadReleaseJson(const std::filesystem::path& path);

}  // namespace mpcgen

#endif  // MPCGEN_GENERATOR_H_
