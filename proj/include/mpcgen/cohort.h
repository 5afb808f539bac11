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

#ifndef MPCGEN_COHORT_H_
#define MPCGEN_COHORT_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

// Plaintext cohort tables: CSV ingest and output, row partitioning, and a
// generator for desk-scale test cohorts.
namespace mpcgen {

struct CohortTable {
  std::vector<std::string> gene_names;
  std::size_t classes = 0;
  std::vector<double> values;  // rows x d, row-major
  std::vector<int> labels;

  std::size_t rows() const { return labels.size(); }
  std::size_t d() const { return gene_names.size(); }
  double at(std::size_t row, std::size_t gene) const { return values[row * d() + gene]; }
  // Rows [begin, end) as a new table.
  CohortTable Slice(std::size_t begin, std::size_t end) const;
};

struct IngestOptions {
  // 0 infers max label + 1.
  std::size_t classes = 0;
  bool log1p = false;
};

// CSV with a header row; the column named `label` holds integer classes and
// every other column is a gene. Errors carry 1-based line and column
// coordinates (IngestionError).
CohortTable ReadCohortCsv(const std::filesystem::path& path,
                          const IngestOptions& options = {});
CohortTable ParseCohortCsv(const std::string& text, const IngestOptions& options = {});
// Header `genes..., label`; values with six decimals.
void WriteCohortCsv(const std::filesystem::path& path, const CohortTable& table);
std::string FormatCohortCsv(const CohortTable& table);

// M contiguous blocks whose sizes differ by at most one, larger blocks first
// (10 rows over 3 holders: 4, 3, 3). Throws ParameterError unless 1 <= M <= N.
std::vector<CohortTable> SplitHolders(const CohortTable& table, std::size_t holders);
// Row offsets of the blocks produced by SplitHolders.
std::vector<std::size_t> HolderOffsets(std::size_t rows, std::size_t holders);

// Seeded shuffle, then the first round(test_fraction * N) rows become the
// test set. Returns (train, test).
std::pair<CohortTable, CohortTable> TrainTestSplit(const CohortTable& table,
                                                   double test_fraction,
                                                   std::uint64_t seed);

// Gaussian-mixture cohort with RNA-seq-like magnitudes: per class a base
// profile, a subset of differentially expressed genes shifted per class,
// unit noise, clipped at zero.
struct DeskCohortOptions {
  std::size_t rows = 800;
  std::size_t genes = 50;
  std::size_t classes = 4;
  double de_fraction = 0.4;
  double de_shift_sd = 2.0;
  double noise_sd = 1.0;
  std::uint64_t seed = 1;
};
CohortTable GenerateDeskCohort(const DeskCohortOptions& options);

}  // namespace mpcgen

#endif  // MPCGEN_COHORT_H_
