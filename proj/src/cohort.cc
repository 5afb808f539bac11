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

#include "mpcgen/cohort.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include "mpcgen/errors.h"

namespace mpcgen {
namespace {

constexpr const char* kLabelColumn = "label";

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> SplitCells(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    cells.push_back(Trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

std::string Where(std::size_t line, std::size_t col) {
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace

CohortTable CohortTable::Slice(std::size_t begin, std::size_t end) const {
  CohortTable t;
  t.gene_names = gene_names;
  t.classes = classes;
  t.values.assign(values.begin() + begin * d(), values.begin() + end * d());
  t.labels.assign(labels.begin() + begin, labels.begin() + end);
  return t;
}

CohortTable ParseCohortCsv(const std::string& text, const IngestOptions& options) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  // Skip blank lines before the header.
  while (std::getline(in, line)) {
    ++line_no;
    if (!Trim(line).empty()) break;
  }
  if (Trim(line).empty()) throw IngestionError("empty CSV: no header row");
  const auto header = SplitCells(line);
  std::size_t label_col = header.size();
  CohortTable t;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (header[c] == kLabelColumn) {
      if (label_col != header.size()) {
        throw IngestionError("duplicate 'label' column at " + Where(line_no, c + 1));
      }
      label_col = c;
    } else {
      if (header[c].empty()) throw IngestionError("empty column name at " + Where(line_no, c + 1));
      t.gene_names.emplace_back(header[c]);
    }
  }
  if (label_col == header.size()) throw IngestionError("missing 'label' column in header");
  if (t.gene_names.empty()) throw IngestionError("no gene columns in header");

  int max_label = -1;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    const auto cells = SplitCells(line);
    if (cells.size() != header.size()) {
      throw IngestionError("line " + std::to_string(line_no) + " has " +
                           std::to_string(cells.size()) + " cells, expected " +
                           std::to_string(header.size()));
    }
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const std::string_view cell = cells[c];
      const char* end = cell.data() + cell.size();
      if (c == label_col) {
        int label = 0;
        const auto [ptr, ec] = std::from_chars(cell.data(), end, label);
        if (ec != std::errc() || ptr != end || cell.empty()) {
          throw IngestionError("non-integer label '" + std::string(cell) + "' at " +
                               Where(line_no, c + 1));
        }
        if (label < 0 || (options.classes > 0 && label >= static_cast<int>(options.classes))) {
          throw IngestionError("label " + std::to_string(label) + " outside [0, " +
                               std::to_string(options.classes) + ") at " +
                               Where(line_no, c + 1));
        }
        max_label = std::max(max_label, label);
        t.labels.push_back(label);
      } else {
        double v = 0;
        const auto [ptr, ec] = std::from_chars(cell.data(), end, v);
        if (ec != std::errc() || ptr != end || cell.empty() || !std::isfinite(v)) {
          throw IngestionError("non-numeric value '" + std::string(cell) + "' at " +
                               Where(line_no, c + 1));
        }
        if (options.log1p) {
          if (v <= -1) {
            throw IngestionError("log1p undefined for " + std::string(cell) + " at " +
                                 Where(line_no, c + 1));
          }
          v = std::log1p(v);
        }
        t.values.push_back(v);
      }
    }
  }
  if (t.labels.empty()) throw IngestionError("CSV has a header but no rows");
  t.classes = options.classes > 0 ? options.classes : static_cast<std::size_t>(max_label + 1);
  return t;
}

CohortTable ReadCohortCsv(const std::filesystem::path& path, const IngestOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IngestionError("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return ParseCohortCsv(buf.str(), options);
  } catch (const IngestionError& e) {
    throw IngestionError(path.string() + ": " + e.what());
  }
}

std::string FormatCohortCsv(const CohortTable& table) {
  std::string out;
  for (const auto& name : table.gene_names) out += name + ",";
  out += kLabelColumn;
  out += "\n";
  char buf[64];
  for (std::size_t i = 0; i < table.rows(); ++i) {
    for (std::size_t g = 0; g < table.d(); ++g) {
      double v = table.at(i, g);
      if (v == 0) v = 0;  // no "-0.000000"
      std::snprintf(buf, sizeof(buf), "%.6f,", v);
      out += buf;
    }
    out += std::to_string(table.labels[i]);
    out += "\n";
  }
  return out;
}

void WriteCohortCsv(const std::filesystem::path& path, const CohortTable& table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IngestionError("cannot write " + path.string());
  out << FormatCohortCsv(table);
}

std::vector<std::size_t> HolderOffsets(std::size_t rows, std::size_t holders) {
  if (holders < 1 || holders > rows) {
    throw ParameterError("holder count must be in [1, " + std::to_string(rows) + "], got " +
                         std::to_string(holders));
  }
  std::vector<std::size_t> offsets(holders + 1, 0);
  for (std::size_t h = 0; h < holders; ++h) {
    offsets[h + 1] = offsets[h] + rows / holders + (h < rows % holders ? 1 : 0);
  }
  return offsets;
}

std::vector<CohortTable> SplitHolders(const CohortTable& table, std::size_t holders) {
  const auto offsets = HolderOffsets(table.rows(), holders);
  std::vector<CohortTable> parts;
  for (std::size_t h = 0; h < holders; ++h) {
    parts.push_back(table.Slice(offsets[h], offsets[h + 1]));
  }
  return parts;
}

std::pair<CohortTable, CohortTable> TrainTestSplit(const CohortTable& table,
                                                   double test_fraction,
                                                   std::uint64_t seed) {
  if (!(test_fraction > 0 && test_fraction < 1)) {
    throw ParameterError("test fraction must lie in (0, 1)");
  }
  const std::size_t n = table.rows();
  const auto n_test = static_cast<std::size_t>(std::llround(test_fraction * n));
  if (n_test == 0 || n_test == n) throw ParameterError("cohort too small to split");
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  auto pick = [&](std::size_t begin, std::size_t end) {
    CohortTable t;
    t.gene_names = table.gene_names;
    t.classes = table.classes;
    for (std::size_t k = begin; k < end; ++k) {
      const std::size_t i = order[k];
      t.values.insert(t.values.end(), table.values.begin() + i * table.d(),
                      table.values.begin() + (i + 1) * table.d());
      t.labels.push_back(table.labels[i]);
    }
    return t;
  };
  return {pick(n_test, n), pick(0, n_test)};
}

CohortTable GenerateDeskCohort(const DeskCohortOptions& o) {
  if (o.rows == 0 || o.genes == 0 || o.classes < 2) {
    throw ParameterError("desk cohort needs rows, genes and at least two classes");
  }
  std::mt19937_64 rng(o.seed);
  std::uniform_real_distribution<double> base(4.0, 10.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> shift(0.0, o.de_shift_sd);
  std::normal_distribution<double> noise(0.0, o.noise_sd);

  // class x gene mean profile
  std::vector<double> profile(o.classes * o.genes);
  for (std::size_t g = 0; g < o.genes; ++g) {
    const double b = base(rng);
    const bool de = unit(rng) < o.de_fraction;
    for (std::size_t c = 0; c < o.classes; ++c) {
      profile[c * o.genes + g] = b + (de ? shift(rng) : 0.0);
    }
  }
  CohortTable t;
  t.classes = o.classes;
  for (std::size_t g = 0; g < o.genes; ++g) t.gene_names.push_back("gene" + std::to_string(g + 1));
  t.values.reserve(o.rows * o.genes);
  for (std::size_t i = 0; i < o.rows; ++i) {
    const int y = static_cast<int>(rng() % o.classes);
    t.labels.push_back(y);
    for (std::size_t g = 0; g < o.genes; ++g) {
      t.values.push_back(std::max(0.0, profile[y * o.genes + g] + noise(rng)));
    }
  }
  return t;
}

}  // namespace mpcgen
