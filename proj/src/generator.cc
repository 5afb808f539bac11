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

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>

#include "json.hpp"
#include "mpcgen/errors.h"
#include "mpcgen/prf.h"

namespace mpcgen {
namespace {

using Json = nlohmann::ordered_json;

// Index drawn from a discrete distribution given a uniform in [0, 1).
std::size_t Draw(const double* p, std::size_t n, double u) {
  double acc = 0;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    acc += p[k];
    if (u < acc) return k;
  }
  return n - 1;
}

double ToUnit(std::uint64_t w) { return static_cast<double>(w >> 11) * 0x1p-53; }

void Normalize(double* p, std::size_t n) {
  const double total = std::accumulate(p, p + n, 0.0);
  if (total > 0) {
    for (std::size_t k = 0; k < n; ++k) p[k] /= total;
  } else {
    std::fill(p, p + n, 1.0 / n);
  }
}

template <class T>
std::vector<T> Field(const Json& j, const char* key) {
  if (!j.contains(key)) throw IngestionError(std::string("release file lacks '") + key + "'");
  return j.at(key).get<std::vector<T>>();
}

}  // namespace

double Sensitivity(std::size_t d) { return std::sqrt(2.0 * d + 1.0); }

DPParams Calibrate(double epsilon, double delta, std::size_t d) {
  if (!(epsilon > 0)) throw ParameterError("epsilon must be positive");
  if (!(delta > 0 && delta < 1)) throw ParameterError("delta must lie in (0, 1)");
  if (d == 0) throw ParameterError("need at least one gene");
  DPParams p;
  p.epsilon = epsilon;
  p.delta = delta;
  p.sensitivity = Sensitivity(d);
  p.sigma = std::isinf(epsilon)
                ? 0.0
                : p.sensitivity * std::sqrt(2.0 * std::log(1.25 / delta)) / epsilon;
  return p;
}

StarModel EstimateModel(const ReleasedMarginals& release) {
  const std::size_t d = release.d, classes = release.classes;
  if (release.mu_y.size() != classes || release.mu_gy.size() != d * kBins * classes ||
      release.mu_g.size() != d * kBins) {
    throw ContractError("released tables do not match their dimensions");
  }
  StarModel model;
  model.d = d;
  model.classes = classes;
  model.p_y.resize(classes);
  for (std::size_t c = 0; c < classes; ++c) model.p_y[c] = std::max(0.0, release.mu_y[c]);
  if (std::all_of(model.p_y.begin(), model.p_y.end(), [](double v) { return v == 0; })) {
    throw DegenerateInputError("every class count is non-positive after noise");
  }
  Normalize(model.p_y.data(), classes);

  model.p_gy.resize(d * classes * kBins);
  double gap = 0;
  for (std::size_t g = 0; g < d; ++g) {
    for (std::size_t c = 0; c < classes; ++c) {
      double* col = &model.p_gy[(g * classes + c) * kBins];
      for (std::size_t f = 0; f < kBins; ++f) col[f] = std::max(0.0, release.gy(g, f, c));
      Normalize(col, kBins);
    }
    for (std::size_t f = 0; f < kBins; ++f) {
      double row = 0;
      for (std::size_t c = 0; c < classes; ++c) row += release.gy(g, f, c);
      gap += std::fabs(row - release.g(g, f));
    }
  }
  model.one_way_gap = d == 0 ? 0 : gap / (d * kBins);
  return model;
}

DiscreteRows Sample(const StarModel& model, std::size_t rows, std::uint64_t seed) {
  const Seed key = DeriveSeed("mpcgen/sample", seed);
  DiscreteRows out;
  out.d = model.d;
  out.bins.resize(rows * model.d);
  out.labels.resize(rows);
  std::vector<std::uint64_t> words(model.d + 1);
  for (std::size_t i = 0; i < rows; ++i) {
    PrfStream stream(key, i);
    stream.Fill(words);
    const std::size_t y = Draw(model.p_y.data(), model.classes, ToUnit(words[0]));
    out.labels[i] = static_cast<int>(y);
    for (std::size_t g = 0; g < model.d; ++g) {
      const double* p = &model.p_gy[(g * model.classes + y) * kBins];
      out.bins[i * model.d + g] = static_cast<std::uint8_t>(Draw(p, kBins, ToUnit(words[g + 1])));
    }
  }
  return out;
}

CohortTable InverseBin(const DiscreteRows& rows, const std::vector<double>& bin_means,
                       const std::vector<std::string>& gene_names, std::size_t classes) {
  if (gene_names.size() != rows.d || bin_means.size() != rows.d * kBins) {
    throw ContractError("bin means do not match the number of genes");
  }
  CohortTable t;
  t.gene_names = gene_names;
  t.classes = classes;
  t.labels = rows.labels;
  t.values.resize(rows.bins.size());
  for (std::size_t i = 0; i < rows.rows(); ++i) {
    for (std::size_t g = 0; g < rows.d; ++g) {
      t.values[i * rows.d + g] = bin_means[g * kBins + rows.bins[i * rows.d + g]];
    }
  }
  return t;
}

void WriteReleaseJson(const std::filesystem::path& path, const ReleaseFile& release) {
  const ReleasedMarginals& m = release.marginals;
  Json j;
  j["format"] = "mpcgen-release-1";
  if (std::isinf(release.dp.epsilon)) {
    j["epsilon"] = "inf";
  } else {
    j["epsilon"] = release.dp.epsilon;
  }
  j["delta"] = release.dp.delta;
  j["sensitivity"] = release.dp.sensitivity;
  j["sigma"] = release.dp.sigma;
  j["n"] = m.n;
  j["d"] = m.d;
  j["classes"] = m.classes;
  j["bin_means_noised"] = m.bin_means_noised;
  j["gene_names"] = release.gene_names;
  j["mu_g"] = m.mu_g;
  j["mu_y"] = m.mu_y;
  j["mu_gy"] = m.mu_gy;
  j["bin_means"] = m.bin_means;
  std::ofstream out(path);
  if (!out) throw IngestionError("cannot write " + path.string());
  out << j.dump(1) << "\n";
}

ReleaseFile ReadReleaseJson(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IngestionError("cannot open release file " + path.string());
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::exception& e) {
    throw IngestionError(path.string() + ": " + e.what());
  }
  ReleaseFile r;
  try {
    if (j.value("format", "") != "mpcgen-release-1") {
      throw IngestionError(path.string() + ": not an mpcgen release file");
    }
    const Json& eps = j.at("epsilon");
    r.dp.epsilon = eps.is_string() ? std::numeric_limits<double>::infinity()
                                   : eps.get<double>();
    r.dp.delta = j.at("delta").get<double>();
    r.dp.sensitivity = j.at("sensitivity").get<double>();
    r.dp.sigma = j.at("sigma").get<double>();
    ReleasedMarginals& m = r.marginals;
    m.n = j.at("n").get<std::size_t>();
    m.d = j.at("d").get<std::size_t>();
    m.classes = j.at("classes").get<std::size_t>();
    m.sigma = r.dp.sigma;
    m.bin_means_noised = j.at("bin_means_noised").get<bool>();
    r.gene_names = Field<std::string>(j, "gene_names");
    m.mu_g = Field<double>(j, "mu_g");
    m.mu_y = Field<double>(j, "mu_y");
    m.mu_gy = Field<double>(j, "mu_gy");
    m.bin_means = Field<double>(j, "bin_means");
  } catch (const Json::exception& e) {
    throw IngestionError(path.string() + ": " + e.what());
  }
  const ReleasedMarginals& m = r.marginals;
  if (r.gene_names.size() != m.d || m.mu_g.size() != m.d * kBins ||
      m.mu_y.size() != m.classes || m.mu_gy.size() != m.d * kBins * m.classes ||
      m.bin_means.size() != m.d * kBins) {
    throw IngestionError(path.string() + ": table sizes do not match d and classes");
  }
  return r;
}

}  // namespace mpcgen
