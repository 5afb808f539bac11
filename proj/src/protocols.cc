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

#include "mpcgen/protocols.h"

#include <exception>
#include <string>
#include <utility>

#include "mpcgen/errors.h"
#include "mpcgen/primitives.h"

namespace mpcgen {
namespace {

// Sum of each length-`len` segment; summing against a public all-ones
// vector needs no interaction.
SharedVector SegmentSums(const SharedVector& v, std::size_t len) {
  const std::size_t segments = len == 0 ? 0 : v.size() / len;
  SharedVector out(v.party(), segments);
  auto of = out.first(), os = out.second();
  const auto vf = v.first(), vs = v.second();
  for (std::size_t s = 0; s < segments; ++s) {
    for (std::size_t i = 0; i < len; ++i) {
      of[s] += vf[s * len + i];
      os[s] += vs[s * len + i];
    }
  }
  return out;
}

// Runs `body`, re-raising any failure nested inside a PhaseError.
template <class Body>
auto InPhase(const char* phase, Body&& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    std::throw_with_nested(PhaseError(phase, e.what()));
  }
}

}  // namespace

PreparedData Prepare(const std::vector<SharedMatrix>& submissions,
                     std::size_t classes) {
  if (submissions.empty()) throw IngestionError("no holder submissions");
  const std::size_t cols = submissions.front().cols();
  if (cols < 2) throw IngestionError("submissions need at least one gene and a label");
  SharedVector rows(submissions.front().party());
  std::size_t n = 0;
  for (std::size_t h = 0; h < submissions.size(); ++h) {
    const SharedMatrix& s = submissions[h];
    if (s.cols() != cols) {
      throw IngestionError("holder " + std::to_string(h + 1) + " has " +
                           std::to_string(s.cols()) + " columns, expected " +
                           std::to_string(cols));
    }
    rows.Append(s.data());
    n += s.rows();
  }
  const SharedMatrix t = SharedMatrix(n, cols, std::move(rows)).Transposed();
  const std::size_t d = cols - 1;
  return PreparedData{SharedMatrix(d, n, t.data().Slice(0, d * n)), t.Row(d),
                      submissions.size(), classes};
}

BinResult Bin(Party& party, const PreparedData& data) {
  const std::size_t n = data.n(), d = data.d();
  const PartyId self = party.id();
  if (n == 0) throw ContractError("cannot bin an empty cohort");

  const SharedMatrix sorted = SortRows(party, data.genes);
  const std::size_t positions[3] = {n / 4, n / 2, 3 * n / 4};
  SharedVector quartiles(self, d * 3);
  for (std::size_t g = 0; g < d; ++g) {
    for (int j = 0; j < 3; ++j) {
      quartiles.set(g * 3 + j, sorted.data().at(g * n + positions[j]));
    }
  }

  // c_j = [x < Q_j] for every gene, sample and quartile in one batch.
  SharedVector lhs(self), rhs(self);
  for (int j = 0; j < 3; ++j) {
    lhs.Append(data.genes.data());
    SharedVector q(self, d * n);
    for (std::size_t g = 0; g < d; ++g) {
      const ReplicatedShare share = quartiles.at(g * 3 + j);
      for (std::size_t i = 0; i < n; ++i) q.set(g * n + i, share);
    }
    rhs.Append(q);
  }
  const SharedVector below = LessThan(party, lhs, rhs);
  SharedVector bins(self, d * n);
  bins.AddConstant(RingValue(3));
  for (int j = 0; j < 3; ++j) bins -= below.Slice(j * d * n, d * n);

  // masks: row f * d + g holds [B_g == f] over the N samples.
  const SharedMatrix onehot = OneHot(party, bins, kBins);
  const SharedMatrix masks(kBins * d, n, onehot.data());
  SharedVector counts_fg = SegmentSums(masks.data(), n);

  std::vector<RowPair> pairs;
  for (std::size_t g = 0; g < d; ++g) {
    for (std::size_t f = 0; f < kBins; ++f) pairs.push_back({f * d + g, g});
  }
  const SharedVector totals = DotRows(party, masks, data.genes, pairs);
  SharedVector counts(self, d * kBins);
  for (std::size_t g = 0; g < d; ++g) {
    for (std::size_t f = 0; f < kBins; ++f) {
      counts.set(g * kBins + f, counts_fg.at(f * d + g));
    }
  }
  SharedVector means = Divide(party, totals, counts, n, DivisorScale::kInteger);

  BinResult result{PreparedData{SharedMatrix(d, n, std::move(bins)), data.labels,
                                data.holders, data.classes},
                   BinModel{std::move(quartiles), std::move(counts), std::move(means)}};
  return result;
}

MarginalSet Marginals(Party& party, const PreparedData& binned) {
  const std::size_t n = binned.n(), d = binned.d(), classes = binned.classes;
  const PartyId self = party.id();
  if (classes < 1) throw ContractError("need at least one class");

  // Label one-hots, reused for every gene; gene one-hots for all genes at
  // once (row f * d + g).
  const SharedMatrix labels = OneHot(party, binned.labels, classes);
  const SharedMatrix onehot = OneHot(party, binned.genes.data(), kBins);
  const SharedMatrix g_rows(kBins * d, n, onehot.data());

  const SharedVector mu_y = SegmentSums(labels.data(), n);
  const SharedVector g_sums = SegmentSums(g_rows.data(), n);
  SharedVector mu_g(self, d * kBins);
  std::vector<RowPair> pairs;
  pairs.reserve(d * kBins * classes);
  for (std::size_t g = 0; g < d; ++g) {
    for (std::size_t f = 0; f < kBins; ++f) {
      mu_g.set(g * kBins + f, g_sums.at(f * d + g));
      for (std::size_t c = 0; c < classes; ++c) pairs.push_back({f * d + g, c});
    }
  }
  SharedVector mu_gy = DotRows(party, g_rows, labels, pairs);
  return MarginalSet{d, classes, std::move(mu_g), mu_y, std::move(mu_gy)};
}

FlatRelease Flatten(const MarginalSet& marginals, const BinModel& model,
                    bool include_bin_means, const FixedPointCodec& codec) {
  FlatRelease release{.values = SharedVector(marginals.mu_g.party())};
  release.d = marginals.d;
  release.classes = marginals.classes;
  release.includes_bin_means = include_bin_means;
  release.values.Append(marginals.mu_g);
  release.values.Append(marginals.mu_y);
  release.values.Append(marginals.mu_gy);
  release.values.MulConstant(RingValue(codec.one()));
  if (include_bin_means) release.values.Append(model.means);
  return release;
}

void AddNoise(Party& party, FlatRelease& release, double sigma) {
  if (!(sigma >= 0)) throw ParameterError("noise scale must be non-negative");
  if (sigma > 0) {
    const SharedVector noise = GaussVector(party, release.values.size());
    release.values += MulPublicFixed(party, noise, sigma);
  }
  release.noised = true;
}

std::optional<ReleasedMarginals> RevealOutputs(Party& party, const FlatRelease& release,
                                               const BinModel& model, bool dp_mode) {
  if (dp_mode && !release.noised) {
    throw ContractError("refusing to reveal marginals that were not noised");
  }
  const std::size_t d = release.d, classes = release.classes;
  const std::size_t tables = d * kBins + classes + d * kBins * classes;
  const std::size_t expected = tables + (release.includes_bin_means ? d * kBins : 0);
  if (release.values.size() != expected) {
    throw ContractError("release length does not match its dimensions");
  }
  SharedVector opened = release.values;
  if (!release.includes_bin_means) opened.Append(model.means);
  const auto plain = Reveal(party, opened, PartyId(1));
  if (!plain) return std::nullopt;

  const FixedPointCodec& codec = party.codec();
  std::vector<double> values;
  values.reserve(plain->size());
  for (std::uint64_t v : *plain) values.push_back(codec.Decode(RingValue(v)));
  ReleasedMarginals out;
  out.d = d;
  out.classes = classes;
  out.bin_means_noised = release.includes_bin_means;
  auto take = [&](std::size_t& offset, std::size_t count) {
    std::vector<double> part(values.begin() + offset, values.begin() + offset + count);
    offset += count;
    return part;
  };
  std::size_t offset = 0;
  out.mu_g = take(offset, d * kBins);
  out.mu_y = take(offset, classes);
  out.mu_gy = take(offset, d * kBins * classes);
  out.bin_means = take(offset, d * kBins);
  return out;
}

std::optional<ReleasedMarginals> RunServer(Party& party,
                                           const std::vector<SharedMatrix>& submissions,
                                           const ServerOptions& options) {
  const PreparedData data =
      InPhase("prepare", [&] { return Prepare(submissions, options.classes); });
  BinResult bin = InPhase("bin", [&] { return Bin(party, data); });
  const MarginalSet marginals =
      InPhase("marginals", [&] { return Marginals(party, bin.binned); });
  FlatRelease release = InPhase("noise", [&] {
    FlatRelease r = Flatten(marginals, bin.model, options.noise_bin_means, party.codec());
    AddNoise(party, r, options.sigma);
    return r;
  });
  auto out = InPhase("reveal", [&] {
    return RevealOutputs(party, release, bin.model, options.sigma > 0);
  });
  if (out) {
    out->n = data.n();
    out->sigma = options.sigma;
  }
  return out;
}

}  // namespace mpcgen
