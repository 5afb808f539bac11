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

#include "mpcgen/pipeline.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <memory>
#include <mutex>
#include <thread>
#include <tuple>

#include "mpcgen/errors.h"
#include "mpcgen/prf.h"

namespace mpcgen {
namespace {

std::chrono::milliseconds Timeout(const Config& config) {
  return std::chrono::milliseconds(static_cast<std::int64_t>(std::ceil(config.timeout_s * 1000)));
}

}  // namespace

std::array<SharedMatrix, 3> ShareRows(const CohortTable& block, std::size_t first_row,
                                      std::uint64_t seed, const FixedPointCodec& codec) {
  return ShareRows(block, first_row, DeriveSeed("mpcgen/holder-rows", seed), codec);
}

std::array<SharedMatrix, 3> ShareRows(const CohortTable& block, std::size_t first_row,
                                      const Seed& key, const FixedPointCodec& codec) {
  const std::size_t rows = block.rows(), cols = block.d() + 1;
  std::array<SharedMatrix, 3> out = {SharedMatrix(PartyId(1), rows, cols),
                                     SharedMatrix(PartyId(2), rows, cols),
                                     SharedMatrix(PartyId(3), rows, cols)};
  for (std::size_t i = 0; i < rows; ++i) {
    PrfStream rng(key, first_row + i);
    for (std::size_t c = 0; c < cols; ++c) {
      const RingValue v = c < block.d()
                              ? codec.Encode(block.at(i, c))
                              : RingValue(static_cast<std::uint64_t>(block.labels[i]));
      const auto shares = Share(v, rng);
      for (int p = 0; p < 3; ++p) out[p].data().set(i * cols + c, shares[p]);
    }
  }
  return out;
}

std::vector<std::array<SharedMatrix, 3>> ShareHolders(const CohortTable& table,
                                                      std::size_t holders, std::uint64_t seed,
                                                      const FixedPointCodec& codec) {
  const auto offsets = HolderOffsets(table.rows(), holders);
  std::vector<std::array<SharedMatrix, 3>> out;
  for (std::size_t h = 0; h < holders; ++h) {
    out.push_back(
        ShareRows(table.Slice(offsets[h], offsets[h + 1]), offsets[h], seed, codec));
  }
  return out;
}

DPParams ResolveNoise(const Config& config, std::size_t d) {
  DPParams dp = Calibrate(config.epsilon, config.delta, d);
  if (config.sigma) dp.sigma = *config.sigma;
  return dp;
}

ServerRun RunServers(const std::vector<std::array<SharedMatrix, 3>>& submissions,
                     const ServerOptions& options, const Config& config,
                     TransportKind transport) {
  const FixedPointCodec codec(config.frac_bits);
  auto inputs = [&](PartyId id) {
    std::vector<SharedMatrix> mine;
    for (const auto& holder : submissions) mine.push_back(holder[id.slot()]);
    return mine;
  };
  ServerRun run;
  const auto start = std::chrono::steady_clock::now();
  if (transport == TransportKind::kLocal) {
    LocalRunOptions local{.seed = config.seed, .timeout = Timeout(config), .codec = codec};
    auto result = RunThreePartyLocal(
        [&](Party& party) { return RunServer(party, inputs(party.id()), options); }, local);
    run.marginals = std::move(*result.outputs[0]);
    run.stats = result.stats;
  } else {
    std::array<std::unique_ptr<TcpListener>, 3> listeners;
    std::array<Endpoint, 3> endpoints;
    for (int i = 0; i < 3; ++i) {
      listeners[i] = std::make_unique<TcpListener>(TcpListener::Bind({"127.0.0.1", 0}));
      endpoints[i] = Endpoint{"127.0.0.1", listeners[i]->port()};
    }
    std::mutex mu;
    std::exception_ptr first_error;
    std::vector<std::thread> threads;
    for (PartyId id : kAllParties) {
      threads.emplace_back([&, id] {
        try {
          auto channel = TcpChannel::Connect(id, *listeners[id.slot()], endpoints, Timeout(config));
          Party party = Party::Setup(*channel, PartySeed(config.seed, id), codec);
          auto out = RunServer(party, inputs(id), options);
          std::lock_guard lock(mu);
          if (out) run.marginals = std::move(*out);
          run.stats[id.slot()] = channel->stats();
        } catch (...) {
          std::lock_guard lock(mu);
          if (!first_error) first_error = std::current_exception();
        }
      });
    }
    for (auto& t : threads) t.join();
    if (first_error) std::rethrow_exception(first_error);
  }
  run.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return run;
}

std::optional<ReleasedMarginals> RunServerProcess(PartyId self,
                                                  const std::vector<SharedMatrix>& submissions,
                                                  const ServerOptions& options,
                                                  const Config& config, const Seed& own_seed) {
  std::array<Endpoint, 3> endpoints;
  for (int i = 0; i < 3; ++i) endpoints[i] = Endpoint::Parse(config.parties[i]);
  TcpListener listener = TcpListener::Bind(endpoints[self.slot()]);
  auto channel = TcpChannel::Connect(self, listener, endpoints, Timeout(config));
  Party party = Party::Setup(*channel, own_seed, FixedPointCodec(config.frac_bits));
  return RunServer(party, submissions, options);
}

CohortTable Synthesize(const ReleaseFile& release, std::size_t rows, std::uint64_t seed) {
  const StarModel model = EstimateModel(release.marginals);
  const DiscreteRows discrete = Sample(model, rows, seed);
  return InverseBin(discrete, release.marginals.bin_means, release.gene_names,
                    release.marginals.classes);
}

MetricsReport Evaluate(const CohortTable& train, const CohortTable& test,
                       const CohortTable& synthetic, const Config& config,
                       const DPParams& dp, std::vector<std::string>* warnings) {
  MetricsReport r;
  r.tstr_accuracy = Tstr(synthetic, test, {}, warnings);
  r.wasserstein_mean = Wasserstein(train, synthetic);
  r.detpr = Detpr(train, synthetic, std::min(config.detpr_k, train.d()));
  r.dcr_mean = Dcr(train, synthetic);
  r.epsilon = dp.epsilon;
  r.delta = dp.delta;
  r.sigma = dp.sigma;
  r.d = train.d();
  r.n = train.rows();
  r.seed = config.seed;
  return r;
}

EndToEndResult RunEndToEnd(const CohortTable& cohort, const Config& config,
                           TransportKind transport) {
  ValidateConfig(config);
  EndToEndResult out;
  std::tie(out.train, out.test) = TrainTestSplit(cohort, config.test_fraction, config.seed);
  const std::size_t classes = config.classes > 0 ? config.classes : cohort.classes;
  out.train.classes = out.test.classes = classes;

  const FixedPointCodec codec(config.frac_bits);
  const DPParams dp = ResolveNoise(config, cohort.d());
  const auto submissions = ShareHolders(out.train, config.holders, config.seed, codec);
  const ServerOptions options{
      .classes = classes, .sigma = dp.sigma, .noise_bin_means = config.noise_bin_means};
  ServerRun run = RunServers(submissions, options, config, transport);

  out.release = ReleaseFile{dp, cohort.gene_names, std::move(run.marginals)};
  out.stats = run.stats;
  out.server_seconds = run.seconds;
  const std::size_t n_syn = config.n_syn > 0 ? config.n_syn : out.train.rows();
  out.synthetic = Synthesize(out.release, n_syn, config.seed);
  out.report = Evaluate(out.train, out.test, out.synthetic, config, dp, &out.warnings);
  return out;
}

}  // namespace mpcgen
