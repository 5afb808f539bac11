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

#ifndef MPCGEN_PIPELINE_H_
#define MPCGEN_PIPELINE_H_

#include <array>
#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

#include "mpcgen/cohort.h"
#include "mpcgen/config.h"
#include "mpcgen/generator.h"
#include "mpcgen/metrics.h"
#include "mpcgen/protocols.h"
#include "mpcgen/tcp_transport.h"

// End-to-end orchestration: holders share their rows, the three servers
// compute the release, and the release is turned into a synthetic cohort and
// scored.
namespace mpcgen {

// The three servers' submissions from one data holder, each N_i x (d+1) with
// the label last. Row r of the pooled cohort (global index first_row + i) is
// shared with randomness keyed on (key, r) alone, so the servers' inputs do
// not depend on how rows are spread over holders. The key must stay secret
// from the servers: any one of them could otherwise rebuild the component it
// lacks.
std::array<SharedMatrix, 3> ShareRows(const CohortTable& block, std::size_t first_row,
                                      const Seed& key, const FixedPointCodec& codec);
// Reproducible variant keyed on a seed; for tests and simulations.
std::array<SharedMatrix, 3> ShareRows(const CohortTable& block, std::size_t first_row,
                                      std::uint64_t seed, const FixedPointCodec& codec);

// SplitHolders followed by ShareRows per block; result[h][p] is holder h's
// submission to party p+1.
std::vector<std::array<SharedMatrix, 3>> ShareHolders(const CohortTable& table,
                                                      std::size_t holders, std::uint64_t seed,
                                                      const FixedPointCodec& codec);

// Noise parameters for a run: an explicit sigma wins over calibration.
DPParams ResolveNoise(const Config& config, std::size_t d);

enum class TransportKind { kLocal, kTcp };

struct ServerRun {
  ReleasedMarginals marginals;
  std::array<CommStats, 3> stats{};
  double seconds = 0;
};

// All three servers in this process on three threads, over the in-memory
// network or over loopback TCP. Party p receives submissions[h][p-1] for
// every holder h.
ServerRun RunServers(const std::vector<std::array<SharedMatrix, 3>>& submissions,
                     const ServerOptions& options, const Config& config,
                     TransportKind transport = TransportKind::kLocal);

// One server over TCP, for deployments with a process per party. `own_seed`
// is this party's handshake contribution; use RandomSeed() unless the run
// must be reproducible. Returns the release on S1 and nullopt elsewhere.
std::optional<ReleasedMarginals> RunServerProcess(PartyId self,
                                                  const std::vector<SharedMatrix>& submissions,
                                                  const ServerOptions& options,
                                                  const Config& config, const Seed& own_seed);

// Fit, sample and map back to values.
CohortTable Synthesize(const ReleaseFile& release, std::size_t rows, std::uint64_t seed);

// TSTR against `test`; the other metrics against `train`, the rows the
// generator was fitted to.
MetricsReport Evaluate(const CohortTable& train, const CohortTable& test,
                       const CohortTable& synthetic, const Config& config,
                       const DPParams& dp, std::vector<std::string>* warnings = nullptr);

struct EndToEndResult {
  CohortTable train;
  CohortTable test;
  ReleaseFile release;
  CohortTable synthetic;
  MetricsReport report;
  std::array<CommStats, 3> stats{};
  double server_seconds = 0;
  std::vector<std::string> warnings;
};

// Split 80/20 (test_fraction), share over `holders`, run the servers,
// synthesise and score.
EndToEndResult RunEndToEnd(const CohortTable& cohort, const Config& config,
                           TransportKind transport = TransportKind::kLocal);

}  // namespace mpcgen

#endif  // MPCGEN_PIPELINE_H_
