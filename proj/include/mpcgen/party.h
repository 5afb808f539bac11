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

#ifndef MPCGEN_PARTY_H_
#define MPCGEN_PARTY_H_

#include <array>
#include <chrono>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <type_traits>
#include <variant>
#include <vector>

#include "mpcgen/errors.h"
#include "mpcgen/prf.h"
#include "mpcgen/ring.h"
#include "mpcgen/sharing.h"
#include "mpcgen/transport.h"

namespace mpcgen {

// Execution context of one server: its channel, correlated randomness, codec
// and the round counter that tags every frame. Single-threaded.
class Party {
 public:
  Party(Channel& channel, ZeroShareSource randomness,
        FixedPointCodec codec = FixedPointCodec());

  // One-time handshake: each party sends the seed it shares with its
  // successor and receives the seed it shares with its predecessor.
  static Party Setup(Channel& channel, const Seed& own_seed,
                     FixedPointCodec codec = FixedPointCodec());

  PartyId id() const { return channel_->self(); }
  const FixedPointCodec& codec() const { return codec_; }
  ZeroShareSource& randomness() { return randomness_; }
  Channel& channel() { return *channel_; }
  const CommStats& stats() const { return channel_->stats(); }

  // Starts a new communication round; all parties advance in lockstep.
  void NextRound() { ++round_; }
  std::uint64_t round() const { return round_; }

  void Send(PartyId to, std::vector<std::uint64_t> payload);
  std::vector<std::uint64_t> Receive(PartyId from);

 private:
  Channel* channel_;
  ZeroShareSource randomness_;
  FixedPointCodec codec_;
  std::uint64_t round_ = 0;
};

// Seed a party contributes to the handshake when runs must be reproducible.
Seed PartySeed(std::uint64_t master_seed, PartyId party);

struct LocalRunOptions {
  std::uint64_t seed = 0;
  std::chrono::milliseconds timeout = kDefaultRoundTimeout;
  FixedPointCodec codec = FixedPointCodec();
};

template <class T>
struct LocalRunResult {
  std::array<T, 3> outputs;
  std::array<std::uint64_t, 3> transcripts{};
  std::array<CommStats, 3> stats{};
};

// Runs `protocol(Party&)` for S1, S2 and S3 on three threads over an
// in-memory network. If any party throws, the network is aborted so the
// others stop waiting, and the first failure is rethrown.
template <class Protocol>
auto RunThreePartyLocal(Protocol&& protocol, const LocalRunOptions& options = {}) {
  using Raw = std::invoke_result_t<Protocol&, Party&>;
  using Out = std::conditional_t<std::is_void_v<Raw>, std::monostate, Raw>;
  LocalNetwork network(options.timeout);
  std::array<std::optional<Out>, 3> outputs;
  LocalRunResult<Out> result;
  std::mutex mu;
  std::exception_ptr first_error;

  auto body = [&](PartyId id) {
    try {
      Channel& channel = network.endpoint(id);
      Party party = Party::Setup(channel, PartySeed(options.seed, id), options.codec);
      if constexpr (std::is_void_v<Raw>) {
        protocol(party);
        outputs[id.slot()].emplace();
      } else {
        outputs[id.slot()].emplace(protocol(party));
      }
    } catch (...) {
      {
        std::lock_guard lock(mu);
        if (!first_error) first_error = std::current_exception();
      }
      network.Abort("aborted: another party failed");
    }
  };
  std::array<std::thread, 3> threads = {std::thread(body, PartyId(1)),
                                        std::thread(body, PartyId(2)),
                                        std::thread(body, PartyId(3))};
  for (auto& t : threads) t.join();
  if (first_error) std::rethrow_exception(first_error);
  for (PartyId p : kAllParties) {
    result.outputs[p.slot()] = std::move(*outputs[p.slot()]);
    result.transcripts[p.slot()] = network.endpoint(p).transcript_hash();
    result.stats[p.slot()] = network.endpoint(p).stats();
  }
  return result;
}

}  // namespace mpcgen

#endif  // MPCGEN_PARTY_H_
