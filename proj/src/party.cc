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

#include "mpcgen/party.h"

#include <cstring>

namespace mpcgen {
namespace {

std::vector<std::uint64_t> SeedToWords(const Seed& seed) {
  std::vector<std::uint64_t> words(seed.size() / 8);
  std::memcpy(words.data(), seed.data(), seed.size());
  return words;
}

Seed WordsToSeed(const std::vector<std::uint64_t>& words) {
  if (words.size() * 8 != Seed().size()) {
    throw IntegrityError("malformed seed in setup handshake");
  }
  Seed seed;
  std::memcpy(seed.data(), words.data(), seed.size());
  return seed;
}

}  // namespace

Party::Party(Channel& channel, ZeroShareSource randomness, FixedPointCodec codec)
    : channel_(&channel), randomness_(std::move(randomness)), codec_(codec) {
  if (randomness_.party() != channel.self()) {
    throw ContractError("randomness belongs to another party");
  }
}

Party Party::Setup(Channel& channel, const Seed& own_seed, FixedPointCodec codec) {
  if (codec.total_bits() != 64) {
    throw ParameterError("the protocol engine runs in Z_2^64 only");
  }
  const PartyId self = channel.self();
  const std::uint64_t tag = 0;
  channel.Send(self.next(), RoundMessage{tag, SeedToWords(own_seed)});
  const Seed with_prev = WordsToSeed(channel.Receive(self.prev(), tag).payload);
  return Party(channel, ZeroShareSource(self, with_prev, own_seed), codec);
}

void Party::Send(PartyId to, std::vector<std::uint64_t> payload) {
  channel_->Send(to, RoundMessage{round_, std::move(payload)});
}

std::vector<std::uint64_t> Party::Receive(PartyId from) {
  return channel_->Receive(from, round_).payload;
}

Seed PartySeed(std::uint64_t master_seed, PartyId party) {
  return DeriveSeed("mpcgen/party-seed", master_seed,
                    static_cast<std::uint64_t>(party.index()));
}

}  // namespace mpcgen
