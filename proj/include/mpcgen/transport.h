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

#ifndef MPCGEN_TRANSPORT_H_
#define MPCGEN_TRANSPORT_H_

#include <array>
#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mpcgen/party_id.h"

namespace mpcgen {

using namespace std::chrono_literals;

inline constexpr std::chrono::milliseconds kDefaultRoundTimeout = 60s;

// One round's payload from one party to one peer.
struct RoundMessage {
  std::uint64_t round_tag = 0;
  std::vector<std::uint64_t> payload;
};

// Bytes on the wire for a frame: 4-byte length, 8-byte tag, payload.
inline constexpr std::size_t kFrameHeaderBytes = 12;

// Serializes a frame exactly as the TCP backend writes it.
std::vector<std::uint8_t> EncodeFrame(const RoundMessage& msg);
// Parses the 12-byte header; returns (payload byte length, round tag).
std::pair<std::uint32_t, std::uint64_t> DecodeFrameHeader(
    std::span<const std::uint8_t, kFrameHeaderBytes> header);

// 64-bit FNV-1a, used to fingerprint transcripts and payloads.
class Fnv1a64 {
 public:
  void Update(std::span<const std::uint8_t> bytes);
  void UpdateWord(std::uint64_t word);
  std::uint64_t value() const { return state_; }

 private:
  std::uint64_t state_ = 0xcbf29ce484222325ULL;
};

struct CommStats {
  std::uint64_t messages_sent = 0;
  std::uint64_t ring_elements_sent = 0;
  std::uint64_t bytes_sent = 0;
  std::uint64_t messages_received = 0;
};

// Blocking FIFO of frames from one peer. Closing wakes all waiters.
class MessageQueue {
 public:
  void Push(RoundMessage msg);
  // Throws TimeoutError after `timeout`, TransportError once closed and empty.
  RoundMessage Pop(std::chrono::milliseconds timeout, const std::string& what);
  void Close(const std::string& reason);

 private:
  std::mutex mu_;
  std::condition_variable cv_;
  std::deque<RoundMessage> frames_;
  std::optional<std::string> closed_;
};

// A party's connection to its two peers. Delivery is exactly-once and in
// order per peer; Receive checks that the frame carries the expected round
// tag. Every frame sent or received is folded into a transcript hash.
class Channel {
 public:
  explicit Channel(PartyId self,
                   std::chrono::milliseconds timeout = kDefaultRoundTimeout);
  virtual ~Channel() = default;
  Channel(const Channel&) = delete;
  Channel& operator=(const Channel&) = delete;

  PartyId self() const { return self_; }
  std::chrono::milliseconds timeout() const { return timeout_; }

  void Send(PartyId to, RoundMessage msg);
  RoundMessage Receive(PartyId from, std::uint64_t round_tag);

  std::uint64_t transcript_hash() const { return transcript_.value(); }
  // Hash of inbound frames only: what this party has observed.
  std::uint64_t view_hash() const { return view_.value(); }
  const CommStats& stats() const { return stats_; }

 protected:
  virtual void DoSend(PartyId to, RoundMessage msg) = 0;
  virtual RoundMessage DoReceive(PartyId from, const std::string& what) = 0;

 private:
  void Record(char direction, PartyId peer, const RoundMessage& msg);

  PartyId self_;
  std::chrono::milliseconds timeout_;
  Fnv1a64 transcript_;
  Fnv1a64 view_;
  CommStats stats_;
};

// In-process network for the three-party harness: six directed queues.
class LocalNetwork {
 public:
  explicit LocalNetwork(std::chrono::milliseconds timeout = kDefaultRoundTimeout);
  ~LocalNetwork();

  Channel& endpoint(PartyId party);
  // Fails every pending and future receive; used when one party throws.
  void Abort(const std::string& reason);

 private:
  class LocalChannel;

  std::array<std::array<MessageQueue, 3>, 3> queues_;  // [to][from]
  std::array<std::unique_ptr<LocalChannel>, 3> endpoints_;
};

}  // namespace mpcgen

#endif  // MPCGEN_TRANSPORT_H_
