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

#include "mpcgen/transport.h"

#include <cstring>
#include <limits>

#include "mpcgen/errors.h"

namespace mpcgen {

std::vector<std::uint8_t> EncodeFrame(const RoundMessage& msg) {
  const std::size_t payload_bytes = msg.payload.size() * 8;
  if (payload_bytes > std::numeric_limits<std::uint32_t>::max()) {
    throw TransportError("frame payload exceeds 4 GiB");
  }
  std::vector<std::uint8_t> out(kFrameHeaderBytes + payload_bytes);
  const auto len = static_cast<std::uint32_t>(payload_bytes);
  for (int i = 0; i < 4; ++i) out[i] = static_cast<std::uint8_t>(len >> (8 * i));
  for (int i = 0; i < 8; ++i) {
    out[4 + i] = static_cast<std::uint8_t>(msg.round_tag >> (8 * i));
  }
  std::uint8_t* p = out.data() + kFrameHeaderBytes;
  for (std::uint64_t w : msg.payload) {
    for (int i = 0; i < 8; ++i) *p++ = static_cast<std::uint8_t>(w >> (8 * i));
  }
  return out;
}

std::pair<std::uint32_t, std::uint64_t> DecodeFrameHeader(
    std::span<const std::uint8_t, kFrameHeaderBytes> header) {
  std::uint32_t len = 0;
  std::uint64_t tag = 0;
  for (int i = 0; i < 4; ++i) len |= std::uint32_t{header[i]} << (8 * i);
  for (int i = 0; i < 8; ++i) tag |= std::uint64_t{header[4 + i]} << (8 * i);
  return {len, tag};
}

void Fnv1a64::Update(std::span<const std::uint8_t> bytes) {
  for (std::uint8_t b : bytes) {
    state_ ^= b;
    state_ *= 0x100000001b3ULL;
  }
}

void Fnv1a64::UpdateWord(std::uint64_t word) {
  for (int i = 0; i < 8; ++i) {
    state_ ^= (word >> (8 * i)) & 0xff;
    state_ *= 0x100000001b3ULL;
  }
}

void MessageQueue::Push(RoundMessage msg) {
  {
    std::lock_guard lock(mu_);
    frames_.push_back(std::move(msg));
  }
  cv_.notify_all();
}

RoundMessage MessageQueue::Pop(std::chrono::milliseconds timeout,
                               const std::string& what) {
  std::unique_lock lock(mu_);
  const bool ready = cv_.wait_for(lock, timeout, [this] {
    return !frames_.empty() || closed_.has_value();
  });
  if (!frames_.empty()) {
    RoundMessage msg = std::move(frames_.front());
    frames_.pop_front();
    return msg;
  }
  if (closed_) throw TransportError(what + ": " + *closed_);
  if (!ready) {
    throw TimeoutError(what + ": no message after " +
                       std::to_string(timeout.count()) + " ms");
  }
  throw TransportError(what + ": spurious wake-up");
}

void MessageQueue::Close(const std::string& reason) {
  {
    std::lock_guard lock(mu_);
    if (!closed_) closed_ = reason;
  }
  cv_.notify_all();
}

Channel::Channel(PartyId self, std::chrono::milliseconds timeout)
    : self_(self), timeout_(timeout) {}

void Channel::Record(char direction, PartyId peer, const RoundMessage& msg) {
  transcript_.UpdateWord(static_cast<std::uint64_t>(direction));
  transcript_.UpdateWord(static_cast<std::uint64_t>(peer.index()));
  transcript_.UpdateWord(msg.round_tag);
  transcript_.UpdateWord(msg.payload.size());
  for (std::uint64_t w : msg.payload) transcript_.UpdateWord(w);
  if (direction == 'R') {
    view_.UpdateWord(static_cast<std::uint64_t>(peer.index()));
    view_.UpdateWord(msg.round_tag);
    view_.UpdateWord(msg.payload.size());
    for (std::uint64_t w : msg.payload) view_.UpdateWord(w);
  }
}

void Channel::Send(PartyId to, RoundMessage msg) {
  if (to == self_) throw ContractError("party cannot send to itself");
  Record('S', to, msg);
  ++stats_.messages_sent;
  stats_.ring_elements_sent += msg.payload.size();
  stats_.bytes_sent += kFrameHeaderBytes + 8 * msg.payload.size();
  DoSend(to, std::move(msg));
}

RoundMessage Channel::Receive(PartyId from, std::uint64_t round_tag) {
  if (from == self_) throw ContractError("party cannot receive from itself");
  const std::string what = self_.ToString() + " waiting on " +
                            from.ToString() + " for round " +
                            std::to_string(round_tag);
  RoundMessage msg = DoReceive(from, what);
  if (msg.round_tag != round_tag) {
    throw DesyncError(what + ": received round " +
                      std::to_string(msg.round_tag));
  }
  Record('R', from, msg);
  ++stats_.messages_received;
  return msg;
}

class LocalNetwork::LocalChannel : public Channel {
 public:
  LocalChannel(PartyId self, std::chrono::milliseconds timeout,
               LocalNetwork& net)
      : Channel(self, timeout), net_(net) {}

 protected:
  void DoSend(PartyId to, RoundMessage msg) override {
    net_.queues_[to.slot()][self().slot()].Push(std::move(msg));
  }
  RoundMessage DoReceive(PartyId from, const std::string& what) override {
    return net_.queues_[self().slot()][from.slot()].Pop(timeout(), what);
  }

 private:
  LocalNetwork& net_;
};

LocalNetwork::LocalNetwork(std::chrono::milliseconds timeout) {
  for (PartyId p : kAllParties) {
    endpoints_[p.slot()] = std::make_unique<LocalChannel>(p, timeout, *this);
  }
}

LocalNetwork::~LocalNetwork() = default;

Channel& LocalNetwork::endpoint(PartyId party) {
  return *endpoints_.at(party.slot());
}

void LocalNetwork::Abort(const std::string& reason) {
  for (auto& row : queues_) {
    for (auto& q : row) q.Close(reason);
  }
}

}  // namespace mpcgen
