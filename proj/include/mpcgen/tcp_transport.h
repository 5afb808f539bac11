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

#ifndef MPCGEN_TCP_TRANSPORT_H_
#define MPCGEN_TCP_TRANSPORT_H_

#include <array>
#include <chrono>
#include <cstdint>
#include <memory>
#include <string>
#include <thread>

#include "mpcgen/transport.h"

namespace mpcgen {

struct Endpoint {
  std::string host;
  std::uint16_t port = 0;

  // "host:port". Throws ParameterError.
  static Endpoint Parse(const std::string& text);
  std::string ToString() const { return host + ":" + std::to_string(port); }
};

// Environment variable that overrides the address a party binds to (the
// configured endpoint is still what peers dial).
inline constexpr const char* kBindAddressEnv = "MPCGEN_BIND_ADDRESS";

class TcpListener {
 public:
  // Port 0 picks an ephemeral port; query it with port().
  static TcpListener Bind(const Endpoint& endpoint);

  TcpListener(TcpListener&& other) noexcept;
  TcpListener& operator=(TcpListener&&) = delete;
  ~TcpListener();

  std::uint16_t port() const { return port_; }
  int fd() const { return fd_; }

 private:
  TcpListener(int fd, std::uint16_t port) : fd_(fd), port_(port) {}

  int fd_;
  std::uint16_t port_;
};

// Framed TCP channel. Party p dials every peer with a lower index and
// accepts every peer with a higher one; a hello frame identifies the dialer.
// Each connection has a reader thread that drains frames into a queue, so
// sends never block on the peer's receive order.
class TcpChannel : public Channel {
 public:
  static std::unique_ptr<TcpChannel> Connect(
      PartyId self, TcpListener& listener,
      const std::array<Endpoint, 3>& endpoints,
      std::chrono::milliseconds timeout = kDefaultRoundTimeout);

  ~TcpChannel() override;

 protected:
  void DoSend(PartyId to, RoundMessage msg) override;
  RoundMessage DoReceive(PartyId from, const std::string& what) override;

 private:
  TcpChannel(PartyId self, std::chrono::milliseconds timeout);
  void StartReader(PartyId peer);

  std::array<int, 3> sockets_{-1, -1, -1};
  std::mutex done_mu_;
  std::condition_variable done_cv_;
  int readers_done_ = 0;
  std::array<MessageQueue, 3> inbox_;
  std::array<std::thread, 3> readers_;
};

}  // namespace mpcgen

#endif  // MPCGEN_TCP_TRANSPORT_H_
