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

#include "mpcgen/tcp_transport.h"

#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstdlib>
#include <cstring>

#include "mpcgen/errors.h"

namespace mpcgen {
namespace {

constexpr std::uint64_t kHelloTag = ~std::uint64_t{0};

std::string Errno(const std::string& what) {
  return what + ": " + std::strerror(errno);
}

struct AddrInfo {
  addrinfo* head = nullptr;
  ~AddrInfo() {
    if (head) freeaddrinfo(head);
  }
};

void Resolve(const std::string& host, std::uint16_t port, bool passive,
             AddrInfo& out) {
  addrinfo hints{};
  hints.ai_family = AF_INET;
  hints.ai_socktype = SOCK_STREAM;
  if (passive) hints.ai_flags = AI_PASSIVE;
  const std::string service = std::to_string(port);
  const int rc = getaddrinfo(host.empty() ? nullptr : host.c_str(),
                             service.c_str(), &hints, &out.head);
  if (rc != 0 || out.head == nullptr) {
    throw TransportError("cannot resolve " + host + ": " + gai_strerror(rc));
  }
}

void WriteAll(int fd, const std::uint8_t* data, std::size_t len) {
  while (len > 0) {
    const ssize_t n = ::send(fd, data, len, MSG_NOSIGNAL);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw TransportError(Errno("send failed"));
    }
    data += n;
    len -= static_cast<std::size_t>(n);
  }
}

// False on orderly EOF before any byte; throws on a torn read.
bool ReadAll(int fd, std::uint8_t* data, std::size_t len) {
  std::size_t got = 0;
  while (got < len) {
    const ssize_t n = ::recv(fd, data + got, len - got, 0);
    if (n == 0) {
      if (got == 0) return false;
      throw TransportError("peer closed connection mid-frame");
    }
    if (n < 0) {
      if (errno == EINTR) continue;
      throw TransportError(Errno("recv failed"));
    }
    got += static_cast<std::size_t>(n);
  }
  return true;
}

RoundMessage ReadFrame(int fd, bool& eof) {
  std::array<std::uint8_t, kFrameHeaderBytes> header;
  eof = !ReadAll(fd, header.data(), header.size());
  if (eof) return {};
  const auto [len, tag] = DecodeFrameHeader(header);
  if (len % 8 != 0) throw TransportError("frame length not a multiple of 8");
  std::vector<std::uint8_t> body(len);
  if (len > 0 && !ReadAll(fd, body.data(), len)) {
    throw TransportError("peer closed connection mid-frame");
  }
  RoundMessage msg;
  msg.round_tag = tag;
  msg.payload.resize(len / 8);
  for (std::size_t i = 0; i < msg.payload.size(); ++i) {
    std::uint64_t w = 0;
    for (int b = 0; b < 8; ++b) w |= std::uint64_t{body[8 * i + b]} << (8 * b);
    msg.payload[i] = w;
  }
  return msg;
}

void WriteFrame(int fd, const RoundMessage& msg) {
  const auto bytes = EncodeFrame(msg);
  WriteAll(fd, bytes.data(), bytes.size());
}

void SetNoDelay(int fd) {
  int one = 1;
  setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
}

int Dial(const Endpoint& ep, std::chrono::steady_clock::time_point deadline) {
  while (true) {
    AddrInfo ai;
    Resolve(ep.host, ep.port, false, ai);
    const int fd = ::socket(ai.head->ai_family, ai.head->ai_socktype,
                            ai.head->ai_protocol);
    if (fd < 0) throw TransportError(Errno("socket"));
    if (::connect(fd, ai.head->ai_addr, ai.head->ai_addrlen) == 0) {
      SetNoDelay(fd);
      return fd;
    }
    const int err = errno;
    ::close(fd);
    if (std::chrono::steady_clock::now() > deadline) {
      errno = err;
      throw TransportError(Errno("cannot connect to " + ep.ToString()));
    }
    std::this_thread::sleep_for(50ms);
  }
}

int AcceptOne(int listen_fd, std::chrono::steady_clock::time_point deadline) {
  while (true) {
    const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
        deadline - std::chrono::steady_clock::now());
    if (left.count() <= 0) throw TimeoutError("no peer connected in time");
    pollfd pfd{listen_fd, POLLIN, 0};
    const int rc = ::poll(&pfd, 1, static_cast<int>(left.count()));
    if (rc < 0 && errno != EINTR) throw TransportError(Errno("poll"));
    if (rc <= 0) continue;
    const int fd = ::accept(listen_fd, nullptr, nullptr);
    if (fd < 0) {
      if (errno == EINTR) continue;
      throw TransportError(Errno("accept"));
    }
    SetNoDelay(fd);
    return fd;
  }
}

}  // namespace

Endpoint Endpoint::Parse(const std::string& text) {
  const auto colon = text.rfind(':');
  if (colon == std::string::npos || colon + 1 == text.size()) {
    throw ParameterError("endpoint must look like host:port, got '" + text + "'");
  }
  Endpoint ep;
  ep.host = text.substr(0, colon);
  try {
    const int port = std::stoi(text.substr(colon + 1));
    if (port < 0 || port > 65535) throw std::out_of_range("port");
    ep.port = static_cast<std::uint16_t>(port);
  } catch (const std::exception&) {
    throw ParameterError("bad port in endpoint '" + text + "'");
  }
  return ep;
}

TcpListener TcpListener::Bind(const Endpoint& endpoint) {
  std::string host = endpoint.host;
  if (const char* env = std::getenv(kBindAddressEnv); env && *env) host = env;
  AddrInfo ai;
  Resolve(host, endpoint.port, true, ai);
  const int fd = ::socket(ai.head->ai_family, ai.head->ai_socktype,
                          ai.head->ai_protocol);
  if (fd < 0) throw TransportError(Errno("socket"));
  int one = 1;
  setsockopt(fd, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
  if (::bind(fd, ai.head->ai_addr, ai.head->ai_addrlen) != 0) {
    const std::string msg = Errno("bind " + host + ":" + std::to_string(endpoint.port));
    ::close(fd);
    throw TransportError(msg);
  }
  if (::listen(fd, 4) != 0) {
    ::close(fd);
    throw TransportError(Errno("listen"));
  }
  sockaddr_in addr{};
  socklen_t len = sizeof(addr);
  getsockname(fd, reinterpret_cast<sockaddr*>(&addr), &len);
  return TcpListener(fd, ntohs(addr.sin_port));
}

TcpListener::TcpListener(TcpListener&& other) noexcept
    : fd_(other.fd_), port_(other.port_) {
  other.fd_ = -1;
}

TcpListener::~TcpListener() {
  if (fd_ >= 0) ::close(fd_);
}

TcpChannel::TcpChannel(PartyId self, std::chrono::milliseconds timeout)
    : Channel(self, timeout) {}

std::unique_ptr<TcpChannel> TcpChannel::Connect(
    PartyId self, TcpListener& listener,
    const std::array<Endpoint, 3>& endpoints,
    std::chrono::milliseconds timeout) {
  std::unique_ptr<TcpChannel> ch(new TcpChannel(self, timeout));
  const auto deadline = std::chrono::steady_clock::now() + timeout;
  for (PartyId peer : kAllParties) {
    if (peer.index() >= self.index()) continue;
    const int fd = Dial(endpoints[peer.slot()], deadline);
    ch->sockets_[peer.slot()] = fd;
    WriteFrame(fd, RoundMessage{kHelloTag, {static_cast<std::uint64_t>(self.index())}});
  }
  const int expected = 3 - self.index();
  for (int i = 0; i < expected; ++i) {
    const int fd = AcceptOne(listener.fd(), deadline);
    bool eof = false;
    RoundMessage hello = ReadFrame(fd, eof);
    if (eof || hello.round_tag != kHelloTag || hello.payload.size() != 1 ||
        hello.payload[0] <= static_cast<std::uint64_t>(self.index()) ||
        hello.payload[0] > 3 ||
        ch->sockets_[hello.payload[0] - 1] != -1) {
      ::close(fd);
      throw TransportError("unexpected hello on " + self.ToString() + "'s listener");
    }
    ch->sockets_[hello.payload[0] - 1] = fd;
  }
  for (PartyId peer : kAllParties) {
    if (peer != self) ch->StartReader(peer);
  }
  return ch;
}

void TcpChannel::StartReader(PartyId peer) {
  readers_[peer.slot()] = std::thread([this, peer] {
    MessageQueue& q = inbox_[peer.slot()];
    struct Done {
      TcpChannel* ch;
      ~Done() {
        {
          std::lock_guard lock(ch->done_mu_);
          ++ch->readers_done_;
        }
        ch->done_cv_.notify_all();
      }
    } done{this};
    try {
      while (true) {
        bool eof = false;
        RoundMessage msg = ReadFrame(sockets_[peer.slot()], eof);
        if (eof) {
          q.Close("peer " + peer.ToString() + " disconnected");
          return;
        }
        q.Push(std::move(msg));
      }
    } catch (const std::exception& e) {
      q.Close(e.what());
    }
  });
}

// Half-close first so frames still in flight reach the peer, then wait for
// the peers to finish before tearing the sockets down.
TcpChannel::~TcpChannel() {
  int started = 0;
  for (const auto& t : readers_) started += t.joinable() ? 1 : 0;
  for (int fd : sockets_) {
    if (fd >= 0) ::shutdown(fd, SHUT_WR);
  }
  {
    std::unique_lock lock(done_mu_);
    done_cv_.wait_for(lock, 5s, [&] { return readers_done_ >= started; });
  }
  for (int fd : sockets_) {
    if (fd >= 0) ::shutdown(fd, SHUT_RDWR);
  }
  for (auto& t : readers_) {
    if (t.joinable()) t.join();
  }
  for (int fd : sockets_) {
    if (fd >= 0) ::close(fd);
  }
}

void TcpChannel::DoSend(PartyId to, RoundMessage msg) {
  const int fd = sockets_[to.slot()];
  if (fd < 0) throw TransportError("no connection to " + to.ToString());
  WriteFrame(fd, msg);
}

RoundMessage TcpChannel::DoReceive(PartyId from, const std::string& what) {
  return inbox_[from.slot()].Pop(timeout(), what);
}

}  // namespace mpcgen
