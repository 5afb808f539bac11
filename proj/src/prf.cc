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

#include "mpcgen/prf.h"

#include <sodium.h>

#include <bit>
#include <cstring>
#include <stdexcept>
#include <vector>

namespace mpcgen {
namespace {

static_assert(std::endian::native == std::endian::little,
              "keystream words are read as little-endian");

void EnsureSodium() {
  static const bool ok = sodium_init() >= 0;
  if (!ok) throw std::runtime_error("libsodium initialisation failed");
}

void Keystream(std::uint8_t* out, std::size_t len,
               const std::array<std::uint8_t, 8>& nonce, std::uint64_t block,
               const Seed& key) {
  std::memset(out, 0, len);
  crypto_stream_chacha20_xor_ic(out, out, len, nonce.data(), block,
                                key.data());
}

}  // namespace

PrfStream::PrfStream(const Seed& key, std::uint64_t nonce) : key_(key) {
  EnsureSodium();
  std::memcpy(nonce_.data(), &nonce, sizeof(nonce));
}

void PrfStream::Refill() {
  Keystream(reinterpret_cast<std::uint8_t*>(buffer_.data()),
            sizeof(buffer_), nonce_, block_counter_, key_);
  ++block_counter_;
  buffered_ = kWordsPerBlock;
}

std::uint64_t PrfStream::operator()() {
  if (buffered_ == 0) Refill();
  return buffer_[kWordsPerBlock - buffered_--];
}

void PrfStream::Fill(std::span<std::uint64_t> out) {
  std::size_t i = 0;
  while (i < out.size() && buffered_ > 0) out[i++] = (*this)();
  const std::size_t whole_blocks = (out.size() - i) / kWordsPerBlock;
  if (whole_blocks > 0) {
    Keystream(reinterpret_cast<std::uint8_t*>(out.data() + i),
              whole_blocks * kWordsPerBlock * sizeof(std::uint64_t), nonce_,
              block_counter_, key_);
    block_counter_ += whole_blocks;
    i += whole_blocks * kWordsPerBlock;
  }
  while (i < out.size()) out[i++] = (*this)();
}

Seed DeriveSeed(std::string_view label, std::uint64_t a, std::uint64_t b) {
  EnsureSodium();
  std::vector<std::uint8_t> input(label.begin(), label.end());
  const auto append = [&input](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) input.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  };
  append(a);
  append(b);
  Seed out;
  crypto_generichash(out.data(), out.size(), input.data(), input.size(),
                     nullptr, 0);
  return out;
}

Seed RandomSeed() {
  EnsureSodium();
  Seed out;
  randombytes_buf(out.data(), out.size());
  return out;
}

}  // namespace mpcgen
