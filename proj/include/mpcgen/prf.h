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

#ifndef MPCGEN_PRF_H_
#define MPCGEN_PRF_H_

#include <array>
#include <cstdint>
#include <limits>
#include <span>
#include <string_view>

namespace mpcgen {

using Seed = std::array<std::uint8_t, 32>;

// Keyed pseudorandom function expanded in counter mode (ChaCha20 keystream).
// Two holders of the same key that issue the same sequence of requests see
// the same words. Satisfies UniformRandomBitGenerator.
class PrfStream {
 public:
  using result_type = std::uint64_t;

  explicit PrfStream(const Seed& key, std::uint64_t nonce = 0);

  void Fill(std::span<std::uint64_t> out);
  std::uint64_t operator()();

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  std::uint64_t blocks_used() const { return block_counter_; }

 private:
  static constexpr std::size_t kWordsPerBlock = 8;

  void Refill();

  Seed key_;
  std::array<std::uint8_t, 8> nonce_{};
  std::uint64_t block_counter_ = 0;
  std::array<std::uint64_t, kWordsPerBlock> buffer_{};
  std::size_t buffered_ = 0;
};

// Hashes a label and two integers into a seed (BLAKE2b). Used for
// reproducible runs where seeds come from a configured master seed.
Seed DeriveSeed(std::string_view label, std::uint64_t a, std::uint64_t b = 0);

// Fresh key from the operating system's CSPRNG.
Seed RandomSeed();

}  // namespace mpcgen

#endif  // MPCGEN_PRF_H_
