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

#ifndef MPCGEN_SHARING_H_
#define MPCGEN_SHARING_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "mpcgen/party_id.h"
#include "mpcgen/prf.h"
#include "mpcgen/ring.h"

namespace mpcgen {

// x = x1 + x2 + x3 (mod 2^64). Party p holds the pair (x_p, x_{p+1}): S1 has
// (x1, x2), S2 has (x2, x3), S3 has (x3, x1). `first` is always component p.
struct ReplicatedShare {
  PartyId party{1};
  RingValue first;
  RingValue second;
};

// One party's view of a vector of replicated sharings, stored as two
// contiguous component arrays so that batched products stream through memory.
//
// The same container carries XOR sharings of bit words inside the comparison
// circuits; the arithmetic helpers below assume additive sharing.
class SharedVector {
 public:
  explicit SharedVector(PartyId party, std::size_t size = 0);
  SharedVector(PartyId party, std::vector<std::uint64_t> first,
               std::vector<std::uint64_t> second);

  PartyId party() const { return party_; }
  std::size_t size() const { return first_.size(); }
  bool empty() const { return first_.empty(); }

  std::span<std::uint64_t> first() { return first_; }
  std::span<std::uint64_t> second() { return second_; }
  std::span<const std::uint64_t> first() const { return first_; }
  std::span<const std::uint64_t> second() const { return second_; }

  ReplicatedShare at(std::size_t i) const;
  void set(std::size_t i, const ReplicatedShare& share);

  SharedVector Slice(std::size_t offset, std::size_t count) const;
  void Append(const SharedVector& other);
  void Resize(std::size_t size);

  // Local linear operations; no messages.
  SharedVector& operator+=(const SharedVector& other);
  SharedVector& operator-=(const SharedVector& other);
  SharedVector& AddConstant(RingValue c);
  SharedVector& AddConstants(std::span<const std::uint64_t> c);
  SharedVector& MulConstant(RingValue c);
  SharedVector Negated() const;

  friend SharedVector operator+(SharedVector a, const SharedVector& b) {
    return a += b;
  }
  friend SharedVector operator-(SharedVector a, const SharedVector& b) {
    return a -= b;
  }

  // Sharing of a public vector: component 1 carries the values.
  static SharedVector FromPublic(PartyId party,
                                 std::span<const std::uint64_t> values);

 private:
  void CheckCompatible(const SharedVector& other) const;

  PartyId party_;
  std::vector<std::uint64_t> first_;
  std::vector<std::uint64_t> second_;
};

// Row-major matrix of sharings.
class SharedMatrix {
 public:
  SharedMatrix(PartyId party, std::size_t rows, std::size_t cols);
  SharedMatrix(std::size_t rows, std::size_t cols, SharedVector data);

  PartyId party() const { return data_.party(); }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const SharedVector& data() const { return data_; }
  SharedVector& data() { return data_; }

  SharedVector Row(std::size_t r) const;
  void SetRow(std::size_t r, const SharedVector& row);
  SharedMatrix Transposed() const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  SharedVector data_;
};

// Splits x into three replicated shares with x1, x2 drawn from `rng`.
template <class Rng>
std::array<ReplicatedShare, 3> Share(RingValue x, Rng& rng) {
  const RingValue x1(rng());
  const RingValue x2(rng());
  const RingValue x3 = x - x1 - x2;
  return {ReplicatedShare{PartyId(1), x1, x2},
          ReplicatedShare{PartyId(2), x2, x3},
          ReplicatedShare{PartyId(3), x3, x1}};
}

template <class Rng>
std::array<SharedVector, 3> ShareVector(std::span<const std::uint64_t> values,
                                        Rng& rng) {
  std::array<SharedVector, 3> out = {SharedVector(PartyId(1), values.size()),
                                     SharedVector(PartyId(2), values.size()),
                                     SharedVector(PartyId(3), values.size())};
  for (std::size_t i = 0; i < values.size(); ++i) {
    const auto shares = Share(RingValue(values[i]), rng);
    for (int p = 0; p < 3; ++p) out[p].set(i, shares[p]);
  }
  return out;
}

// x1 + x2 + x3 from one share per party (any order). Throws IntegrityError if
// the overlapping components disagree or a party is missing.
RingValue Reconstruct(std::span<const ReplicatedShare, 3> shares);
std::vector<std::uint64_t> ReconstructVector(
    std::span<const SharedVector, 3> shares);

// Correlated randomness for one party, built from the two pairwise seeds it
// holds: one shared with its predecessor, one with its successor.
class ZeroShareSource {
 public:
  ZeroShareSource(PartyId party, const Seed& with_prev, const Seed& with_next);

  PartyId party() const { return party_; }

  // u_p with u_1 + u_2 + u_3 = 0 (mod 2^64) across the three parties.
  RingValue NextZeroShare();
  void NextZeroShares(std::span<std::uint64_t> out);
  // XOR analogue: u_1 ^ u_2 ^ u_3 = 0.
  void NextZeroXorShares(std::span<std::uint64_t> out);
  // A replicated sharing of a uniformly random word nobody knows:
  // component p comes from the predecessor key, component p+1 from the
  // successor key.
  void NextRandomShares(std::span<std::uint64_t> first,
                        std::span<std::uint64_t> second);

  // Raw pairwise streams, for protocol steps that need randomness common to
  // exactly two parties.
  PrfStream& with_prev() { return with_prev_; }
  PrfStream& with_next() { return with_next_; }

 private:
  PartyId party_;
  PrfStream with_prev_;
  PrfStream with_next_;
  std::vector<std::uint64_t> scratch_;
};

// Offline submission file written by a data holder for one server:
//   "SGS1" | k | f | rows | cols   (uint32 little-endian each)
//   rows*cols cells, row-major; each cell is the receiving party's pair
//   (first, second) as two uint64 little-endian words.
struct ShareFileHeader {
  std::uint32_t ring_bits = 64;
  std::uint32_t fractional_bits = FixedPointCodec::kDefaultFractionalBits;
  std::uint32_t rows = 0;
  std::uint32_t cols = 0;
};

struct ShareFile {
  ShareFileHeader header;
  SharedMatrix cells;
};

void WriteShareFile(const std::filesystem::path& path,
                    const ShareFileHeader& header, const SharedMatrix& cells);
// Throws IngestionError on bad magic, short files, or size mismatches.
ShareFile ReadShareFile(const std::filesystem::path& path, PartyId party);

}  // namespace mpcgen

#endif  // MPCGEN_SHARING_H_
