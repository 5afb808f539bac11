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

#include "mpcgen/sharing.h"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <string>

#include "mpcgen/errors.h"

namespace mpcgen {

PartyId PartyId::FromIndex(int index) {
  if (index < 1 || index > 3) {
    throw ParameterError("party index must be 1, 2 or 3, got " +
                         std::to_string(index));
  }
  return PartyId(index);
}

SharedVector::SharedVector(PartyId party, std::size_t size)
    : party_(party), first_(size, 0), second_(size, 0) {}

SharedVector::SharedVector(PartyId party, std::vector<std::uint64_t> first,
                           std::vector<std::uint64_t> second)
    : party_(party), first_(std::move(first)), second_(std::move(second)) {
  if (first_.size() != second_.size()) {
    throw ContractError("share component arrays differ in length");
  }
}

ReplicatedShare SharedVector::at(std::size_t i) const {
  return {party_, RingValue(first_.at(i)), RingValue(second_.at(i))};
}

void SharedVector::set(std::size_t i, const ReplicatedShare& share) {
  if (share.party != party_) throw ContractError("share belongs to another party");
  first_.at(i) = share.first.raw();
  second_.at(i) = share.second.raw();
}

SharedVector SharedVector::Slice(std::size_t offset, std::size_t count) const {
  if (offset + count > size()) throw ContractError("slice out of range");
  return SharedVector(
      party_,
      std::vector<std::uint64_t>(first_.begin() + offset,
                                 first_.begin() + offset + count),
      std::vector<std::uint64_t>(second_.begin() + offset,
                                 second_.begin() + offset + count));
}

void SharedVector::Append(const SharedVector& other) {
  if (other.party_ != party_) throw ContractError("mixing parties' shares");
  first_.insert(first_.end(), other.first_.begin(), other.first_.end());
  second_.insert(second_.end(), other.second_.begin(), other.second_.end());
}

void SharedVector::Resize(std::size_t size) {
  first_.resize(size, 0);
  second_.resize(size, 0);
}

void SharedVector::CheckCompatible(const SharedVector& other) const {
  if (other.party_ != party_) throw ContractError("mixing parties' shares");
  if (other.size() != size()) throw ContractError("share vectors differ in length");
}

SharedVector& SharedVector::operator+=(const SharedVector& other) {
  CheckCompatible(other);
  for (std::size_t i = 0; i < size(); ++i) {
    first_[i] += other.first_[i];
    second_[i] += other.second_[i];
  }
  return *this;
}

SharedVector& SharedVector::operator-=(const SharedVector& other) {
  CheckCompatible(other);
  for (std::size_t i = 0; i < size(); ++i) {
    first_[i] -= other.first_[i];
    second_[i] -= other.second_[i];
  }
  return *this;
}

// Component 1 is held as `first` by S1 and as `second` by S3.
SharedVector& SharedVector::AddConstant(RingValue c) {
  if (party_.index() == 1) {
    for (auto& v : first_) v += c.raw();
  } else if (party_.index() == 3) {
    for (auto& v : second_) v += c.raw();
  }
  return *this;
}

SharedVector& SharedVector::AddConstants(std::span<const std::uint64_t> c) {
  if (c.size() != size()) throw ContractError("constant vector length mismatch");
  if (party_.index() == 1) {
    for (std::size_t i = 0; i < size(); ++i) first_[i] += c[i];
  } else if (party_.index() == 3) {
    for (std::size_t i = 0; i < size(); ++i) second_[i] += c[i];
  }
  return *this;
}

SharedVector& SharedVector::MulConstant(RingValue c) {
  for (std::size_t i = 0; i < size(); ++i) {
    first_[i] *= c.raw();
    second_[i] *= c.raw();
  }
  return *this;
}

SharedVector SharedVector::Negated() const {
  SharedVector out(*this);
  out.MulConstant(RingValue(~std::uint64_t{0}));
  return out;
}

SharedVector SharedVector::FromPublic(PartyId party,
                                      std::span<const std::uint64_t> values) {
  SharedVector out(party, values.size());
  out.AddConstants(values);
  return out;
}

SharedMatrix::SharedMatrix(PartyId party, std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(party, rows * cols) {}

SharedMatrix::SharedMatrix(std::size_t rows, std::size_t cols, SharedVector data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols) throw ContractError("matrix shape mismatch");
}

SharedVector SharedMatrix::Row(std::size_t r) const {
  return data_.Slice(r * cols_, cols_);
}

void SharedMatrix::SetRow(std::size_t r, const SharedVector& row) {
  if (row.size() != cols_ || r >= rows_) throw ContractError("row shape mismatch");
  std::copy(row.first().begin(), row.first().end(),
            data_.first().begin() + r * cols_);
  std::copy(row.second().begin(), row.second().end(),
            data_.second().begin() + r * cols_);
}

SharedMatrix SharedMatrix::Transposed() const {
  SharedMatrix out(party(), cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      out.data_.first()[c * rows_ + r] = data_.first()[r * cols_ + c];
      out.data_.second()[c * rows_ + r] = data_.second()[r * cols_ + c];
    }
  }
  return out;
}

RingValue Reconstruct(std::span<const ReplicatedShare, 3> shares) {
  std::array<const ReplicatedShare*, 3> by_party{};
  for (const auto& s : shares) {
    const int slot = s.party.slot();
    if (slot < 0 || slot > 2 || by_party[slot] != nullptr) {
      throw IntegrityError("shares do not come from three distinct parties");
    }
    by_party[slot] = &s;
  }
  for (int p = 0; p < 3; ++p) {
    // S_p's second component is S_{p+1}'s first component.
    if (by_party[p]->second != by_party[(p + 1) % 3]->first) {
      throw IntegrityError("overlapping share components disagree");
    }
  }
  return by_party[0]->first + by_party[1]->first + by_party[2]->first;
}

std::vector<std::uint64_t> ReconstructVector(
    std::span<const SharedVector, 3> shares) {
  const std::size_t n = shares[0].size();
  for (const auto& s : shares) {
    if (s.size() != n) throw IntegrityError("share vectors differ in length");
  }
  std::vector<std::uint64_t> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::array<ReplicatedShare, 3> triple = {shares[0].at(i), shares[1].at(i),
                                                   shares[2].at(i)};
    out[i] = Reconstruct(triple).raw();
  }
  return out;
}

ZeroShareSource::ZeroShareSource(PartyId party, const Seed& with_prev,
                                 const Seed& with_next)
    : party_(party), with_prev_(with_prev), with_next_(with_next) {}

RingValue ZeroShareSource::NextZeroShare() {
  const std::uint64_t n = with_next_();
  const std::uint64_t p = with_prev_();
  return RingValue(n - p);
}

// u_p = F(k_{p,p+1}) - F(k_{p-1,p}); each pairwise term appears once with
// each sign across the three parties.
void ZeroShareSource::NextZeroShares(std::span<std::uint64_t> out) {
  scratch_.resize(out.size());
  with_next_.Fill(out);
  with_prev_.Fill(scratch_);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= scratch_[i];
}

void ZeroShareSource::NextZeroXorShares(std::span<std::uint64_t> out) {
  scratch_.resize(out.size());
  with_next_.Fill(out);
  with_prev_.Fill(scratch_);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] ^= scratch_[i];
}

void ZeroShareSource::NextRandomShares(std::span<std::uint64_t> first,
                                       std::span<std::uint64_t> second) {
  with_prev_.Fill(first);
  with_next_.Fill(second);
}

namespace {

constexpr char kShareMagic[4] = {'S', 'G', 'S', '1'};

void PutU32(std::ostream& os, std::uint32_t v) {
  char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  os.write(b, 4);
}

void PutU64(std::vector<char>& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

std::uint32_t GetU32(const unsigned char* p) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(p[i]) << (8 * i);
  return v;
}

std::uint64_t GetU64(const unsigned char* p) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
  return v;
}

}  // namespace

void WriteShareFile(const std::filesystem::path& path,
                    const ShareFileHeader& header, const SharedMatrix& cells) {
  if (cells.rows() != header.rows || cells.cols() != header.cols) {
    throw ContractError("share file header does not match matrix shape");
  }
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IngestionError("cannot open " + path.string() + " for writing");
  os.write(kShareMagic, 4);
  PutU32(os, header.ring_bits);
  PutU32(os, header.fractional_bits);
  PutU32(os, header.rows);
  PutU32(os, header.cols);
  std::vector<char> body;
  body.reserve(cells.data().size() * 16);
  for (std::size_t i = 0; i < cells.data().size(); ++i) {
    PutU64(body, cells.data().first()[i]);
    PutU64(body, cells.data().second()[i]);
  }
  os.write(body.data(), static_cast<std::streamsize>(body.size()));
  if (!os) throw IngestionError("short write to " + path.string());
}

ShareFile ReadShareFile(const std::filesystem::path& path, PartyId party) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IngestionError("cannot open share file " + path.string());
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(is)),
                                   std::istreambuf_iterator<char>());
  if (bytes.size() < 20 || std::memcmp(bytes.data(), kShareMagic, 4) != 0) {
    throw IngestionError(path.string() + ": not an SGS1 share file");
  }
  ShareFileHeader h;
  h.ring_bits = GetU32(&bytes[4]);
  h.fractional_bits = GetU32(&bytes[8]);
  h.rows = GetU32(&bytes[12]);
  h.cols = GetU32(&bytes[16]);
  const std::uint64_t cells = std::uint64_t{h.rows} * h.cols;
  if (bytes.size() != 20 + cells * 16) {
    throw IngestionError(path.string() + ": expected " +
                         std::to_string(20 + cells * 16) + " bytes, found " +
                         std::to_string(bytes.size()));
  }
  SharedMatrix m(party, h.rows, h.cols);
  for (std::uint64_t i = 0; i < cells; ++i) {
    m.data().first()[i] = GetU64(&bytes[20 + 16 * i]);
    m.data().second()[i] = GetU64(&bytes[28 + 16 * i]);
  }
  return ShareFile{h, std::move(m)};
}

}  // namespace mpcgen
