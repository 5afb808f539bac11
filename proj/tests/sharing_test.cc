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

#include <unistd.h>

#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "mpcgen/errors.h"

namespace mpcgen {
namespace {

std::array<ZeroShareSource, 3> MakeSources(std::uint64_t seed) {
  const Seed k12 = DeriveSeed("test", seed, 12);
  const Seed k23 = DeriveSeed("test", seed, 23);
  const Seed k31 = DeriveSeed("test", seed, 31);
  return {ZeroShareSource(PartyId(1), k31, k12), ZeroShareSource(PartyId(2), k12, k23),
          ZeroShareSource(PartyId(3), k23, k31)};
}

TEST(SharingTest, ShareAndReconstruct) {
  std::mt19937_64 rng(1);
  for (std::uint64_t x : {std::uint64_t{0}, std::uint64_t{42}, ~std::uint64_t{0}}) {
    const auto shares = Share(RingValue(x), rng);
    EXPECT_EQ(Reconstruct(shares).raw(), x);
  }
}

TEST(SharingTest, ReconstructAcceptsAnyOrder) {
  std::mt19937_64 rng(2);
  const auto s = Share(RingValue(99), rng);
  const std::array<ReplicatedShare, 3> shuffled = {s[2], s[0], s[1]};
  EXPECT_EQ(Reconstruct(shuffled).raw(), 99u);
}

TEST(SharingTest, ReconstructDetectsInconsistentComponents) {
  std::mt19937_64 rng(3);
  auto s = Share(RingValue(7), rng);
  s[1].first += RingValue(1);
  EXPECT_THROW(Reconstruct(s), IntegrityError);
  auto t = Share(RingValue(7), rng);
  t[2] = t[1];
  EXPECT_THROW(Reconstruct(t), IntegrityError);
}

TEST(SharingTest, LinearityProperty) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::uint64_t> x(16), y(16);
    for (auto& v : x) v = rng();
    for (auto& v : y) v = rng();
    const std::uint64_t c = rng();
    auto xs = ShareVector(x, rng);
    auto ys = ShareVector(y, rng);
    std::array<SharedVector, 3> sum = xs, diff = xs, scaled = xs, shifted = xs;
    for (int p = 0; p < 3; ++p) {
      sum[p] += ys[p];
      diff[p] -= ys[p];
      scaled[p].MulConstant(RingValue(c));
      shifted[p].AddConstant(RingValue(c));
    }
    const auto s = ReconstructVector(sum);
    const auto d = ReconstructVector(diff);
    const auto m = ReconstructVector(scaled);
    const auto a = ReconstructVector(shifted);
    for (std::size_t i = 0; i < x.size(); ++i) {
      EXPECT_EQ(s[i], x[i] + y[i]);
      EXPECT_EQ(d[i], x[i] - y[i]);
      EXPECT_EQ(m[i], x[i] * c);
      EXPECT_EQ(a[i], x[i] + c);
    }
  }
}

// Any single party's share pair is independent of the secret: its first
// component is uniform. Chi-square over 16 buckets of the top nibble, for
// two very different secrets.
TEST(SharingTest, SingleShareLooksUniform) {
  for (std::uint64_t secret : {std::uint64_t{0}, std::uint64_t{1} << 40}) {
    std::mt19937_64 rng(5);
    std::array<int, 16> counts{};
    constexpr int kDraws = 64000;
    for (int i = 0; i < kDraws; ++i) {
      const auto s = Share(RingValue(secret), rng);
      ++counts[s[2].first.raw() >> 60];
    }
    double chi2 = 0;
    const double expected = kDraws / 16.0;
    for (int c : counts) chi2 += (c - expected) * (c - expected) / expected;
    // 15 degrees of freedom; 37.7 is the 0.999 quantile.
    EXPECT_LT(chi2, 37.7);
  }
}

TEST(ZeroShareSourceTest, ZeroSharesSumToZero) {
  auto src = MakeSources(9);
  std::array<std::vector<std::uint64_t>, 3> u;
  for (int p = 0; p < 3; ++p) {
    u[p].resize(100);
    src[p].NextZeroShares(u[p]);
  }
  for (int i = 0; i < 100; ++i) {
    EXPECT_EQ(u[0][i] + u[1][i] + u[2][i], 0u);
    EXPECT_NE(u[0][i], 0u);
  }
  for (int p = 0; p < 3; ++p) src[p].NextZeroXorShares(u[p]);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(u[0][i] ^ u[1][i] ^ u[2][i], 0u);
  std::array<RingValue, 3> single;
  for (int p = 0; p < 3; ++p) single[p] = src[p].NextZeroShare();
  EXPECT_EQ((single[0] + single[1] + single[2]).raw(), 0u);
}

TEST(ZeroShareSourceTest, RandomSharesAreConsistent) {
  auto src = MakeSources(10);
  std::array<SharedVector, 3> v = {SharedVector(PartyId(1), 50),
                                   SharedVector(PartyId(2), 50),
                                   SharedVector(PartyId(3), 50)};
  for (int p = 0; p < 3; ++p) src[p].NextRandomShares(v[p].first(), v[p].second());
  // Reconstruct checks that overlapping components agree.
  EXPECT_NO_THROW(ReconstructVector(v));
}

TEST(PrfStreamTest, SameKeySameWords) {
  const Seed key = DeriveSeed("prf", 1);
  PrfStream a(key), b(key), c(DeriveSeed("prf", 2));
  std::vector<std::uint64_t> wa(37), wb(37), wc(37);
  a.Fill(wa);
  b.Fill(wb);
  c.Fill(wc);
  EXPECT_EQ(wa, wb);
  EXPECT_NE(wa, wc);
  // Word-at-a-time and bulk draws walk the same stream.
  PrfStream d(key);
  for (std::size_t i = 0; i < wa.size(); ++i) EXPECT_EQ(d(), wa[i]);
}

TEST(PrfStreamTest, ByteFrequencies) {
  PrfStream s(DeriveSeed("prf", 3));
  std::array<int, 256> counts{};
  constexpr int kWords = 10000;
  for (int i = 0; i < kWords; ++i) {
    std::uint64_t w = s();
    for (int b = 0; b < 8; ++b, w >>= 8) ++counts[w & 0xff];
  }
  double chi2 = 0;
  const double expected = kWords * 8 / 256.0;
  for (int c : counts) chi2 += (c - expected) * (c - expected) / expected;
  // 255 degrees of freedom; 330.5 is the 0.999 quantile.
  EXPECT_LT(chi2, 330.5);
}

TEST(ZeroShareSourceTest, SameSeedsSameTriples) {
  auto a = MakeSources(11);
  auto b = MakeSources(11);
  for (int p = 0; p < 3; ++p) EXPECT_EQ(a[p].NextZeroShare(), b[p].NextZeroShare());
}

TEST(SharedVectorTest, AddConstantTouchesComponentOne) {
  std::mt19937_64 rng(6);
  const std::vector<std::uint64_t> x = {5};
  auto xs = ShareVector(x, rng);
  const auto before = xs;
  for (auto& s : xs) s.AddConstant(RingValue(10));
  EXPECT_NE(xs[0].first()[0], before[0].first()[0]);
  EXPECT_EQ(xs[1].first()[0], before[1].first()[0]);
  EXPECT_EQ(xs[1].second()[0], before[1].second()[0]);
  EXPECT_NE(xs[2].second()[0], before[2].second()[0]);
  EXPECT_EQ(ReconstructVector(xs)[0], 15u);
}

TEST(SharedVectorTest, SliceAppendAndMismatch) {
  SharedVector a(PartyId(1), 4), b(PartyId(1), 3), c(PartyId(2), 4);
  EXPECT_THROW(a += b, ContractError);
  EXPECT_THROW(a += c, ContractError);
  a.Append(b);
  EXPECT_EQ(a.size(), 7u);
  EXPECT_EQ(a.Slice(2, 5).size(), 5u);
}

TEST(SharedMatrixTest, TransposeRoundTrip) {
  std::mt19937_64 rng(7);
  std::vector<std::uint64_t> x(12);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = i;
  auto xs = ShareVector(x, rng);
  const SharedMatrix m(3, 4, xs[0]);
  const SharedMatrix t = m.Transposed();
  EXPECT_EQ(t.rows(), 4u);
  EXPECT_EQ(t.cols(), 3u);
  for (std::size_t r = 0; r < 3; ++r) {
    for (std::size_t c = 0; c < 4; ++c) {
      EXPECT_EQ(t.data().first()[c * 3 + r], m.data().first()[r * 4 + c]);
    }
  }
}

class ShareFileTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("mpcgen_share_file_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::filesystem::path dir_;
};

TEST_F(ShareFileTest, RoundTrip) {
  std::mt19937_64 rng(8);
  std::vector<std::uint64_t> x(6);
  for (auto& v : x) v = rng();
  const auto xs = ShareVector(x, rng);
  ShareFileHeader header;
  header.rows = 2;
  header.cols = 3;
  std::array<SharedVector, 3> back = xs;
  for (PartyId p : kAllParties) {
    const auto path = dir_ / ("s" + std::to_string(p.index()) + ".bin");
    WriteShareFile(path, header, SharedMatrix(2, 3, xs[p.slot()]));
    const ShareFile file = ReadShareFile(path, p);
    EXPECT_EQ(file.header.rows, 2u);
    EXPECT_EQ(file.header.cols, 3u);
    back[p.slot()] = file.cells.data();
  }
  EXPECT_EQ(ReconstructVector(back), x);
}

TEST_F(ShareFileTest, RejectsMalformedFiles) {
  const auto missing = dir_ / "missing.bin";
  EXPECT_THROW(ReadShareFile(missing, PartyId(1)), IngestionError);

  const auto bad_magic = dir_ / "bad.bin";
  std::ofstream(bad_magic, std::ios::binary) << "XXXX0000000000000000";
  EXPECT_THROW(ReadShareFile(bad_magic, PartyId(1)), IngestionError);

  ShareFileHeader header;
  header.rows = 2;
  header.cols = 2;
  const auto truncated = dir_ / "short.bin";
  WriteShareFile(truncated, header, SharedMatrix(PartyId(1), 2, 2));
  std::filesystem::resize_file(truncated, std::filesystem::file_size(truncated) - 8);
  EXPECT_THROW(ReadShareFile(truncated, PartyId(1)), IngestionError);
}

}  // namespace
}  // namespace mpcgen
