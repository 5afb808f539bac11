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

#ifndef MPCGEN_RING_H_
#define MPCGEN_RING_H_

#include <cstdint>

namespace mpcgen {

// An element of Z_{2^64}. Every operation wraps; nothing traps on overflow.
class RingValue {
 public:
  constexpr RingValue() = default;
  constexpr explicit RingValue(std::uint64_t raw) : raw_(raw) {}

  constexpr std::uint64_t raw() const { return raw_; }
  // Two's-complement reading of the value.
  constexpr std::int64_t as_signed() const {
    return static_cast<std::int64_t>(raw_);
  }

  friend constexpr RingValue operator+(RingValue a, RingValue b) {
    return RingValue(a.raw_ + b.raw_);
  }
  friend constexpr RingValue operator-(RingValue a, RingValue b) {
    return RingValue(a.raw_ - b.raw_);
  }
  friend constexpr RingValue operator*(RingValue a, RingValue b) {
    return RingValue(a.raw_ * b.raw_);
  }
  friend constexpr RingValue operator-(RingValue a) {
    return RingValue(0 - a.raw_);
  }
  constexpr RingValue& operator+=(RingValue o) {
    raw_ += o.raw_;
    return *this;
  }
  constexpr RingValue& operator-=(RingValue o) {
    raw_ -= o.raw_;
    return *this;
  }
  constexpr RingValue& operator*=(RingValue o) {
    raw_ *= o.raw_;
    return *this;
  }
  friend constexpr bool operator==(RingValue a, RingValue b) = default;

 private:
  std::uint64_t raw_ = 0;
};

// Arithmetic right shift of a two's-complement word.
constexpr std::uint64_t ArithmeticShiftRight(std::uint64_t v, int bits) {
  return static_cast<std::uint64_t>(static_cast<std::int64_t>(v) >> bits);
}

// Multiplicative inverse of an odd word modulo 2^64 (Newton iteration).
constexpr std::uint64_t InverseOdd(std::uint64_t odd) {
  std::uint64_t x = odd;  // correct to 3 bits
  for (int i = 0; i < 5; ++i) x *= 2 - odd * x;
  return x;
}

// Maps reals to Z_{2^k} with `fractional_bits` bits after the binary point,
// negatives in two's complement.
class FixedPointCodec {
 public:
  static constexpr int kDefaultFractionalBits = 16;
  static constexpr int kDefaultTotalBits = 64;

  explicit FixedPointCodec(int fractional_bits = kDefaultFractionalBits,
                           int total_bits = kDefaultTotalBits);

  int fractional_bits() const { return fractional_bits_; }
  int total_bits() const { return total_bits_; }
  // 2^f as a ring value: the encoding of 1.0.
  std::uint64_t one() const { return std::uint64_t{1} << fractional_bits_; }
  // Largest magnitude accepted by Encode (exclusive): 2^{k-f-1}.
  double limit() const;

  // round(x * 2^f) mod 2^k. Throws RangeError when |x| >= limit().
  RingValue Encode(double x) const;
  double Decode(RingValue v) const;
  // Arithmetic shift by `bits`, keeping the result in Z_{2^k}.
  RingValue Truncate(RingValue v, int bits) const;

  // Reduce into Z_{2^k} (identity for k = 64).
  std::uint64_t Reduce(std::uint64_t v) const { return v & mask_; }
  std::int64_t SignExtend(std::uint64_t v) const;

 private:
  int fractional_bits_;
  int total_bits_;
  std::uint64_t mask_;
};

}  // namespace mpcgen

#endif  // MPCGEN_RING_H_
