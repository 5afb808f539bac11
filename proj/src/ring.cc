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

#include "mpcgen/ring.h"

#include <cmath>
#include <string>

#include "mpcgen/errors.h"

namespace mpcgen {

FixedPointCodec::FixedPointCodec(int fractional_bits, int total_bits)
    : fractional_bits_(fractional_bits), total_bits_(total_bits) {
  if (total_bits < 2 || total_bits > 64) {
    throw ParameterError("ring width must be in [2, 64], got " +
                         std::to_string(total_bits));
  }
  if (fractional_bits < 0 || fractional_bits >= total_bits - 1) {
    throw ParameterError("fractional bits must be in [0, k-2], got " +
                         std::to_string(fractional_bits));
  }
  mask_ = total_bits == 64 ? ~std::uint64_t{0}
                           : (std::uint64_t{1} << total_bits) - 1;
}

double FixedPointCodec::limit() const {
  return std::ldexp(1.0, total_bits_ - fractional_bits_ - 1);
}

RingValue FixedPointCodec::Encode(double x) const {
  if (!std::isfinite(x) || !(std::fabs(x) < limit())) {
    throw RangeError("value " + std::to_string(x) +
                     " outside fixed-point range");
  }
  const double scaled = std::round(std::ldexp(x, fractional_bits_));
  // |scaled| <= 2^{k-1} <= 2^63; the single boundary case rounds up to 2^63.
  if (scaled >= std::ldexp(1.0, 63)) {
    throw RangeError("value " + std::to_string(x) +
                     " rounds outside fixed-point range");
  }
  const auto as_int = static_cast<std::int64_t>(scaled);
  return RingValue(Reduce(static_cast<std::uint64_t>(as_int)));
}

std::int64_t FixedPointCodec::SignExtend(std::uint64_t v) const {
  v = Reduce(v);
  if (total_bits_ == 64) return static_cast<std::int64_t>(v);
  const std::uint64_t sign = std::uint64_t{1} << (total_bits_ - 1);
  return static_cast<std::int64_t>((v ^ sign) - sign);
}

double FixedPointCodec::Decode(RingValue v) const {
  return std::ldexp(static_cast<double>(SignExtend(v.raw())),
                    -fractional_bits_);
}

RingValue FixedPointCodec::Truncate(RingValue v, int bits) const {
  if (bits < 0 || bits >= total_bits_) {
    throw ContractError("truncation width out of range");
  }
  const std::int64_t shifted = SignExtend(v.raw()) >> bits;
  return RingValue(Reduce(static_cast<std::uint64_t>(shifted)));
}

}  // namespace mpcgen
