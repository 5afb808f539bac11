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

#ifndef MPCGEN_PRIMITIVES_H_
#define MPCGEN_PRIMITIVES_H_

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "mpcgen/party.h"
#include "mpcgen/sharing.h"

// Share-in, share-out building blocks. All vector forms are batched: one
// frame per peer per round, whatever the length.
//
// Values carry one of two scales, tracked by the caller:
//   integer  - plain ring integers (bits, bin indices, labels, counts)
//   fixed    - codec().Encode(x), i.e. f fractional bits
// Integer x integer and integer x fixed products need no truncation.
namespace mpcgen {

// Post-processing folded into a product's resharing: multiply by a public
// constant, then drop `shift` low bits (floor/ceil split, +/-1 ulp; exact
// when the plaintext is a multiple of 2^shift).
struct Rescale {
  std::uint64_t multiplier = 1;
  int shift = 0;
};

// Element-wise ring product; one round, one ring element per party per
// element.
SharedVector Mul(Party& party, const SharedVector& a, const SharedVector& b);
// Element-wise product with per-element (or a single) rescale. Two rounds
// when any element shifts, still one ring element per party per element.
SharedVector MulRescaled(Party& party, const SharedVector& a,
                         const SharedVector& b, std::span<const Rescale> rescale);
SharedVector MulRescaled(Party& party, const SharedVector& a,
                         const SharedVector& b, Rescale rescale);
// fixed x fixed -> fixed.
SharedVector MulFixed(Party& party, const SharedVector& a, const SharedVector& b);
// Interactive right shift of a shared value.
SharedVector Truncate(Party& party, const SharedVector& x, int bits);
// fixed x public real -> fixed.
SharedVector MulPublicFixed(Party& party, const SharedVector& x, double c);

// Inner product of two equal-length vectors. Local partial sums are
// reshared once: one ring element per party regardless of length.
SharedVector Dot(Party& party, const SharedVector& a, const SharedVector& b);

struct RowPair {
  std::size_t left;
  std::size_t right;
};
// Batched inner products <left.Row(p.left), right.Row(p.right)> for every
// pair; one ring element per party per pair.
SharedVector DotRows(Party& party, const SharedMatrix& left,
                     const SharedMatrix& right, std::span<const RowPair> pairs,
                     Rescale rescale = {});

// Sharing (integer 0/1) of the top bit of x, via a boolean decomposition of
// the three additive components and a parallel-prefix carry circuit.
SharedVector Msb(Party& party, const SharedVector& x);
// [a < b] as integer bits, signed comparison. Operands of equal scale with
// |a - b| < 2^63, which holds for any two encodable values.
SharedVector LessThan(Party& party, const SharedVector& a, const SharedVector& b);
// [a < c] for public ring constants c (one per element, or broadcast).
SharedVector LessThanPublic(Party& party, const SharedVector& a,
                            std::span<const std::uint64_t> c);
SharedVector LessThanPublic(Party& party, const SharedVector& a, std::uint64_t c);

// Domains up to this size use indicator polynomials; larger ones use two
// comparisons per value.
inline constexpr std::uint64_t kMaxPolynomialDomain = 8;

// Row v of the result is [x == v] for v in [0, domain). x must hold an
// integer in [0, domain).
SharedMatrix OneHot(Party& party, const SharedVector& x, std::uint64_t domain);
// [x == value] for a public value in [0, domain).
SharedVector EqualsPublic(Party& party, const SharedVector& x,
                          std::uint64_t value, std::uint64_t domain);

enum class DivisorScale { kInteger, kFixed };

// Fixed-point quotient a / b for divisors in [1, bound] (plaintext). b = 0
// yields 0 when a = 0. Secret power-of-two normalisation, three
// Newton-Raphson iterations on the reciprocal, then one exact remainder
// correction.
SharedVector Divide(Party& party, const SharedVector& a, const SharedVector& b,
                    std::uint64_t bound,
                    DivisorScale divisor_scale = DivisorScale::kFixed);

// Layers of Batcher's odd-even merge sorting network for n inputs. Each
// layer holds disjoint (low, high) index pairs.
using ComparatorLayer = std::vector<std::pair<std::uint32_t, std::uint32_t>>;
std::vector<ComparatorLayer> OddEvenMergeLayers(std::size_t n);

// Ascending oblivious sort (signed order).
SharedVector Sort(Party& party, const SharedVector& v);
// Sorts every row independently; rows share each network layer's rounds.
SharedMatrix SortRows(Party& party, const SharedMatrix& m);

// Fixed-point sharings of m / 2^f with m uniform on [0, 2^f).
SharedVector RandUnit(Party& party, std::size_t n);
// Sum of 12 RandUnit draws minus 6 per element (Irwin-Hall).
SharedVector GaussVector(Party& party, std::size_t n);

// Opens x to `to`; other parties get nullopt. `to` receives the missing
// component from both peers and checks they agree (IntegrityError).
std::optional<std::vector<std::uint64_t>> Reveal(Party& party,
                                                 const SharedVector& x,
                                                 PartyId to);
std::vector<std::uint64_t> RevealAll(Party& party, const SharedVector& x);

}  // namespace mpcgen

#endif  // MPCGEN_PRIMITIVES_H_
