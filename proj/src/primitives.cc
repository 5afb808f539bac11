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

#include "mpcgen/primitives.h"

#include <algorithm>
#include <bit>
#include <cmath>

#include "mpcgen/errors.h"

namespace mpcgen {
namespace {

using Words = std::vector<std::uint64_t>;

void CheckSameSize(const SharedVector& a, const SharedVector& b) {
  if (a.size() != b.size()) throw ContractError("operand sizes differ");
}

// Local 3-out-of-3 share of a*b from the two replicated pairs.
inline std::uint64_t Cross(std::uint64_t af, std::uint64_t as, std::uint64_t bf,
                           std::uint64_t bs) {
  return af * bf + af * bs + as * bf;
}

Words CrossTerms(const SharedVector& a, const SharedVector& b) {
  CheckSameSize(a, b);
  const auto af = a.first(), as = a.second(), bf = b.first(), bs = b.second();
  Words z(a.size());
  for (std::size_t i = 0; i < z.size(); ++i) z[i] = Cross(af[i], as[i], bf[i], bs[i]);
  return z;
}

// Masks the additive shares z with a fresh zero sharing and passes the own
// component to the predecessor.
SharedVector ReshareExact(Party& party, Words z) {
  Words u(z.size());
  party.randomness().NextZeroShares(u);
  for (std::size_t i = 0; i < z.size(); ++i) z[i] += u[i];
  const PartyId self = party.id();
  party.NextRound();
  party.Send(self.prev(), z);
  Words next = party.Receive(self.next());
  if (next.size() != z.size()) throw IntegrityError("reshare length mismatch");
  return SharedVector(self, std::move(z), std::move(next));
}

// Reshare that divides by 2^shift[i] on the way. After masking, S1 floors its
// own part and S2 ceils the sum of the other two (S3 sends it its part), so
// the parts land on floor + ceil of a split whose total is X: the result is
// X / 2^m within one unit, and exact when 2^m divides X. S1 and S2 derive a
// common mask r from their shared key, which keeps every party's traffic at
// one element per value:
//   round A: S3 -> S2: v3            S1 -> S3: floor(v1 / 2^m) - r
//   round B: S2 -> S3: ceil((v2 + v3) / 2^m)
SharedVector ReshareTruncated(Party& party, Words z, std::span<const int> shift) {
  const std::size_t n = z.size();
  Words u(n);
  party.randomness().NextZeroShares(u);
  for (std::size_t i = 0; i < n; ++i) z[i] += u[i];
  const PartyId self = party.id();
  Words first(n), second(n);
  party.NextRound();
  switch (self.index()) {
    case 1: {
      party.randomness().with_next().Fill(second);
      for (std::size_t i = 0; i < n; ++i) {
        first[i] = ArithmeticShiftRight(z[i], shift[i]) - second[i];
      }
      party.Send(PartyId(3), first);
      party.NextRound();
      break;
    }
    case 2: {
      party.randomness().with_prev().Fill(first);
      const Words v3 = party.Receive(PartyId(3));
      if (v3.size() != n) throw IntegrityError("reshare length mismatch");
      party.NextRound();
      for (std::size_t i = 0; i < n; ++i) {
        const std::uint64_t w = z[i] + v3[i];
        second[i] = 0 - ArithmeticShiftRight(0 - w, shift[i]);
      }
      party.Send(PartyId(3), second);
      break;
    }
    default: {
      party.Send(PartyId(2), std::move(z));
      second = party.Receive(PartyId(1));
      party.NextRound();
      first = party.Receive(PartyId(2));
      if (first.size() != n || second.size() != n) {
        throw IntegrityError("reshare length mismatch");
      }
      break;
    }
  }
  return SharedVector(self, std::move(first), std::move(second));
}

// `rescale` has one entry per value or a single broadcast entry.
SharedVector Reshare(Party& party, Words z, std::span<const Rescale> rescale) {
  const std::size_t n = z.size();
  if (rescale.size() != 1 && rescale.size() != n) {
    throw ContractError("rescale must be per element or broadcast");
  }
  auto at = [&](std::size_t i) -> const Rescale& {
    return rescale.size() == 1 ? rescale[0] : rescale[i];
  };
  bool shifts = false;
  for (std::size_t i = 0; i < n; ++i) {
    const Rescale& r = at(i);
    if (r.shift < 0 || r.shift > 62) throw ContractError("bad truncation shift");
    z[i] *= r.multiplier;
    shifts = shifts || r.shift != 0;
  }
  if (!shifts) return ReshareExact(party, std::move(z));
  std::vector<int> shift(n);
  for (std::size_t i = 0; i < n; ++i) shift[i] = at(i).shift;
  return ReshareTruncated(party, std::move(z), shift);
}

// ---- boolean sharings of 64-bit words -------------------------------------

SharedVector Xor(const SharedVector& a, const SharedVector& b) {
  CheckSameSize(a, b);
  SharedVector out = a;
  auto of = out.first(), os = out.second();
  const auto bf = b.first(), bs = b.second();
  for (std::size_t i = 0; i < out.size(); ++i) {
    of[i] ^= bf[i];
    os[i] ^= bs[i];
  }
  return out;
}

SharedVector ShiftLeft(const SharedVector& a, int k) {
  SharedVector out = a;
  for (auto& w : out.first()) w <<= k;
  for (auto& w : out.second()) w <<= k;
  return out;
}

SharedVector And(Party& party, const SharedVector& a, const SharedVector& b) {
  CheckSameSize(a, b);
  const auto af = a.first(), as = a.second(), bf = b.first(), bs = b.second();
  Words z(a.size());
  party.randomness().NextZeroXorShares(z);
  for (std::size_t i = 0; i < z.size(); ++i) {
    z[i] ^= (af[i] & bf[i]) ^ (af[i] & bs[i]) ^ (as[i] & bf[i]);
  }
  const PartyId self = party.id();
  party.NextRound();
  party.Send(self.prev(), z);
  Words next = party.Receive(self.next());
  if (next.size() != z.size()) throw IntegrityError("reshare length mismatch");
  return SharedVector(self, std::move(z), std::move(next));
}

// Sharing whose only non-zero component is component c of x. Works for both
// additive and XOR sharings.
SharedVector Component(const SharedVector& x, int c) {
  const PartyId self = x.party();
  SharedVector out(self, x.size());
  if (self.index() == c) {
    std::copy(x.first().begin(), x.first().end(), out.first().begin());
  }
  if (self.next().index() == c) {
    std::copy(x.second().begin(), x.second().end(), out.second().begin());
  }
  return out;
}

// Arithmetic sharing of bit j of component c of a boolean sharing, as an
// integer 0/1.
SharedVector ComponentBits(const SharedVector& x, int c, int bits) {
  const PartyId self = x.party();
  SharedVector out(self, x.size() * bits);
  auto spread = [&](std::span<const std::uint64_t> src, std::span<std::uint64_t> dst) {
    for (std::size_t i = 0; i < src.size(); ++i) {
      for (int j = 0; j < bits; ++j) dst[i * bits + j] = (src[i] >> j) & 1;
    }
  };
  if (self.index() == c) spread(x.first(), out.first());
  if (self.next().index() == c) spread(x.second(), out.second());
  return out;
}

// Integer sharing of sum_j 2^j b_j from the low `bits` bits of a boolean
// sharing. Each bit is b1 ^ b2 ^ b3 over single-component sharings, which
// is two arithmetic XORs: t = b1 + b2 - 2 b1 b2, then t + b3 - 2 t b3. The
// second product is folded into one weighted sum per value.
SharedVector BitsToArithmetic(Party& party, const SharedVector& x, int bits) {
  const std::size_t n = x.size();
  const SharedVector b1 = ComponentBits(x, 1, bits);
  const SharedVector b2 = ComponentBits(x, 2, bits);
  const SharedVector b3 = ComponentBits(x, 3, bits);
  SharedVector t = b1 + b2;
  SharedVector p = Mul(party, b1, b2);
  p.MulConstant(RingValue(2));
  t -= p;

  const auto tf = t.first(), ts = t.second();
  const auto cf = b3.first(), cs = b3.second();
  Words z(n, 0);
  SharedVector linear(x.party(), n);
  auto lf = linear.first(), ls = linear.second();
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t acc = 0, sf = 0, ss = 0;
    for (int j = 0; j < bits; ++j) {
      const std::size_t k = i * bits + j;
      const std::uint64_t w = std::uint64_t{1} << j;
      acc += w * Cross(tf[k], ts[k], cf[k], cs[k]);
      sf += w * (tf[k] + cf[k]);
      ss += w * (ts[k] + cs[k]);
    }
    z[i] = 0 - 2 * acc;
    lf[i] = sf;
    ls[i] = ss;
  }
  const Rescale unit;
  SharedVector out = Reshare(party, std::move(z), std::span(&unit, 1));
  out += linear;
  return out;
}

SharedVector Gather(const SharedVector& v, std::span<const std::size_t> idx) {
  SharedVector out(v.party(), idx.size());
  auto of = out.first(), os = out.second();
  const auto vf = v.first(), vs = v.second();
  for (std::size_t i = 0; i < idx.size(); ++i) {
    of[i] = vf[idx[i]];
    os[i] = vs[idx[i]];
  }
  return out;
}

void Scatter(SharedVector& v, std::span<const std::size_t> idx,
             const SharedVector& values) {
  auto vf = v.first(), vs = v.second();
  const auto of = values.first(), os = values.second();
  for (std::size_t i = 0; i < idx.size(); ++i) {
    vf[idx[i]] = of[i];
    vs[idx[i]] = os[i];
  }
}

SharedVector Concat(std::initializer_list<const SharedVector*> parts) {
  SharedVector out((*parts.begin())->party());
  for (const SharedVector* p : parts) out.Append(*p);
  return out;
}

// Indicators [x == v] for each v in `targets`, x in [0, domain): the
// Lagrange basis polynomial prod_{j != v} (x - j) / prod_{j != v} (v - j),
// multiplied out as a balanced product tree shared by all targets. The
// denominator's odd part is inverted mod 2^64 and its power of two removed
// by an exact truncation on the last product.
std::vector<SharedVector> PolynomialIndicators(Party& party, const SharedVector& x,
                                               std::span<const std::uint64_t> targets,
                                               std::uint64_t domain) {
  const std::size_t n = x.size();
  const PartyId self = x.party();
  std::vector<std::vector<SharedVector>> factors(targets.size());
  for (std::size_t t = 0; t < targets.size(); ++t) {
    for (std::uint64_t j = 0; j < domain; ++j) {
      if (j == targets[t]) continue;
      SharedVector f = x;
      f.AddConstant(RingValue(0 - j));
      factors[t].push_back(std::move(f));
    }
  }
  std::vector<SharedVector> out;
  if (domain == 1) {
    for (std::size_t t = 0; t < targets.size(); ++t) {
      SharedVector one(self, n);
      one.AddConstant(RingValue(1));
      out.push_back(std::move(one));
    }
    return out;
  }
  // Reduce every target's factor list to at most two, one batched round per
  // level.
  while (factors[0].size() > 2) {
    const std::size_t pairs = factors[0].size() / 2;
    SharedVector lhs(self), rhs(self);
    for (auto& list : factors) {
      for (std::size_t k = 0; k < pairs; ++k) {
        lhs.Append(list[2 * k]);
        rhs.Append(list[2 * k + 1]);
      }
    }
    const SharedVector prod = Mul(party, lhs, rhs);
    std::size_t offset = 0;
    for (auto& list : factors) {
      std::vector<SharedVector> next;
      for (std::size_t k = 0; k < pairs; ++k, offset += n) {
        next.push_back(prod.Slice(offset, n));
      }
      if (list.size() % 2 == 1) next.push_back(list.back());
      list = std::move(next);
    }
  }

  std::vector<Rescale> rescale;
  SharedVector lhs(self), rhs(self);
  for (std::size_t t = 0; t < targets.size(); ++t) {
    std::int64_t den = 1;
    for (std::uint64_t j = 0; j < domain; ++j) {
      if (j != targets[t]) {
        den *= static_cast<std::int64_t>(targets[t]) - static_cast<std::int64_t>(j);
      }
    }
    const std::uint64_t mag = static_cast<std::uint64_t>(den < 0 ? -den : den);
    const int twos = std::countr_zero(mag);
    const auto odd = static_cast<std::uint64_t>(den / (std::int64_t{1} << twos));
    const Rescale r{InverseOdd(odd), twos};
    if (factors[t].size() == 1) {
      // domain 2: the denominator is +/-1.
      SharedVector v = factors[t][0];
      v.MulConstant(RingValue(r.multiplier));
      out.push_back(std::move(v));
      continue;
    }
    lhs.Append(factors[t][0]);
    rhs.Append(factors[t][1]);
    rescale.insert(rescale.end(), n, r);
  }
  if (lhs.empty()) return out;
  const SharedVector prod = MulRescaled(party, lhs, rhs, rescale);
  for (std::size_t t = 0; t < targets.size(); ++t) {
    out.push_back(prod.Slice(t * n, n));
  }
  return out;
}

// Indicators via comparisons: [x == v] = [x < v+1] - [x < v].
std::vector<SharedVector> ComparisonIndicators(Party& party, const SharedVector& x,
                                               std::span<const std::uint64_t> targets) {
  const std::size_t n = x.size();
  SharedVector lhs(x.party());
  Words bounds;
  for (std::uint64_t v : targets) {
    for (std::uint64_t b : {v, v + 1}) {
      lhs.Append(x);
      bounds.insert(bounds.end(), n, b);
    }
  }
  const SharedVector c = LessThanPublic(party, lhs, bounds);
  std::vector<SharedVector> out;
  for (std::size_t t = 0; t < targets.size(); ++t) {
    out.push_back(c.Slice((2 * t + 1) * n, n) - c.Slice(2 * t * n, n));
  }
  return out;
}

std::vector<SharedVector> Indicators(Party& party, const SharedVector& x,
                                     std::span<const std::uint64_t> targets,
                                     std::uint64_t domain) {
  if (domain == 0) throw ContractError("empty domain");
  for (std::uint64_t v : targets) {
    if (v >= domain) throw ContractError("indicator target outside the domain");
  }
  if (domain <= kMaxPolynomialDomain) {
    return PolynomialIndicators(party, x, targets, domain);
  }
  return ComparisonIndicators(party, x, targets);
}

}  // namespace

SharedVector Mul(Party& party, const SharedVector& a, const SharedVector& b) {
  return ReshareExact(party, CrossTerms(a, b));
}

SharedVector MulRescaled(Party& party, const SharedVector& a, const SharedVector& b,
                         std::span<const Rescale> rescale) {
  return Reshare(party, CrossTerms(a, b), rescale);
}

SharedVector MulRescaled(Party& party, const SharedVector& a, const SharedVector& b,
                         Rescale rescale) {
  return Reshare(party, CrossTerms(a, b), std::span(&rescale, 1));
}

SharedVector MulFixed(Party& party, const SharedVector& a, const SharedVector& b) {
  return MulRescaled(party, a, b, Rescale{1, party.codec().fractional_bits()});
}

SharedVector Truncate(Party& party, const SharedVector& x, int bits) {
  const Rescale r{1, bits};
  return Reshare(party, Words(x.first().begin(), x.first().end()), std::span(&r, 1));
}

SharedVector MulPublicFixed(Party& party, const SharedVector& x, double c) {
  const Rescale r{party.codec().Encode(c).raw(), party.codec().fractional_bits()};
  return Reshare(party, Words(x.first().begin(), x.first().end()), std::span(&r, 1));
}

SharedVector Dot(Party& party, const SharedVector& a, const SharedVector& b) {
  const Words terms = CrossTerms(a, b);
  std::uint64_t sum = 0;
  for (std::uint64_t t : terms) sum += t;
  return ReshareExact(party, Words{sum});
}

SharedVector DotRows(Party& party, const SharedMatrix& left, const SharedMatrix& right,
                     std::span<const RowPair> pairs, Rescale rescale) {
  if (left.cols() != right.cols()) throw ContractError("row lengths differ");
  const std::size_t cols = left.cols();
  const auto lf = left.data().first(), ls = left.data().second();
  const auto rf = right.data().first(), rs = right.data().second();
  Words z(pairs.size());
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    if (pairs[k].left >= left.rows() || pairs[k].right >= right.rows()) {
      throw ContractError("row index out of range");
    }
    const std::size_t lo = pairs[k].left * cols, ro = pairs[k].right * cols;
    std::uint64_t acc = 0;
    for (std::size_t c = 0; c < cols; ++c) {
      acc += Cross(lf[lo + c], ls[lo + c], rf[ro + c], rs[ro + c]);
    }
    z[k] = acc;
  }
  return Reshare(party, std::move(z), std::span(&rescale, 1));
}

// The three additive components of x are re-read as XOR sharings that each
// have a single non-zero component, and added with a carry-save step
// followed by a Kogge-Stone prefix over (generate, propagate). Since the two
// are disjoint, OR can be written as XOR.
SharedVector Msb(Party& party, const SharedVector& x) {
  const SharedVector x1 = Component(x, 1);
  const SharedVector x2 = Component(x, 2);
  const SharedVector x3 = Component(x, 3);
  const SharedVector s = Xor(Xor(x1, x2), x3);
  // majority(x1, x2, x3) = ((x1 ^ x3) & (x2 ^ x3)) ^ x3
  const SharedVector carry =
      ShiftLeft(Xor(And(party, Xor(x1, x3), Xor(x2, x3)), x3), 1);

  const SharedVector p0 = Xor(s, carry);
  SharedVector g = And(party, s, carry);
  SharedVector p = p0;
  const std::size_t n = x.size();
  for (int k = 1; k < 64; k *= 2) {
    if (k < 32) {
      const SharedVector gk = ShiftLeft(g, k), pk = ShiftLeft(p, k);
      const SharedVector prod = And(party, Concat({&p, &p}), Concat({&gk, &pk}));
      g = Xor(g, prod.Slice(0, n));
      p = prod.Slice(n, n);
    } else {
      g = Xor(g, And(party, p, ShiftLeft(g, k)));
    }
  }
  // Bit 63 of the sum is p0[63] ^ carry into bit 63 (= prefix generate of
  // bits 0..62).
  SharedVector top(x.party(), n);
  auto tf = top.first(), ts = top.second();
  const auto pf = p0.first(), ps = p0.second();
  const auto gf = g.first(), gs = g.second();
  for (std::size_t i = 0; i < n; ++i) {
    tf[i] = (pf[i] >> 63) ^ ((gf[i] >> 62) & 1);
    ts[i] = (ps[i] >> 63) ^ ((gs[i] >> 62) & 1);
  }
  return BitsToArithmetic(party, top, 1);
}

SharedVector LessThan(Party& party, const SharedVector& a, const SharedVector& b) {
  return Msb(party, a - b);
}

SharedVector LessThanPublic(Party& party, const SharedVector& a,
                            std::span<const std::uint64_t> c) {
  if (c.size() != a.size()) throw ContractError("operand sizes differ");
  SharedVector d = a;
  Words neg(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) neg[i] = 0 - c[i];
  d.AddConstants(neg);
  return Msb(party, d);
}

SharedVector LessThanPublic(Party& party, const SharedVector& a, std::uint64_t c) {
  SharedVector d = a;
  d.AddConstant(RingValue(0 - c));
  return Msb(party, d);
}

SharedMatrix OneHot(Party& party, const SharedVector& x, std::uint64_t domain) {
  Words targets(domain);
  for (std::uint64_t v = 0; v < domain; ++v) targets[v] = v;
  SharedMatrix out(x.party(), domain, x.size());
  const auto rows = Indicators(party, x, targets, domain);
  for (std::uint64_t v = 0; v < domain; ++v) out.SetRow(v, rows[v]);
  return out;
}

SharedVector EqualsPublic(Party& party, const SharedVector& x, std::uint64_t value,
                          std::uint64_t domain) {
  const std::uint64_t target[] = {value};
  return Indicators(party, x, target, domain)[0];
}

SharedVector Divide(Party& party, const SharedVector& a, const SharedVector& b,
                    std::uint64_t bound, DivisorScale divisor_scale) {
  CheckSameSize(a, b);
  const int f = party.codec().fractional_bits();
  const int e = std::bit_width(bound);
  if (bound == 0 || e > f) {
    throw ParameterError("divisor bound must be in [1, 2^" + std::to_string(f) + ")");
  }
  const std::size_t n = a.size();
  const bool fixed = divisor_scale == DivisorScale::kFixed;
  const std::uint64_t unit = fixed ? party.codec().one() : 1;

  // c_j = [b < 2^j] for j = 0..e; exactly one step c_k - c_{k-1} fires, at
  // k = bit length of b, and t = 2^{e-k} scales b into [2^{e-1}, 2^e).
  SharedVector lhs(a.party());
  Words bounds;
  for (int j = 0; j <= e; ++j) {
    lhs.Append(b);
    bounds.insert(bounds.end(), n, unit << j);
  }
  const SharedVector c = LessThanPublic(party, lhs, bounds);
  SharedVector t(a.party(), n);
  for (int k = 1; k <= e; ++k) {
    SharedVector step = c.Slice(k * n, n) - c.Slice((k - 1) * n, n);
    step.MulConstant(RingValue(std::uint64_t{1} << (e - k)));
    t += step;
  }

  // a * t at scale f + e (kept exact for the remainder), a / 2^k at scale f,
  // and b / 2^k at scale f.
  std::vector<Rescale> rescale(n, Rescale{1, 0});
  rescale.insert(rescale.end(), n, Rescale{1, e});
  rescale.insert(rescale.end(), n, Rescale{fixed ? 1 : std::uint64_t{1} << (f - e),
                                           fixed ? e : 0});
  const SharedVector scaled =
      MulRescaled(party, Concat({&a, &a, &b}), Concat({&t, &t, &t}), rescale);
  SharedVector at_exact = scaled.Slice(0, n);
  const SharedVector a_norm = scaled.Slice(n, n);
  const SharedVector b_norm = scaled.Slice(2 * n, n);

  // Reciprocal of b_norm in [1/2, 1).
  SharedVector w = b_norm;
  w.MulConstant(RingValue(0 - std::uint64_t{2}));
  w.AddConstant(party.codec().Encode(2.9142));
  const RingValue two = party.codec().Encode(2.0);
  for (int i = 0; i < 3; ++i) {
    SharedVector bw = MulFixed(party, b_norm, w).Negated();
    bw.AddConstant(two);
    w = MulFixed(party, w, bw);
  }
  SharedVector q = MulFixed(party, a_norm, w);

  // Exact remainder (a - q b) / 2^k at scale 2f, then one correction step.
  at_exact.MulConstant(RingValue(std::uint64_t{1} << (f - e)));
  const SharedVector rem = at_exact - Mul(party, q, b_norm);
  q += MulRescaled(party, rem, w, Rescale{1, 2 * f});
  return q;
}

std::vector<ComparatorLayer> OddEvenMergeLayers(std::size_t n) {
  std::vector<ComparatorLayer> layers;
  for (std::size_t p = 1; p < n; p *= 2) {
    for (std::size_t k = p; k >= 1; k /= 2) {
      ComparatorLayer layer;
      for (std::size_t j = k % p; j + k < n; j += 2 * k) {
        for (std::size_t i = 0; i < k && i + j + k < n; ++i) {
          if ((i + j) / (2 * p) == (i + j + k) / (2 * p)) {
            layer.emplace_back(static_cast<std::uint32_t>(i + j),
                               static_cast<std::uint32_t>(i + j + k));
          }
        }
      }
      if (!layer.empty()) layers.push_back(std::move(layer));
    }
  }
  return layers;
}

SharedMatrix SortRows(Party& party, const SharedMatrix& m) {
  SharedMatrix out = m;
  const std::size_t cols = m.cols();
  for (const ComparatorLayer& layer : OddEvenMergeLayers(cols)) {
    std::vector<std::size_t> lo, hi;
    lo.reserve(layer.size() * m.rows());
    hi.reserve(layer.size() * m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) {
      for (const auto& [i, j] : layer) {
        lo.push_back(r * cols + i);
        hi.push_back(r * cols + j);
      }
    }
    SharedVector a = Gather(out.data(), lo);
    SharedVector b = Gather(out.data(), hi);
    const SharedVector swap = LessThan(party, b, a);
    const SharedVector delta = Mul(party, swap, b - a);
    a += delta;
    b -= delta;
    Scatter(out.data(), lo, a);
    Scatter(out.data(), hi, b);
  }
  return out;
}

SharedVector Sort(Party& party, const SharedVector& v) {
  return SortRows(party, SharedMatrix(1, v.size(), v)).data();
}

SharedVector RandUnit(Party& party, std::size_t n) {
  const int f = party.codec().fractional_bits();
  SharedVector words(party.id(), n);
  party.randomness().NextRandomShares(words.first(), words.second());
  const std::uint64_t mask = (std::uint64_t{1} << f) - 1;
  for (auto& w : words.first()) w &= mask;
  for (auto& w : words.second()) w &= mask;
  return BitsToArithmetic(party, words, f);
}

SharedVector GaussVector(Party& party, std::size_t n) {
  constexpr std::size_t kTerms = 12;
  constexpr std::size_t kChunk = 4096;
  SharedVector out(party.id(), n);
  auto of = out.first(), os = out.second();
  for (std::size_t start = 0; start < n; start += kChunk) {
    const std::size_t m = std::min(kChunk, n - start);
    const SharedVector u = RandUnit(party, kTerms * m);
    const auto uf = u.first(), us = u.second();
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t k = 0; k < kTerms; ++k) {
        of[start + i] += uf[k * m + i];
        os[start + i] += us[k * m + i];
      }
    }
  }
  out.AddConstant(RingValue(0 - 6 * party.codec().one()));
  return out;
}

std::optional<std::vector<std::uint64_t>> Reveal(Party& party, const SharedVector& x,
                                                 PartyId to) {
  const PartyId self = party.id();
  party.NextRound();
  // The component `to` lacks is the predecessor's first and the successor's
  // second.
  if (self == to.prev()) {
    party.Send(to, Words(x.first().begin(), x.first().end()));
    return std::nullopt;
  }
  if (self == to.next()) {
    party.Send(to, Words(x.second().begin(), x.second().end()));
    return std::nullopt;
  }
  const Words from_prev = party.Receive(self.prev());
  const Words from_next = party.Receive(self.next());
  if (from_prev != from_next || from_prev.size() != x.size()) {
    throw IntegrityError("revealed component disagrees between " +
                         self.prev().ToString() + " and " + self.next().ToString());
  }
  Words out(x.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = x.first()[i] + x.second()[i] + from_prev[i];
  }
  return out;
}

std::vector<std::uint64_t> RevealAll(Party& party, const SharedVector& x) {
  const PartyId self = party.id();
  party.NextRound();
  party.Send(self.next(), Words(x.first().begin(), x.first().end()));
  party.Send(self.prev(), Words(x.second().begin(), x.second().end()));
  const Words from_prev = party.Receive(self.prev());
  const Words from_next = party.Receive(self.next());
  if (from_prev != from_next || from_prev.size() != x.size()) {
    throw IntegrityError("revealed component disagrees between " +
                         self.prev().ToString() + " and " + self.next().ToString());
  }
  Words out(x.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = x.first()[i] + x.second()[i] + from_prev[i];
  }
  return out;
}

}  // namespace mpcgen
