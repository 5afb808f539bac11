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

#ifndef MPCGEN_PARTY_ID_H_
#define MPCGEN_PARTY_ID_H_

#include <array>
#include <string>

namespace mpcgen {

// One of the three computing servers S1, S2, S3. Successor and predecessor
// wrap around: next(S3) = S1.
class PartyId {
 public:
  constexpr explicit PartyId(int index) : index_(index) {}

  // Throws ParameterError for anything outside {1, 2, 3}.
  static PartyId FromIndex(int index);

  constexpr int index() const { return index_; }
  // 0-based slot, handy for arrays indexed by party.
  constexpr int slot() const { return index_ - 1; }
  constexpr PartyId next() const { return PartyId(index_ % 3 + 1); }
  constexpr PartyId prev() const { return PartyId((index_ + 1) % 3 + 1); }

  friend constexpr bool operator==(PartyId, PartyId) = default;

  std::string ToString() const { return "S" + std::to_string(index_); }

 private:
  int index_;
};

inline constexpr std::array<PartyId, 3> kAllParties = {PartyId(1), PartyId(2),
                                                       PartyId(3)};

}  // namespace mpcgen

#endif  // MPCGEN_PARTY_ID_H_
