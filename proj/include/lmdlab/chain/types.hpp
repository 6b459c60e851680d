// Copyright 2026 The lmdlab Authors
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

#ifndef LMDLAB_CHAIN_TYPES_HPP_
#define LMDLAB_CHAIN_TYPES_HPP_

#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lmdlab {

using Slot = std::int64_t;
using Tick = std::int64_t;

inline constexpr Tick kNeverReleased = std::numeric_limits<Tick>::max();

struct BlockId {
  std::uint64_t value = 0;
  friend constexpr auto operator<=>(BlockId, BlockId) = default;
};

struct ValidatorId {
  std::uint32_t index = 0;
  friend constexpr auto operator<=>(ValidatorId, ValidatorId) = default;
};

enum class ValidatorKind : std::uint8_t { Honest, Rational, Adversarial };

using PoolId = std::uint32_t;

struct Validator {
  ValidatorId id;
  ValidatorKind kind = ValidatorKind::Rational;
  std::optional<PoolId> pool;
};

// A head vote. Identity is (slot, voter, target); broadcast_tick is metadata.
struct VoteRecord {
  Slot slot = 0;
  ValidatorId voter;
  BlockId target;
  Tick broadcast_tick = 0;

  bool same_vote(const VoteRecord& o) const {
    return slot == o.slot && voter == o.voter && target == o.target;
  }
};

// A signer attesting that it observed `vote` in time.
struct EvidenceRecord {
  ValidatorId signer;
  VoteRecord vote;
  Tick created_tick = 0;
};

struct Block {
  BlockId id;
  Slot slot = 0;
  BlockId parent;
  ValidatorId proposer;
  ValidatorKind proposer_kind = ValidatorKind::Honest;
  bool is_empty = false;
  std::vector<VoteRecord> included_votes;
  std::vector<EvidenceRecord> included_evidences;
};

enum class ChainErrc {
  UnknownParent,
  UnknownBlock,
  DuplicateId,
  IdOutOfOrder,
  SlotNotAfterParent,
  EquivocationRejected,
  InvalidVote,
  TargetNotOnChainQueryable,
};

const char* to_string(ChainErrc code);

class ChainError : public std::runtime_error {
 public:
  ChainError(ChainErrc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}
  ChainErrc code() const { return code_; }

 private:
  ChainErrc code_;
};

}  // namespace lmdlab

#endif  // LMDLAB_CHAIN_TYPES_HPP_
