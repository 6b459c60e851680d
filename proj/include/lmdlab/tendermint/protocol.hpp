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

#ifndef LMDLAB_TENDERMINT_PROTOCOL_HPP_
#define LMDLAB_TENDERMINT_PROTOCOL_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "lmdlab/chain/types.hpp"

namespace lmdlab::tm {

// Rounds are called "round" rather than "r" to keep them apart from the
// per-vote reward.
using Height = std::int64_t;
using Round = std::int64_t;
// A proposed block, or nil when empty.
using Value = std::optional<BlockId>;

struct TmParams {
  std::int64_t f = 1;
  std::int64_t n() const { return 3 * f + 1; }
  std::int64_t quorum() const { return 2 * f + 1; }
};

struct RoundState {
  Height height = 1;
  Round round = 1;
  Round locked_round = -1;
  Value locked_value;
  Round valid_round = -1;
  Value valid_value;

  // valid_round >= locked_round, and a lock exists exactly when
  // locked_round is set.
  bool consistent() const;
};

enum class MsgKind : std::uint8_t { Proposal, Prevote, Precommit };
const char* to_string(MsgKind k);

struct TmMsg {
  MsgKind kind = MsgKind::Prevote;
  Height h = 1;
  Round round = 1;
  Value value;
  Round vr = -1;  // proposals only
  ValidatorId sender;

  friend auto operator<=>(const TmMsg&, const TmMsg&) = default;
};

enum class EvidenceKind : std::uint8_t { Prevote, Precommit };

// `signer` vouches for `attested`. The evidence is created while the signer
// sends its own message at (at_height, at_round): its precommit for prevote
// evidence, its prevote for precommit evidence.
struct TmEvidence {
  EvidenceKind kind = EvidenceKind::Prevote;
  ValidatorId signer;
  TmMsg attested;
  // Prevotes forwarded by the attested sender to justify its vote.
  std::vector<TmMsg> justification;
  Height at_height = 1;
  Round at_round = 1;
};

// A validator tried to send two different votes of one kind for the same
// height and round.
class SlashableAttempt : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Messages known to one observer. Holds at most one message per
// (kind, sender, height, round).
class MessageLog {
 public:
  // False when the exact message is already present. Throws
  // SlashableAttempt on a conflicting one.
  bool add(const TmMsg& msg);

  std::span<const TmMsg> messages() const { return msgs_; }
  const TmMsg* find(MsgKind kind, ValidatorId sender, Height h, Round round) const;
  const TmMsg* proposal(Height h, Round round) const;
  std::size_t count(MsgKind kind, Height h, Round round, const Value& value) const;
  // The value (possibly nil) holding a quorum of `kind` votes, if any.
  std::optional<Value> quorum_value(MsgKind kind, Height h, Round round,
                                    const TmParams& params) const;
  // Highest round seen at height `h`, 0 if none.
  Round last_round(Height h) const;

 private:
  std::vector<TmMsg> msgs_;
};

enum class Step : std::uint8_t { Propose, Prevote, Precommit };

struct StepContext {
  ValidatorId self;
  ValidatorId leader;
  BlockId fresh_block;  // proposed when there is no valid value
  TmParams params;
};

// One protocol step for `state` at its current height and round, given
// everything delivered to the validator so far. Updates the lock and valid
// fields and returns what the validator sends. When no quorum of prevotes
// is visible by the precommit step the validator precommits nil, as it
// would after the step timeout. Throws SlashableAttempt if `view` already
// holds a different vote of the same kind from this validator.
std::vector<TmMsg> tm_step(RoundState& state, Step step, const MessageLog& view,
                           const StepContext& ctx);

// The non-nil value finalized at (h, round) in `view`, if any.
Value finalized_value(const MessageLog& view, Height h, Round round, const TmParams& params);

bool prevote_evidence_valid(const TmEvidence& ev, const MessageLog& signer_view,
                            const TmParams& params);

// `signer_view` stands for what the signer had received by the end of the
// attested round's precommit step; the justification travels inside the
// evidence.
bool precommit_evidence_valid(const TmEvidence& ev, const MessageLog& signer_view,
                              const TmParams& params);

// A vote may only be rewarded from a block at a later (height, round).
bool vote_correct(const TmMsg& vote, Height block_h, Round block_round);

// Distinct signers among evidences of the matching kind attesting `vote`.
std::size_t unique_evidence_count(const TmMsg& vote, std::span<const TmEvidence> evidences);

bool tm_vote_reward(const TmMsg& vote, Height block_h, Round block_round,
                    std::size_t unique_evidences, const TmParams& params);

}  // namespace lmdlab::tm

#endif  // LMDLAB_TENDERMINT_PROTOCOL_HPP_
