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

#ifndef LMDLAB_REWARD_REWARD_HPP_
#define LMDLAB_REWARD_REWARD_HPP_

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

#include "lmdlab/chain/block_tree.hpp"

namespace lmdlab::sim {
struct RunTrace;
}

namespace lmdlab::reward {

using Amount = boost::rational<std::int64_t>;

std::string to_string(const Amount& a);

enum class Mechanism : std::uint8_t { Ethereum, DagVotes };

enum class LeaderReward : std::uint8_t {
  // R for every correct and timely vote the leader's block includes.
  PerIncludedVote,
  // R once for a block that ends up on the canonical chain.
  PerCanonicalBlock,
};

// Altair attestation weights, in units of 1/denominator.
struct VoteWeights {
  std::int64_t source = 14;
  std::int64_t target = 26;
  std::int64_t head = 14;
  std::int64_t proposer = 8;
  std::int64_t denominator = 64;

  std::int64_t sum() const { return source + target + head; }
  // Proposer share of an attestation reward: 8 / (64 - 8) = 8/56.
  Amount proposer_share() const { return Amount(proposer, denominator - proposer); }
};

struct RewardParams {
  Amount r{1};
  Amount R{1};
  Mechanism mechanism = Mechanism::Ethereum;
  LeaderReward leader_reward = LeaderReward::PerIncludedVote;
  std::int64_t committee_size = 0;  // W, used by the DAG threshold
  VoteWeights weights;
};

// Attestation rewards are booked under the vote's slot, inclusion rewards
// under the including block's slot.
enum class Channel : std::uint8_t { Attestation, Inclusion };

class PayoffLedger {
 public:
  using Key = std::tuple<ValidatorId, Slot, Channel>;

  void credit(ValidatorId who, Slot slot, Channel channel, const Amount& amount);

  Amount of(ValidatorId who) const;
  Amount of(ValidatorId who, Slot slot, Channel channel) const;
  Amount total() const;

  const std::map<ValidatorId, Amount>& totals() const { return totals_; }
  const std::map<Key, Amount>& per_slot() const { return per_slot_; }
  std::size_t credited_votes() const { return credited_votes_; }
  Amount attestor_total() const { return attestor_total_; }
  Amount leader_total() const { return leader_total_; }

 private:
  friend PayoffLedger settle_chain(const BlockTree&, const std::vector<BlockId>&,
                                   const RewardParams&);
  std::map<ValidatorId, Amount> totals_;
  std::map<Key, Amount> per_slot_;
  std::size_t credited_votes_ = 0;
  Amount attestor_total_{0};
  Amount leader_total_{0};
};

// True iff vote.target is the last block of `chain` with slot <= vote.slot.
bool head_vote_correct(const VoteRecord& vote, const std::vector<BlockId>& chain,
                       const BlockTree& tree);

bool head_vote_timely_ethereum(const VoteRecord& vote, const Block& including);

// Unique signers among evidences for `vote` in chain blocks after B_l, the
// last chain block with slot <= vote.slot.
std::size_t unique_evidence_signers(const VoteRecord& vote,
                                    const std::vector<BlockId>& chain,
                                    const BlockTree& tree);

// Included in a chain block of slot vote.slot + 1, or more than W/2 unique
// evidences on chain after B_l.
bool head_vote_timely_dag(const VoteRecord& vote, const std::vector<BlockId>& chain,
                          const BlockTree& tree, std::int64_t committee_size);

// Credits every correct and timely vote carried by `chain` exactly once.
PayoffLedger settle_chain(const BlockTree& tree, const std::vector<BlockId>& chain,
                          const RewardParams& params);

PayoffLedger settle_payoffs(const sim::RunTrace& trace, const RewardParams& params);

}  // namespace lmdlab::reward

#endif  // LMDLAB_REWARD_REWARD_HPP_
