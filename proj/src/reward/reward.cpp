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

#include "lmdlab/reward/reward.hpp"

#include <set>
#include <sstream>

#include "lmdlab/chain/fork_choice.hpp"
#include "lmdlab/sim/engine.hpp"

namespace lmdlab::reward {

std::string to_string(const Amount& a) {
  std::ostringstream os;
  os << a.numerator();
  if (a.denominator() != 1) os << '/' << a.denominator();
  return os.str();
}

void PayoffLedger::credit(ValidatorId who, Slot slot, Channel channel,
                          const Amount& amount) {
  totals_[who] += amount;
  per_slot_[{who, slot, channel}] += amount;
}

Amount PayoffLedger::of(ValidatorId who) const {
  auto it = totals_.find(who);
  return it == totals_.end() ? Amount(0) : it->second;
}

Amount PayoffLedger::of(ValidatorId who, Slot slot, Channel channel) const {
  auto it = per_slot_.find({who, slot, channel});
  return it == per_slot_.end() ? Amount(0) : it->second;
}

Amount PayoffLedger::total() const {
  Amount t(0);
  for (const auto& [who, a] : totals_) t += a;
  return t;
}

bool head_vote_correct(const VoteRecord& vote, const std::vector<BlockId>& chain,
                       const BlockTree& tree) {
  if (!tree.contains(vote.target)) {
    throw ChainError(ChainErrc::TargetNotOnChainQueryable,
                     "target " + std::to_string(vote.target.value));
  }
  const auto last = last_block_at_or_before(tree, chain, vote.slot);
  return last && *last == vote.target;
}

bool head_vote_timely_ethereum(const VoteRecord& vote, const Block& including) {
  return including.slot == vote.slot + 1;
}

std::size_t unique_evidence_signers(const VoteRecord& vote,
                                    const std::vector<BlockId>& chain,
                                    const BlockTree& tree) {
  const auto last = last_block_at_or_before(tree, chain, vote.slot);
  const Slot after = last ? tree.block(*last).slot : vote.slot;
  std::set<ValidatorId> signers;
  for (BlockId id : chain) {
    const Block& b = tree.block(id);
    if (b.slot <= after) continue;
    for (const EvidenceRecord& e : b.included_evidences) {
      if (e.vote.same_vote(vote)) signers.insert(e.signer);
    }
  }
  return signers.size();
}

bool head_vote_timely_dag(const VoteRecord& vote, const std::vector<BlockId>& chain,
                          const BlockTree& tree, std::int64_t committee_size) {
  for (BlockId id : chain) {
    const Block& b = tree.block(id);
    if (b.slot != vote.slot + 1) continue;
    for (const VoteRecord& v : b.included_votes) {
      if (v.same_vote(vote)) return true;
    }
  }
  const auto n = static_cast<std::int64_t>(unique_evidence_signers(vote, chain, tree));
  return 2 * n > committee_size;
}

PayoffLedger settle_chain(const BlockTree& tree, const std::vector<BlockId>& chain,
                          const RewardParams& params) {
  PayoffLedger ledger;
  std::set<std::pair<ValidatorId, Slot>> credited;
  for (BlockId id : chain) {
    const Block& b = tree.block(id);
    if (id == tree.genesis().id) continue;
    if (params.leader_reward == LeaderReward::PerCanonicalBlock) {
      ledger.credit(b.proposer, b.slot, Channel::Inclusion, params.R);
      ledger.leader_total_ += params.R;
    }
    for (const VoteRecord& v : b.included_votes) {
      if (v.slot >= b.slot) continue;
      if (credited.count({v.voter, v.slot})) continue;
      if (!head_vote_correct(v, chain, tree)) continue;
      const bool timely =
          params.mechanism == Mechanism::Ethereum
              ? head_vote_timely_ethereum(v, b)
              : head_vote_timely_dag(v, chain, tree, params.committee_size);
      if (!timely) continue;
      credited.insert({v.voter, v.slot});
      ledger.credit(v.voter, v.slot, Channel::Attestation, params.r);
      ledger.attestor_total_ += params.r;
      ++ledger.credited_votes_;
      if (params.leader_reward == LeaderReward::PerIncludedVote) {
        ledger.credit(b.proposer, b.slot, Channel::Inclusion, params.R);
        ledger.leader_total_ += params.R;
      }
    }
  }
  return ledger;
}

PayoffLedger settle_payoffs(const sim::RunTrace& trace, const RewardParams& params) {
  const BlockTree view = trace.settlement_view();
  const auto chain = canonical_chain(view, trace.settlement_params(view));
  return settle_chain(view, chain, params);
}

}  // namespace lmdlab::reward
