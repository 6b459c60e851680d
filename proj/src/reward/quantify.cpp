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

#include "lmdlab/reward/quantify.hpp"

#include <cmath>

namespace lmdlab::reward {

std::uint64_t isqrt(std::uint64_t n) {
  auto x = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  while (x * x > n) --x;
  while ((x + 1) * (x + 1) <= n) ++x;
  return x;
}

InclusionReward altair_block_inclusion_reward(std::int64_t n_validators,
                                              std::int64_t stake_per_validator_gwei,
                                              const VoteWeights& w) {
  if (n_validators <= 0 || stake_per_validator_gwei <= 0) {
    throw ZeroStake("validator count and stake must be positive");
  }
  constexpr std::int64_t kIncrement = kGweiPerEth;
  constexpr std::int64_t kBaseRewardFactor = 64;
  constexpr std::int64_t kSlotsPerEpoch = 32;

  InclusionReward out;
  const auto total = static_cast<std::uint64_t>(n_validators) *
                     static_cast<std::uint64_t>(stake_per_validator_gwei);
  out.base_reward_per_increment =
      kIncrement * kBaseRewardFactor / static_cast<std::int64_t>(isqrt(total));
  out.base_reward =
      (stake_per_validator_gwei / kIncrement) * out.base_reward_per_increment;
  out.committee_size = Amount(n_validators, kSlotsPerEpoch);

  const Amount per_attestor = Amount(out.base_reward) * out.committee_size;
  const Amount share = w.proposer_share();
  out.all_three_votes = per_attestor * Amount(w.sum(), w.denominator) * share;
  out.source_target_only =
      per_attestor * Amount(w.source + w.target, w.denominator) * share;
  out.head_only = per_attestor * Amount(w.head, w.denominator) * share;
  out.committee_head_total = per_attestor * Amount(w.head, w.denominator);
  return out;
}

AttackGain attack_gain_summary(const InclusionReward& inc, const Amount& mev_fail_eth,
                               const Amount& mev_success_eth,
                               const Amount& pool_share) {
  AttackGain g;
  const Amount eth(kGweiPerEth);
  // Without the attack the block carries all three votes of one committee.
  // With it, B_A also carries the source and target votes of the slot t
  // committee whose head votes B_t lost.
  g.fail_block_reward = inc.all_three_votes + mev_fail_eth * eth;
  g.success_block_reward =
      inc.all_three_votes + inc.source_target_only + mev_success_eth * eth;
  g.delta = g.success_block_reward - g.fail_block_reward;
  g.delta_fraction = g.delta / g.fail_block_reward;
  g.pool_head_loss = pool_share * inc.committee_head_total;
  g.pool_net = g.delta - g.pool_head_loss;
  return g;
}

double to_eth(const Amount& gwei) {
  return boost::rational_cast<double>(gwei) / static_cast<double>(kGweiPerEth);
}

std::vector<QuantRow> quantification_rows(const InclusionReward& inc,
                                          const AttackGain& g) {
  return {
      {"inclusion reward, all three votes", inc.all_three_votes},
      {"inclusion reward, source and target only", inc.source_target_only},
      {"inclusion reward, head only", inc.head_only},
      {"inclusion reward with the attack", inc.all_three_votes + inc.source_target_only},
      {"block reward without the attack", g.fail_block_reward},
      {"block reward with the attack", g.success_block_reward},
      {"increase in block reward", g.delta},
      {"committee head-vote reward", inc.committee_head_total},
      {"pool head-vote loss", g.pool_head_loss},
      {"pool net gain", g.pool_net},
  };
}

}  // namespace lmdlab::reward
