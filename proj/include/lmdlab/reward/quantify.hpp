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

#ifndef LMDLAB_REWARD_QUANTIFY_HPP_
#define LMDLAB_REWARD_QUANTIFY_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "lmdlab/reward/reward.hpp"

namespace lmdlab::reward {

class ZeroStake : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr std::int64_t kGweiPerEth = 1'000'000'000;

// Average attestation inclusion reward a proposer earns for one block, in
// gwei, under Altair weights.
struct InclusionReward {
  std::int64_t base_reward_per_increment = 0;
  std::int64_t base_reward = 0;  // per validator
  Amount committee_size{0};      // n_validators / 32
  Amount all_three_votes{0};
  Amount source_target_only{0};
  Amount head_only{0};
  // Head-vote rewards paid to the attestors of one slot.
  Amount committee_head_total{0};
};

std::uint64_t isqrt(std::uint64_t n);

InclusionReward altair_block_inclusion_reward(std::int64_t n_validators,
                                              std::int64_t stake_per_validator_gwei,
                                              const VoteWeights& weights = {});

struct AttackGain {
  Amount fail_block_reward{0};     // all three votes + MEV without the attack
  Amount success_block_reward{0};  // all three + source/target only + MEV
  Amount delta{0};
  Amount delta_fraction{0};        // delta / fail_block_reward
  Amount pool_head_loss{0};
  Amount pool_net{0};
};

// MEV inputs are in ETH; outputs in gwei.
AttackGain attack_gain_summary(const InclusionReward& inclusion,
                               const Amount& mev_fail_eth,
                               const Amount& mev_success_eth,
                               const Amount& pool_share);

double to_eth(const Amount& gwei);

struct QuantRow {
  std::string label;
  Amount gwei;
};

std::vector<QuantRow> quantification_rows(const InclusionReward& inclusion,
                                          const AttackGain& gain);

}  // namespace lmdlab::reward

#endif  // LMDLAB_REWARD_QUANTIFY_HPP_
