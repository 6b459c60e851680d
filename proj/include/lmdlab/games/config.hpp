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

#ifndef LMDLAB_GAMES_CONFIG_HPP_
#define LMDLAB_GAMES_CONFIG_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>

#include "lmdlab/chain/fork_choice.hpp"
#include "lmdlab/reward/reward.hpp"

namespace lmdlab::games {

class GameConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};
// Selfish mining needs at least as many adversarial as honest slots.
class ConditionViolated : public GameConfigError {
 public:
  using GameConfigError::GameConfigError;
};
class AssumptionViolated : public GameConfigError {
 public:
  using GameConfigError::GameConfigError;
};
class HonestMajority : public GameConfigError {
 public:
  using GameConfigError::GameConfigError;
};

enum class GameKind : std::uint8_t {
  Simple,
  StrongSimple,
  SimpleNoBoost,
  Extended,
  SelfishMining,
  PoolSimple,
  DagVotes,
};

const char* to_string(GameKind k);
std::optional<GameKind> game_kind_from_string(std::string_view s);

enum class DagAdversary : std::uint8_t { OffTip, OnTip };

// Attestors controlled by one staking pool. `per_slot` overrides
// `members` for individual slots.
struct PoolConfig {
  std::uint32_t members = 0;
  std::map<Slot, std::uint32_t> per_slot;

  std::uint32_t members_at(Slot s) const {
    auto it = per_slot.find(s);
    return it == per_slot.end() ? members : it->second;
  }
};

struct GameConfig {
  GameKind kind = GameKind::Simple;
  std::uint32_t W = 4;
  std::int64_t W_p = 2;
  // Horizon of the extended and selfish-mining games.
  std::int64_t p = 2;
  // Selfish mining: adversarial slots within 1..p+1.
  std::set<Slot> adversarial_slots;
  reward::Amount r{1};
  reward::Amount R{1};
  reward::Mechanism mechanism = reward::Mechanism::Ethereum;
  TieBreakPolicy tie_break = TieBreakPolicy::AdversaryFavoring;
  // Defaults to the game kind's own rule when unset.
  std::optional<reward::LeaderReward> leader_reward;
  std::uint64_t seed = 0;
  std::optional<PoolConfig> pool;
  // Honest attestors per slot. They follow the protocol and are not players.
  std::uint32_t W_h = 0;
  std::uint32_t epoch_length = 32;
  bool credibility_assumed = true;
  // Lets a selfish-mining game run with fewer adversarial than honest slots.
  bool allow_condition_violation = false;
  DagAdversary dag_adversary = DagAdversary::OffTip;
  // Proposer boost for the DAG game; other games use W_p.
  std::optional<std::int64_t> boost;

  void validate() const;
  std::int64_t effective_boost() const;
  reward::LeaderReward effective_leader_reward() const;
};

}  // namespace lmdlab::games

#endif  // LMDLAB_GAMES_CONFIG_HPP_
