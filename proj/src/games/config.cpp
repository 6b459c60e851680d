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

#include "lmdlab/games/config.hpp"

#include <array>
#include <utility>

namespace lmdlab::games {
namespace {

constexpr std::array<std::pair<GameKind, const char*>, 7> kKinds{{
    {GameKind::Simple, "simple"},
    {GameKind::StrongSimple, "strong-simple"},
    {GameKind::SimpleNoBoost, "simple-no-boost"},
    {GameKind::Extended, "extended"},
    {GameKind::SelfishMining, "selfish-mining"},
    {GameKind::PoolSimple, "pool-simple"},
    {GameKind::DagVotes, "dag-votes"},
}};

}  // namespace

const char* to_string(GameKind k) {
  for (const auto& [kind, name] : kKinds) {
    if (kind == k) return name;
  }
  return "?";
}

std::optional<GameKind> game_kind_from_string(std::string_view s) {
  for (const auto& [kind, name] : kKinds) {
    if (s == name) return kind;
  }
  return std::nullopt;
}

void GameConfig::validate() const {
  if (W == 0) throw GameConfigError("W must be positive");
  if (W_p < 0 || W_p > static_cast<std::int64_t>(W)) {
    throw GameConfigError("W_p must lie in [0, W]");
  }
  if (W_h > W) throw GameConfigError("W_h must not exceed W");
  if (epoch_length == 0) throw GameConfigError("epoch_length must be positive");
  if (r < reward::Amount(0) || R < reward::Amount(0)) {
    throw GameConfigError("rewards must be non-negative");
  }
  if ((kind == GameKind::Extended || kind == GameKind::SelfishMining) && p < 1) {
    throw GameConfigError("p must be at least 1");
  }
  if (pool) {
    if (pool->members >= W) throw GameConfigError("pool must hold fewer than W attestors");
    for (const auto& [slot, m] : pool->per_slot) {
      if (m >= W) throw GameConfigError("pool must hold fewer than W attestors");
    }
  }
  if (kind == GameKind::SimpleNoBoost && W_p != 0) {
    throw GameConfigError("the no-boost game requires W_p = 0");
  }
  if (kind == GameKind::SelfishMining) {
    std::int64_t n_a = 0;
    for (Slot s : adversarial_slots) {
      if (s < 1 || s > p + 1) {
        throw GameConfigError("adversarial slot " + std::to_string(s) +
                              " outside 1..p+1");
      }
      ++n_a;
    }
    if (n_a > 0 && !adversarial_slots.count(p + 1)) {
      throw GameConfigError("slot p+1 must be adversarial");
    }
    const std::int64_t n_na = p + 1 - n_a;
    if (n_a < n_na && !allow_condition_violation) {
      throw ConditionViolated("N_A = " + std::to_string(n_a) + " < N_NA = " +
                              std::to_string(n_na));
    }
  }
}

std::int64_t GameConfig::effective_boost() const {
  if (boost) return *boost;
  if (kind == GameKind::DagVotes) return 0;
  return W_p;
}

reward::LeaderReward GameConfig::effective_leader_reward() const {
  if (leader_reward) return *leader_reward;
  switch (kind) {
    case GameKind::Extended:
    case GameKind::DagVotes:
      return reward::LeaderReward::PerCanonicalBlock;
    default:
      return reward::LeaderReward::PerIncludedVote;
  }
}

}  // namespace lmdlab::games
