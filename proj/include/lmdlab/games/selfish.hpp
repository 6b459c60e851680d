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

#ifndef LMDLAB_GAMES_SELFISH_HPP_
#define LMDLAB_GAMES_SELFISH_HPP_

#include <cstdint>
#include <optional>
#include <set>

#include "lmdlab/games/game.hpp"
#include "lmdlab/games/simple.hpp"

namespace lmdlab::games {

// Selfish-mining-inspired game. Slot 0 holds B_0 and the attack covers
// slots 1..p+1. Attestors of slots preceding an adversarial slot are asked
// to withhold their vote and later vote for the adversary's previous fork
// block, which the adversary reveals from tick 3p. The whole fork is public
// before tick 3(p+1)+1.
class SelfishMiningGame : public LmdGame {
 public:
  explicit SelfishMiningGame(GameConfig config);
  GameOutcome simulate(const eq::Profile& profile) const override;

  // Slots in 0..p whose successor is adversarial, and the rest.
  const std::set<Slot>& preceding_adversarial() const { return s_a_; }
  const std::set<Slot>& preceding_honest() const { return s_na_; }
  std::optional<std::size_t> pool_owner() const { return pool_owner_; }
  std::optional<std::size_t> pool_player() const { return pool_player_; }

 private:
  std::set<Slot> s_a_;
  std::set<Slot> s_na_;
  std::optional<std::size_t> pool_owner_;
  std::optional<std::size_t> pool_player_;
};

// Fork weights at the end of the game. "Attributed" counts every slot 0..p
// vote towards the fork its voter backed (compliant votes plus W_p for the
// adversary). "Measured" is the subtree weight of each fork's first block
// under the settlement view, which leaves out votes cast for B_0 itself.
struct SelfishWeights {
  std::int64_t attributed_honest = 0;
  std::int64_t attributed_adversarial = 0;
  std::int64_t measured_honest = 0;
  std::int64_t measured_adversarial = 0;
};

SelfishWeights selfish_weights(const GameOutcome& outcome);

// Pool payoff summed over its seats in slots 0..p. Under Fail every solo
// attestor defects to the honest protocol.
eq::Payoff pool_payoff_selfish(const GameConfig& config, PoolAction action,
                               Condition others);

}  // namespace lmdlab::games

#endif  // LMDLAB_GAMES_SELFISH_HPP_
