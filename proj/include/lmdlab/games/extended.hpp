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

#ifndef LMDLAB_GAMES_EXTENDED_HPP_
#define LMDLAB_GAMES_EXTENDED_HPP_

#include <cstdint>
#include <optional>

#include "lmdlab/games/compliance.hpp"
#include "lmdlab/games/game.hpp"

namespace lmdlab::games {

// Multi-slot reorg. Slots are normalized so that the chain B_{-p}..B_0 is
// already canonical (B_{-p} is the tree root), slots 1..p hold the players
// and the adversary leads slot p+1. Leaders are asked to propose empty
// blocks on the compliant tip; attestors to vote for it.
class ExtendedGame : public LmdGame {
 public:
  explicit ExtendedGame(GameConfig config);
  GameOutcome simulate(const eq::Profile& profile) const override;

  CompliantTipParams tip_params(Slot slot_i) const;
  std::optional<std::size_t> pool_owner() const { return pool_owner_; }

 private:
  std::optional<std::size_t> pool_owner_;
};

// ceil(p W / (W - 2 W_h)): slots needed when W_h attestors per slot stay
// honest. Throws HonestMajority when 2 W_h >= W.
std::int64_t required_attack_length(std::int64_t p, std::int64_t W, std::int64_t W_h);

}  // namespace lmdlab::games

#endif  // LMDLAB_GAMES_EXTENDED_HPP_
