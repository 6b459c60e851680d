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

#ifndef LMDLAB_EQ_GAME_HPP_
#define LMDLAB_EQ_GAME_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lmdlab/chain/types.hpp"
#include "lmdlab/reward/reward.hpp"

namespace lmdlab::eq {

using Payoff = reward::Amount;
// One action index per player.
using Profile = std::vector<std::size_t>;

// A decision point together with the finite action menu offered to it.
struct PlayerSpec {
  std::string name;
  Tick decision_tick = 0;
  std::vector<std::string> actions;
  // Whose payoff this decision optimizes. Several decision points may share
  // an owner, e.g. a staking pool acting in several slots.
  std::size_t owner = 0;
  // Players in the same group condition each other's subgame-table rows.
  std::string group;
  std::optional<std::size_t> table_c;
  std::optional<std::size_t> table_nc;
};

// A finite game in extensive form whose strategies are behaviour rules, so
// later decision points react to earlier deviations during play().
// Implementations must be safe to call concurrently.
class Game {
 public:
  virtual ~Game() = default;
  virtual const std::vector<PlayerSpec>& players() const = 0;
  virtual std::size_t owner_count() const = 0;
  virtual std::string owner_name(std::size_t owner) const;
  // Payoff of every owner under `profile`.
  virtual std::vector<Payoff> play(const Profile& profile) const = 0;

  Payoff payoff_of(const std::vector<Payoff>& owners, std::size_t player) const {
    return owners[players()[player].owner];
  }
  std::size_t action_index(std::size_t player, std::string_view action) const;
  // Every player takes `action` where its menu has it, otherwise its first
  // action.
  Profile uniform_profile(std::string_view action) const;
  std::optional<std::size_t> find_player(std::string_view name) const;
  void check_profile(const Profile& profile) const;
};

}  // namespace lmdlab::eq

#endif  // LMDLAB_EQ_GAME_HPP_
