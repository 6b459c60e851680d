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

#include "lmdlab/eq/game.hpp"

#include <stdexcept>

namespace lmdlab::eq {

std::string Game::owner_name(std::size_t owner) const {
  return "owner" + std::to_string(owner);
}

std::size_t Game::action_index(std::size_t player, std::string_view action) const {
  const auto& acts = players().at(player).actions;
  for (std::size_t i = 0; i < acts.size(); ++i) {
    if (acts[i] == action) return i;
  }
  throw std::invalid_argument("player " + players()[player].name +
                              " has no action " + std::string(action));
}

Profile Game::uniform_profile(std::string_view action) const {
  Profile out;
  for (const PlayerSpec& p : players()) {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < p.actions.size(); ++i) {
      if (p.actions[i] == action) idx = i;
    }
    out.push_back(idx);
  }
  return out;
}

std::optional<std::size_t> Game::find_player(std::string_view name) const {
  const auto& ps = players();
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (ps[i].name == name) return i;
  }
  return std::nullopt;
}

void Game::check_profile(const Profile& profile) const {
  const auto& ps = players();
  if (profile.size() != ps.size()) {
    throw std::invalid_argument("profile has " + std::to_string(profile.size()) +
                                " entries for " + std::to_string(ps.size()) +
                                " players");
  }
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (profile[i] >= ps[i].actions.size()) {
      throw std::invalid_argument("action out of range for " + ps[i].name);
    }
  }
}

}  // namespace lmdlab::eq
