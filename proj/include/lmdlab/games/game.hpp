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

#ifndef LMDLAB_GAMES_GAME_HPP_
#define LMDLAB_GAMES_GAME_HPP_

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "lmdlab/eq/game.hpp"
#include "lmdlab/games/config.hpp"
#include "lmdlab/reward/reward.hpp"
#include "lmdlab/sim/committee.hpp"
#include "lmdlab/sim/engine.hpp"

namespace lmdlab::games {

enum class Role : std::uint8_t { Attestor, Leader };

// The finite action menu. Attestor moves pick a vote target at the vote
// tick; leader moves pick a parent and an inclusion rule at the propose tick.
// What "comply" means is defined by each game's rule.
enum class Move : std::uint8_t {
  Comply,
  VoteTip,
  VoteProposal,
  VoteParent,
  Abstain,
  NonemptyOnCompliantTip,
  ExtendTip,
  ExtendParent,
};

const char* move_name(Move m);
std::optional<Move> move_from_name(std::string_view name);

struct PlayerAction {
  Role role = Role::Attestor;
  Slot slot = 0;
  Move move = Move::Comply;
};

// Slice of the payoff ledger that belongs to an owner. Empty optionals
// match everything.
struct Account {
  ValidatorId who;
  std::optional<Slot> slot;
  std::optional<reward::Channel> channel;
};

struct GameOutcome {
  bool success = false;
  std::vector<BlockId> final_chain;
  std::vector<BlockId> reorged;
  reward::PayoffLedger ledger;
  std::shared_ptr<const sim::RunTrace> trace;
  nlohmann::ordered_json details = nlohmann::ordered_json::object();
};

// Common base for the attack games: seats, owners, named strategies and the
// bridge from a simulated ledger to per-owner payoffs.
class LmdGame : public eq::Game {
 public:
  explicit LmdGame(GameConfig config);

  const GameConfig& config() const { return config_; }
  const std::vector<eq::PlayerSpec>& players() const override { return players_; }
  std::size_t owner_count() const override { return owners_.size(); }
  std::string owner_name(std::size_t owner) const override;
  std::vector<eq::Payoff> play(const eq::Profile& profile) const override;

  virtual GameOutcome simulate(const eq::Profile& profile) const = 0;

  std::vector<eq::Payoff> payoffs(const reward::PayoffLedger& ledger) const;
  const std::vector<Account>& accounts(std::size_t owner) const { return owners_.at(owner); }

  PlayerAction action_of(const eq::Profile& profile, std::size_t player) const;
  // Seat lookups. Honest seats have no player.
  std::optional<std::size_t> attestor_player(Slot s, ValidatorId v) const;
  std::optional<std::size_t> leader_player(Slot s) const;
  bool is_honest(Slot s, ValidatorId v) const;
  // Move of a seat under `profile`; nullopt for seats without a player.
  std::optional<Move> attestor_move(const eq::Profile& profile, Slot s, ValidatorId v) const;
  std::optional<Move> leader_move(const eq::Profile& profile, Slot s) const;

  const std::vector<std::string>& strategy_names() const { return strategy_names_; }
  bool has_strategy(std::string_view name) const;
  eq::Profile strategy(std::string_view name) const;

  const sim::CommitteeSchedule& schedule() const { return schedule_; }
  reward::RewardParams reward_params() const;
  std::vector<Validator> roster() const { return schedule_.validators; }
  // Members of the pool in slot `s`: the last m committee positions.
  std::vector<ValidatorId> pool_members(Slot s) const;

 protected:
  // Committees for slots first..last, each validator used once. Leaders of
  // `adversarial` slots are marked adversarial. The first W_h attestors of
  // `honest_slots` follow the protocol.
  void build_schedule(Slot first, Slot last, const std::set<Slot>& adversarial,
                      const std::set<Slot>& honest_slots);
  std::size_t add_owner(std::string name, std::vector<Account> accounts);
  std::size_t add_player(std::string name, Role role, Slot slot, Tick decision,
                         std::vector<Move> moves, std::size_t owner, std::string group);
  void seat_attestor(Slot s, ValidatorId v, std::size_t player);
  void seat_leader(Slot s, std::size_t player);
  // Solo attestor players for every seat of slot `s` that is not honest,
  // adversarial or in the pool,
  // plus one pool player when the pool has members there.
  void add_attestor_players(Slot s, Tick decision, const std::vector<Move>& moves,
                            std::optional<std::size_t> pool_owner);
  void add_strategy(std::string name, eq::Profile profile);
  // Every player takes the first of `prefs` found in its menu.
  eq::Profile profile_of(std::initializer_list<Move> prefs) const;
  // Adds a PlayerSpec table marker for comply vs the given alternative.
  void set_table(std::size_t player, Move nc);

  GameConfig config_;
  sim::CommitteeSchedule schedule_;

 private:
  std::vector<eq::PlayerSpec> players_;
  std::vector<PlayerAction> roles_;
  std::vector<std::vector<Move>> menus_;
  std::vector<std::string> owner_names_;
  std::vector<std::vector<Account>> owners_;
  std::map<std::pair<Slot, std::uint32_t>, std::size_t> attestor_seats_;
  std::map<Slot, std::size_t> leader_seats_;
  std::set<std::pair<Slot, std::uint32_t>> honest_;
  std::vector<std::string> strategy_names_;
  std::map<std::string, eq::Profile, std::less<>> strategies_;
};

std::unique_ptr<LmdGame> make_game(const GameConfig& config);

}  // namespace lmdlab::games

#endif  // LMDLAB_GAMES_GAME_HPP_
