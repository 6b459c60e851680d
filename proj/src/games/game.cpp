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

#include "lmdlab/games/game.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace lmdlab::games {
namespace {

constexpr std::array<std::pair<Move, const char*>, 8> kMoves{{
    {Move::Comply, "comply"},
    {Move::VoteTip, "vote-tip"},
    {Move::VoteProposal, "vote-proposal"},
    {Move::VoteParent, "vote-parent"},
    {Move::Abstain, "abstain"},
    {Move::NonemptyOnCompliantTip, "nonempty-on-compliant-tip"},
    {Move::ExtendTip, "extend-tip"},
    {Move::ExtendParent, "extend-parent"},
}};

}  // namespace

const char* move_name(Move m) {
  for (const auto& [move, name] : kMoves) {
    if (move == m) return name;
  }
  return "?";
}

std::optional<Move> move_from_name(std::string_view name) {
  for (const auto& [move, n] : kMoves) {
    if (name == n) return move;
  }
  return std::nullopt;
}

LmdGame::LmdGame(GameConfig config) : config_(std::move(config)) {
  config_.validate();
}

std::string LmdGame::owner_name(std::size_t owner) const {
  return owner_names_.at(owner);
}

std::vector<eq::Payoff> LmdGame::play(const eq::Profile& profile) const {
  return payoffs(simulate(profile).ledger);
}

std::vector<eq::Payoff> LmdGame::payoffs(const reward::PayoffLedger& ledger) const {
  std::vector<eq::Payoff> out(owners_.size(), eq::Payoff(0));
  for (std::size_t o = 0; o < owners_.size(); ++o) {
    for (const Account& a : owners_[o]) {
      if (a.slot && a.channel) {
        out[o] += ledger.of(a.who, *a.slot, *a.channel);
        continue;
      }
      for (const auto& [key, amount] : ledger.per_slot()) {
        const auto& [who, slot, channel] = key;
        if (who != a.who) continue;
        if (a.slot && *a.slot != slot) continue;
        if (a.channel && *a.channel != channel) continue;
        out[o] += amount;
      }
    }
  }
  return out;
}

PlayerAction LmdGame::action_of(const eq::Profile& profile, std::size_t player) const {
  PlayerAction a = roles_.at(player);
  a.move = menus_.at(player).at(profile.at(player));
  return a;
}

std::optional<std::size_t> LmdGame::attestor_player(Slot s, ValidatorId v) const {
  auto it = attestor_seats_.find({s, v.index});
  if (it == attestor_seats_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> LmdGame::leader_player(Slot s) const {
  auto it = leader_seats_.find(s);
  if (it == leader_seats_.end()) return std::nullopt;
  return it->second;
}

bool LmdGame::is_honest(Slot s, ValidatorId v) const {
  return honest_.count({s, v.index}) > 0;
}

std::optional<Move> LmdGame::attestor_move(const eq::Profile& profile, Slot s,
                                           ValidatorId v) const {
  const auto p = attestor_player(s, v);
  if (!p) return std::nullopt;
  return menus_[*p][profile.at(*p)];
}

std::optional<Move> LmdGame::leader_move(const eq::Profile& profile, Slot s) const {
  const auto p = leader_player(s);
  if (!p) return std::nullopt;
  return menus_[*p][profile.at(*p)];
}

bool LmdGame::has_strategy(std::string_view name) const {
  return strategies_.find(name) != strategies_.end();
}

eq::Profile LmdGame::strategy(std::string_view name) const {
  auto it = strategies_.find(name);
  if (it == strategies_.end()) {
    throw std::invalid_argument("unknown strategy " + std::string(name));
  }
  return it->second;
}

reward::RewardParams LmdGame::reward_params() const {
  reward::RewardParams p;
  p.r = config_.r;
  p.R = config_.R;
  p.mechanism = config_.mechanism;
  p.leader_reward = config_.effective_leader_reward();
  p.committee_size = config_.W;
  return p;
}

std::vector<ValidatorId> LmdGame::pool_members(Slot s) const {
  if (!config_.pool || !schedule_.covers(s)) return {};
  const auto& att = schedule_.duty(s).attestors;
  const std::uint32_t m = config_.pool->members_at(s);
  return {att.end() - m, att.end()};
}

void LmdGame::build_schedule(Slot first, Slot last, const std::set<Slot>& adversarial,
                             const std::set<Slot>& honest_slots) {
  const auto n_slots = static_cast<std::uint32_t>(last - first + 1);
  sim::ScheduleOptions o;
  o.seed = config_.seed;
  o.committee_size = config_.W;
  o.epoch_length = n_slots;
  o.n_validators = config_.W * n_slots;
  o.first_slot = first;
  o.adversarial_slots = adversarial;
  schedule_ = sim::assign_committees(o);
  for (Slot s : honest_slots) {
    const auto& att = schedule_.duty(s).attestors;
    for (std::uint32_t j = 0; j < config_.W_h; ++j) honest_.insert({s, att[j].index});
  }
}

std::size_t LmdGame::add_owner(std::string name, std::vector<Account> accounts) {
  owner_names_.push_back(std::move(name));
  owners_.push_back(std::move(accounts));
  return owners_.size() - 1;
}

std::size_t LmdGame::add_player(std::string name, Role role, Slot slot, Tick decision,
                                std::vector<Move> moves, std::size_t owner,
                                std::string group) {
  eq::PlayerSpec spec;
  spec.name = std::move(name);
  spec.decision_tick = decision;
  for (Move m : moves) spec.actions.emplace_back(move_name(m));
  spec.owner = owner;
  spec.group = std::move(group);
  players_.push_back(std::move(spec));
  roles_.push_back({role, slot, Move::Comply});
  menus_.push_back(std::move(moves));
  return players_.size() - 1;
}

void LmdGame::seat_attestor(Slot s, ValidatorId v, std::size_t player) {
  attestor_seats_[{s, v.index}] = player;
}

void LmdGame::seat_leader(Slot s, std::size_t player) { leader_seats_[s] = player; }

void LmdGame::add_attestor_players(Slot s, Tick decision, const std::vector<Move>& moves,
                                   std::optional<std::size_t> pool_owner) {
  const auto pool = pool_members(s);
  const std::string group = "attestors:" + std::to_string(s);
  for (ValidatorId v : schedule_.duty(s).attestors) {
    if (is_honest(s, v)) continue;
    if (schedule_.validators[v.index].kind == ValidatorKind::Adversarial) continue;
    if (std::find(pool.begin(), pool.end(), v) != pool.end()) continue;
    const std::string name = "attestor:" + std::to_string(s) + ":" + std::to_string(v.index);
    const auto owner =
        add_owner(name, {{v, s, reward::Channel::Attestation}});
    seat_attestor(s, v, add_player(name, Role::Attestor, s, decision, moves, owner, group));
  }
  if (!pool.empty() && pool_owner) {
    const auto player = add_player("pool:" + std::to_string(s), Role::Attestor, s,
                                   decision, moves, *pool_owner, group);
    for (ValidatorId v : pool) seat_attestor(s, v, player);
  }
}

void LmdGame::add_strategy(std::string name, eq::Profile profile) {
  check_profile(profile);
  if (!has_strategy(name)) strategy_names_.push_back(name);
  strategies_[std::move(name)] = std::move(profile);
}

eq::Profile LmdGame::profile_of(std::initializer_list<Move> prefs) const {
  eq::Profile out;
  for (std::size_t i = 0; i < menus_.size(); ++i) {
    std::size_t pick = 0;
    for (Move m : prefs) {
      auto it = std::find(menus_[i].begin(), menus_[i].end(), m);
      if (it != menus_[i].end()) {
        pick = static_cast<std::size_t>(it - menus_[i].begin());
        break;
      }
    }
    out.push_back(pick);
  }
  return out;
}

void LmdGame::set_table(std::size_t player, Move nc) {
  const auto& menu = menus_.at(player);
  auto c = std::find(menu.begin(), menu.end(), Move::Comply);
  auto n = std::find(menu.begin(), menu.end(), nc);
  if (c == menu.end() || n == menu.end()) return;
  players_[player].table_c = static_cast<std::size_t>(c - menu.begin());
  players_[player].table_nc = static_cast<std::size_t>(n - menu.begin());
}

}  // namespace lmdlab::games
