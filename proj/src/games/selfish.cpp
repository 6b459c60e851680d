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

#include "lmdlab/games/selfish.hpp"

#include <algorithm>

#include "lmdlab/games/policy.hpp"
#include "lmdlab/sim/clock.hpp"

namespace lmdlab::games {
namespace {

using sim::propose_tick;
using sim::vote_tick;

class SelfishPolicy : public LmdPolicy {
 public:
  SelfishPolicy(const SelfishMiningGame& g, const eq::Profile& profile)
      : LmdPolicy(g, profile), sm_(g) {}

  void on_tick(Tick t, sim::World& w) override {
    const auto& cfg = game_.config();
    const std::int64_t p = cfg.p;
    const Slot s = sim::slot_of(t);
    const bool adv = cfg.adversarial_slots.count(s) > 0;
    if (sim::phase_of(t) == sim::Phase::Propose) {
      if (!adv && s <= p + 1) honest_blocks.push_back(honest_propose(w, s, t));
      if (t == propose_tick(p)) reveal(w, t, p);
      if (t == propose_tick(p + 1)) reveal(w, t, p + 1);
    } else if (sim::phase_of(t) == sim::Phase::Vote && s <= p) {
      const BlockId head = tip(w, t);
      for (ValidatorId v : game_.schedule().duty(s).attestors) {
        if (withholds(s, v)) {
          withheld[s].push_back(v);
        } else if (game_.attestor_move(profile_, s, v) != Move::Abstain) {
          cast(w, v, s, head, t, t);
          if (sm_.preceding_adversarial().count(s)) ++defected_votes;
        }
      }
    }
  }

  std::vector<BlockId> honest_blocks;
  std::vector<BlockId> fork;  // B^A_1..B^A_{N_A}
  std::map<Slot, std::vector<ValidatorId>> withheld;
  std::int64_t compliant_votes = 0;
  std::int64_t defected_votes = 0;

 private:
  bool withholds(Slot s, ValidatorId v) const {
    if (!sm_.preceding_adversarial().count(s)) return false;
    if (game_.roster()[v.index].kind == ValidatorKind::Adversarial) return true;
    if (game_.is_honest(s, v)) return false;
    return game_.attestor_move(profile_, s, v) == Move::Comply;
  }

  // Builds every adversarial block of a slot <= up_to not built yet. Blocks
  // made before their slot's start stay private until 3(p+1).
  void reveal(sim::World& w, Tick t, Slot up_to) {
    const auto& cfg = game_.config();
    const Tick publish = propose_tick(cfg.p + 1);
    BlockId prev = fork.empty() ? honest_blocks.front() : fork.back();
    for (Slot s : cfg.adversarial_slots) {
      if (s > up_to || s <= built_through) continue;
      sim::ProposeArgs a;
      a.slot = s;
      a.parent = prev;
      a.proposer = game_.schedule().duty(s).leader;
      for (ValidatorId v : withheld[s - 1]) {
        const VoteRecord vote{s - 1, v, prev, publish};
        w.vote(vote, t, publish);
        a.votes.push_back(vote);
        ++compliant_votes;
      }
      if (!cfg.credibility_assumed) {
        for (const VoteRecord& v : w.visible_votes(t)) {
          if (v.slot == s - 1) a.votes.push_back(v);
        }
      }
      a.created = t;
      a.release = publish;
      prev = w.propose(std::move(a));
      fork.push_back(prev);
      built_through = s;
    }
  }

  const SelfishMiningGame& sm_;
  Slot built_through = 0;
};

}  // namespace

SelfishMiningGame::SelfishMiningGame(GameConfig config) : LmdGame(std::move(config)) {
  if (config_.kind != GameKind::SelfishMining) throw GameConfigError("not a selfish-mining game");
  const std::int64_t p = config_.p;
  for (Slot s = 0; s <= p; ++s) {
    (config_.adversarial_slots.count(s + 1) ? s_a_ : s_na_).insert(s);
  }
  std::set<Slot> all;
  for (Slot s = 0; s <= p; ++s) all.insert(s);
  build_schedule(0, p + 1, config_.adversarial_slots, all);
  if (config_.pool) {
    std::vector<Account> acc;
    std::vector<std::pair<Slot, ValidatorId>> seats;
    for (Slot s = 0; s <= p; ++s) {
      if (config_.W_h + config_.pool->members_at(s) > config_.W) {
        throw GameConfigError("honest and pool seats overlap");
      }
      for (ValidatorId v : pool_members(s)) {
        acc.push_back({v, s, reward::Channel::Attestation});
        seats.emplace_back(s, v);
      }
    }
    if (!acc.empty()) {
      pool_owner_ = add_owner("pool", std::move(acc));
      const Tick first = s_a_.empty() ? vote_tick(0) : vote_tick(*s_a_.begin());
      pool_player_ = add_player("pool", Role::Attestor, s_a_.empty() ? 0 : *s_a_.begin(), first,
                                {Move::Comply, Move::VoteTip}, *pool_owner_, "");
      set_table(*pool_player_, Move::VoteTip);
      for (const auto& [s, v] : seats) seat_attestor(s, v, *pool_player_);
    }
  }
  for (Slot s : s_a_) {
    const std::size_t first = players().size();
    add_attestor_players(s, vote_tick(s), {Move::Comply, Move::VoteTip, Move::Abstain},
                         std::nullopt);
    for (std::size_t k = first; k < players().size(); ++k) set_table(k, Move::VoteTip);
  }
  add_strategy("selfish-mining.compliant-all", profile_of({Move::Comply}));
  add_strategy("selfish-mining.vote-tip-all", profile_of({Move::VoteTip}));
  for (Slot s : s_a_) {
    eq::Profile d = profile_of({Move::Comply});
    for (ValidatorId v : schedule_.duty(s).attestors) {
      auto pl = attestor_player(s, v);
      if (pl && pl != pool_player_) d[*pl] = action_index(*pl, move_name(Move::VoteTip));
    }
    add_strategy("selfish-mining.defect-committee-" + std::to_string(s), std::move(d));
  }
}

GameOutcome SelfishMiningGame::simulate(const eq::Profile& profile) const {
  check_profile(profile);
  const std::int64_t p = config_.p;
  SelfishPolicy policy(*this, profile);
  sim::RunConfig rc;
  rc.start_tick = propose_tick(0);
  rc.end_tick = propose_tick(p + 1) + 1;
  rc.realization_tick = rc.end_tick;
  rc.boost = config_.effective_boost();
  rc.tie_break = config_.tie_break;
  auto trace = sim::run(rc, sim::World(-1, roster()), policy);

  GameOutcome out;
  out.ledger = reward::settle_payoffs(trace, reward_params());
  out.final_chain = trace.final_chain;
  out.reorged = trace.reorged;

  // Success: genesis, B_0, then exactly the adversarial fork.
  std::vector<BlockId> expect{trace.world.full().genesis().id, policy.honest_blocks.front()};
  expect.insert(expect.end(), policy.fork.begin(), policy.fork.end());
  out.success = !policy.fork.empty() && out.final_chain == expect;

  const BlockTree view = trace.settlement_view();
  const auto params = trace.settlement_params(view);
  const BlockId b0 = policy.honest_blocks.front();
  std::int64_t measured_h = 0, measured_a = 0;
  for (std::size_t pos : view.children_of(b0)) {
    const Block& child = view.blocks()[pos];
    const auto w = subtree_weight(view, child.id, params.current_slot, params.boosted,
                                  params.boost);
    if (!policy.fork.empty() && child.id == policy.fork.front()) {
      measured_a += w;
    } else {
      measured_h = std::max(measured_h, w);
    }
  }
  std::int64_t honest_votes = 0;
  for (const VoteRecord& v : trace.world.full().votes()) {
    if (v.slot <= p && v.broadcast_tick == vote_tick(v.slot)) ++honest_votes;
  }
  out.details["attributed_honest"] = honest_votes;
  out.details["attributed_adversarial"] = policy.compliant_votes + config_.W_p;
  out.details["measured_honest"] = measured_h;
  out.details["measured_adversarial"] = measured_a;
  out.details["n_adversarial"] = config_.adversarial_slots.size();
  out.details["n_honest"] = p + 1 - static_cast<std::int64_t>(config_.adversarial_slots.size());
  nlohmann::ordered_json f = nlohmann::ordered_json::array();
  for (BlockId b : policy.fork) f.push_back(b.value);
  out.details["adversarial_fork"] = f;
  out.trace = std::make_shared<const sim::RunTrace>(std::move(trace));
  return out;
}

SelfishWeights selfish_weights(const GameOutcome& o) {
  SelfishWeights w;
  w.attributed_honest = o.details.at("attributed_honest").get<std::int64_t>();
  w.attributed_adversarial = o.details.at("attributed_adversarial").get<std::int64_t>();
  w.measured_honest = o.details.at("measured_honest").get<std::int64_t>();
  w.measured_adversarial = o.details.at("measured_adversarial").get<std::int64_t>();
  return w;
}

eq::Payoff pool_payoff_selfish(const GameConfig& config, PoolAction action,
                               Condition others) {
  GameConfig c = config;
  c.kind = GameKind::SelfishMining;
  if (!c.pool) c.pool = PoolConfig{};
  const SelfishMiningGame game(c);
  eq::Profile prof = game.strategy(others == Condition::Succeed ? "selfish-mining.compliant-all"
                                                                : "selfish-mining.vote-tip-all");
  if (auto pp = game.pool_player()) {
    prof[*pp] = game.action_index(*pp, move_name(action == PoolAction::C ? Move::Comply
                                                                        : Move::VoteTip));
  }
  const auto ledger = game.simulate(prof).ledger;
  eq::Payoff total(0);
  if (auto po = game.pool_owner()) {
    for (const Account& a : game.accounts(*po)) total += ledger.of(a.who, *a.slot, *a.channel);
  }
  return total;
}

}  // namespace lmdlab::games
