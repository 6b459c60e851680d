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

#include "lmdlab/games/dag.hpp"

#include <algorithm>

#include "lmdlab/games/policy.hpp"
#include "lmdlab/sim/clock.hpp"

namespace lmdlab::games {
namespace {

using sim::propose_tick;
using sim::vote_tick;

constexpr Slot kClosingSlot = DagGame::kLastPlayerSlot + 1;

class DagPolicy : public LmdPolicy {
 public:
  using LmdPolicy::LmdPolicy;

  void on_tick(Tick t, sim::World& w) override {
    const Slot s = sim::slot_of(t);
    const auto& sched = game_.schedule();
    switch (sim::phase_of(t)) {
      case sim::Phase::Propose:
        if (s == DagGame::kAdversarialSlot) {
          propose_adversary(w, s, t);
        } else if (game_.leader_move(profile_, s) == Move::ExtendParent) {
          const BlockTree view = w.view(t);
          const BlockId head = tip(w, t);
          const BlockId parent = head == view.genesis().id ? head : view.block(head).parent;
          blocks.push_back(honest_propose(w, s, t, parent));
        } else {
          blocks.push_back(honest_propose(w, s, t));
        }
        break;
      case sim::Phase::Vote: {
        if (s > DagGame::kLastPlayerSlot) break;
        const BlockTree view = w.view(t);
        const BlockId head = tip(w, t);
        const BlockId parent = head == view.genesis().id ? head : view.block(head).parent;
        for (ValidatorId v : sched.duty(s).attestors) {
          if (game_.roster()[v.index].kind == ValidatorKind::Adversarial) continue;
          const Move m = game_.attestor_move(profile_, s, v).value_or(Move::Comply);
          if (m == Move::Comply) cast(w, v, s, head, t, t);
          if (m == Move::VoteParent) cast(w, v, s, parent, t, t);
        }
        break;
      }
      case sim::Phase::Aggregate:
        if (s <= DagGame::kLastPlayerSlot) {
          sign_evidence(w, s, t, [&](ValidatorId v) {
            return game_.roster()[v.index].kind != ValidatorKind::Adversarial;
          });
        }
        break;
    }
  }

  std::vector<BlockId> blocks;  // non-adversarial proposals
  BlockId b_adv;
  BlockId adv_parent;
  bool off_tip = false;

 private:
  void propose_adversary(sim::World& w, Slot s, Tick t) {
    const BlockTree view = w.view(t);
    const BlockId head = tip(w, t);
    sim::ProposeArgs a;
    a.slot = s;
    a.proposer = game_.schedule().duty(s).leader;
    off_tip = game_.config().dag_adversary == DagAdversary::OffTip &&
              head != view.genesis().id;
    if (off_tip) {
      a.parent = view.block(head).parent;
      for (const VoteRecord& v : view.votes()) {
        if (v.slot == s - 1 && v.target == a.parent) a.votes.push_back(v);
      }
    } else {
      a.parent = head;
      a.votes = pending_votes(w, head, s, t);
      if (dag()) a.evidences = pending_evidences(w, head, t);
    }
    a.created = t;
    a.release = t;
    adv_parent = a.parent;
    b_adv = w.propose(std::move(a));
  }
};

}  // namespace

DagGame::DagGame(GameConfig config) : LmdGame(std::move(config)) {
  if (config_.kind != GameKind::DagVotes) throw GameConfigError("not a DAG game");
  std::set<Slot> player_slots;
  for (Slot s = 1; s <= kLastPlayerSlot; ++s) player_slots.insert(s);
  build_schedule(1, kClosingSlot, {kAdversarialSlot}, player_slots);
  for (Slot s = 1; s <= kLastPlayerSlot; ++s) {
    if (s != kAdversarialSlot) {
      const std::string name = "leader:" + std::to_string(s);
      const auto owner =
          add_owner(name, {{schedule_.duty(s).leader, s, reward::Channel::Inclusion}});
      const auto pl = add_player(name, Role::Leader, s, propose_tick(s),
                                 {Move::Comply, Move::ExtendParent}, owner, "");
      seat_leader(s, pl);
      set_table(pl, Move::ExtendParent);
    }
    const std::size_t first = players().size();
    add_attestor_players(s, vote_tick(s), {Move::Comply, Move::VoteParent, Move::Abstain},
                         std::nullopt);
    for (std::size_t k = first; k < players().size(); ++k) set_table(k, Move::VoteParent);
  }
  add_strategy("dag-votes.prescribed", profile_of({Move::Comply}));
  eq::Profile d = profile_of({Move::Comply});
  for (ValidatorId v : schedule_.duty(kAdversarialSlot - 1).attestors) {
    if (auto pl = attestor_player(kAdversarialSlot - 1, v)) {
      d[*pl] = action_index(*pl, move_name(Move::VoteParent));
    }
  }
  add_strategy("dag-votes.committee-votes-parent", std::move(d));
}

std::size_t DagGame::rational_attestors(Slot s) const {
  std::size_t n = 0;
  for (ValidatorId v : schedule_.duty(s).attestors) {
    if (!is_honest(s, v) && schedule_.validators[v.index].kind != ValidatorKind::Adversarial) ++n;
  }
  return n;
}

GameOutcome DagGame::simulate(const eq::Profile& profile) const {
  check_profile(profile);
  DagPolicy policy(*this, profile);
  sim::RunConfig rc;
  rc.start_tick = propose_tick(1);
  rc.end_tick = propose_tick(kClosingSlot);
  rc.realization_tick = rc.end_tick;
  rc.boost = config_.effective_boost();
  rc.tie_break = config_.tie_break;
  auto trace = sim::run(rc, sim::World(0, roster()), policy);

  GameOutcome out;
  out.ledger = reward::settle_payoffs(trace, reward_params());
  out.final_chain = trace.final_chain;
  out.reorged = trace.reorged;
  const BlockTree& full = trace.world.full();
  bool honest_reorged = false;
  for (BlockId b : out.reorged) {
    if (full.block(b).proposer_kind != ValidatorKind::Adversarial) honest_reorged = true;
  }
  const bool adv_final = std::find(out.final_chain.begin(), out.final_chain.end(),
                                   policy.b_adv) != out.final_chain.end();
  out.success = honest_reorged || (policy.off_tip && adv_final);
  std::size_t adv_votes = 0;
  for (const VoteRecord& v : full.votes()) {
    if (full.is_ancestor(policy.b_adv, v.target)) ++adv_votes;
  }
  out.details["adversary_block"] = policy.b_adv.value;
  out.details["adversary_parent"] = policy.adv_parent.value;
  out.details["adversary_off_tip"] = policy.off_tip;
  out.details["adversary_votes"] = adv_votes;
  out.details["adversary_final"] = adv_final;
  out.details["honest_reorged"] = honest_reorged;
  nlohmann::ordered_json bl = nlohmann::ordered_json::array();
  for (BlockId b : policy.blocks) bl.push_back(b.value);
  out.details["protocol_blocks"] = bl;
  out.trace = std::make_shared<const sim::RunTrace>(std::move(trace));
  return out;
}

DagScenarioResult dag_security_scenario(const GameConfig& config,
                                        const eq::SearchOptions& opts) {
  GameConfig c = config;
  c.kind = GameKind::DagVotes;
  const DagGame game(c);
  const std::int64_t b = c.effective_boost();
  for (Slot s = 1; s <= DagGame::kLastPlayerSlot; ++s) {
    const auto r = static_cast<std::int64_t>(game.rational_attestors(s));
    const bool ok = b == 0 ? 2 * r > 2 + static_cast<std::int64_t>(c.W)
                           : 2 * r >= 2 + static_cast<std::int64_t>(c.W) + b;
    if (!ok) {
      throw AssumptionViolated("slot " + std::to_string(s) + " has " + std::to_string(r) +
                               " rational attestors");
    }
  }
  const eq::Profile prof = game.strategy("dag-votes.prescribed");
  DagScenarioResult res;
  res.outcome = game.simulate(prof);
  res.report = eq::verify_spne(game, prof, opts);

  eq::SearchOptions co = opts;
  const Slot t = DagGame::kAdversarialSlot - 1;
  for (ValidatorId v : game.schedule().duty(t).attestors) {
    if (auto pl = game.attestor_player(t, v)) co.coalition_players.push_back(*pl);
  }
  co.max_coalition = co.coalition_players.size();
  co.candidates.assign(game.players().size(), {});
  for (std::size_t i = 0; i < game.players().size(); ++i) {
    co.candidates[i] = {prof[i]};
  }
  for (std::size_t pl : co.coalition_players) {
    co.candidates[pl] = {prof[pl], game.action_index(pl, move_name(Move::VoteParent))};
  }
  res.coalition = eq::verify_nash(game, prof, co);
  if (res.coalition.verdict == eq::Verdict::NotEquilibrium) {
    res.report.verdict = eq::Verdict::NotEquilibrium;
    for (const auto& d : res.coalition.deviations) res.report.deviations.push_back(d);
  }

  res.safety = !res.outcome.details.at("honest_reorged").get<bool>();
  res.liveness = true;
  for (const auto& id : res.outcome.details.at("protocol_blocks")) {
    const BlockId b{id.get<std::uint64_t>()};
    if (std::find(res.outcome.final_chain.begin(), res.outcome.final_chain.end(), b) ==
        res.outcome.final_chain.end()) {
      res.liveness = false;
    }
  }
  res.adversary_votes = res.outcome.details.at("adversary_votes").get<std::size_t>();
  return res;
}

}  // namespace lmdlab::games
