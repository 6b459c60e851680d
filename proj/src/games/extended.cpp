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

#include "lmdlab/games/extended.hpp"

#include <algorithm>

#include "lmdlab/games/policy.hpp"
#include "lmdlab/sim/clock.hpp"

namespace lmdlab::games {
namespace {

using sim::propose_tick;
using sim::vote_tick;

class ExtendedPolicy : public LmdPolicy {
 public:
  ExtendedPolicy(const ExtendedGame& g, const eq::Profile& profile)
      : LmdPolicy(g, profile), ext_(g) {}

  void on_tick(Tick t, sim::World& w) override {
    const std::int64_t p = game_.config().p;
    const Slot s = sim::slot_of(t);
    const auto& duty = game_.schedule().duty(s);
    switch (sim::phase_of(t)) {
      case sim::Phase::Propose:
        if (s <= 0) {
          honest_propose(w, s, t);
        } else if (s <= p) {
          propose_player(w, s, t);
        } else {
          propose_adversary(w, s, t);
        }
        break;
      case sim::Phase::Vote: {
        if (s > p) break;
        const BlockId head = tip(w, t);
        std::optional<BlockId> ctip;
        if (s >= 1) {
          const BlockTree view = w.view(t);
          for (const Block& b : view.blocks()) {
            if (b.slot == s && b.id != view.genesis().id && !marks.blocks.count(b.id)) {
              classify_block(view, b, marks);
            }
          }
          ctip = compliant_tip(view, ext_.tip_params(s), marks);
          marks.vote_tip[s] = *ctip;
        }
        for (ValidatorId v : duty.attestors) {
          const Move m = game_.attestor_move(profile_, s, v).value_or(Move::VoteTip);
          if (m == Move::Comply && ctip) cast(w, v, s, *ctip, t, t);
          if (m == Move::VoteTip) cast(w, v, s, head, t, t);
        }
        break;
      }
      case sim::Phase::Aggregate:
        if (s >= 1 && s <= p) classify_votes(w.full(), s, marks);
        break;
    }
  }

  ComplianceMarks marks;
  BlockId b_a;
  std::vector<BlockId> player_blocks;

 private:
  std::vector<VoteRecord> compliant_votes_for(const sim::World& w, Slot s, BlockId parent,
                                              Tick t) const {
    std::vector<VoteRecord> out;
    const BlockTree view = w.view(t);
    for (const VoteRecord& v : view.votes()) {
      if (v.slot == s - 1 && v.target == parent && marks.vote_compliant(v)) out.push_back(v);
    }
    return out;
  }

  void propose_player(sim::World& w, Slot s, Tick t) {
    const BlockId ctip = compliant_tip(w.view(t), ext_.tip_params(s), marks);
    marks.propose_tip[s] = ctip;
    const Move m = game_.leader_move(profile_, s).value_or(Move::ExtendTip);
    if (m == Move::ExtendTip) {
      player_blocks.push_back(honest_propose(w, s, t));
      return;
    }
    sim::ProposeArgs a;
    a.slot = s;
    a.parent = ctip;
    a.proposer = game_.schedule().duty(s).leader;
    a.is_empty = m == Move::Comply;
    if (s > 1) a.votes = compliant_votes_for(w, s, ctip, t);
    a.created = t;
    a.release = t;
    player_blocks.push_back(w.propose(std::move(a)));
  }

  void propose_adversary(sim::World& w, Slot s, Tick t) {
    const BlockTree view = w.view(t);
    sim::ProposeArgs a;
    a.slot = s;
    a.parent = compliant_tip(view, ext_.tip_params(s), marks);
    a.proposer = game_.schedule().duty(s).leader;
    for (const VoteRecord& v : view.votes()) {
      if (v.slot != s - 1) continue;
      if (marks.vote_compliant(v) || !game_.config().credibility_assumed) a.votes.push_back(v);
    }
    a.created = t;
    a.release = t;
    b_a = w.propose(std::move(a));
  }

  const ExtendedGame& ext_;
};

}  // namespace

ExtendedGame::ExtendedGame(GameConfig config) : LmdGame(std::move(config)) {
  if (config_.kind != GameKind::Extended) throw GameConfigError("not an extended game");
  const std::int64_t p = config_.p;
  std::set<Slot> player_slots;
  for (Slot i = 1; i <= p; ++i) player_slots.insert(i);
  if (config_.pool) {
    for (Slot i = 1; i <= p; ++i) {
      if (config_.W_h + config_.pool->members_at(i) > config_.W) {
        throw GameConfigError("honest and pool seats overlap");
      }
    }
  }
  build_schedule(-p + 1, p + 1, {p + 1}, player_slots);
  if (config_.pool) {
    std::vector<Account> acc;
    for (Slot i = 1; i <= p; ++i) {
      for (ValidatorId v : pool_members(i)) acc.push_back({v, i, reward::Channel::Attestation});
    }
    if (!acc.empty()) pool_owner_ = add_owner("pool", std::move(acc));
  }
  for (Slot i = 1; i <= p; ++i) {
    const ValidatorId leader = schedule_.duty(i).leader;
    const std::string name = "leader:" + std::to_string(i);
    const auto owner = add_owner(name, {{leader, i, reward::Channel::Inclusion}});
    const auto player = add_player(
        name, Role::Leader, i, propose_tick(i),
        {Move::Comply, Move::NonemptyOnCompliantTip, Move::ExtendTip}, owner, "");
    seat_leader(i, player);
    set_table(player, Move::NonemptyOnCompliantTip);
    const std::size_t first = players().size();
    add_attestor_players(i, vote_tick(i), {Move::Comply, Move::VoteTip, Move::Abstain},
                         pool_owner_);
    for (std::size_t k = first; k < players().size(); ++k) set_table(k, Move::VoteTip);
  }

  const eq::Profile all_c = profile_of({Move::Comply});
  add_strategy("extended.compliant-all", all_c);
  add_strategy("extended.extend-tip-all", profile_of({Move::ExtendTip, Move::VoteTip}));
  for (Slot i = 1; i <= p; ++i) {
    eq::Profile d = all_c;
    const auto lp = *leader_player(i);
    d[lp] = action_index(lp, move_name(Move::NonemptyOnCompliantTip));
    add_strategy("extended.defect-leader-" + std::to_string(i), d);
    eq::Profile a = all_c;
    for (ValidatorId v : schedule_.duty(i).attestors) {
      if (auto ap = attestor_player(i, v)) a[*ap] = action_index(*ap, move_name(Move::VoteTip));
    }
    add_strategy("extended.defect-attestors-" + std::to_string(i), a);
  }
}

CompliantTipParams ExtendedGame::tip_params(Slot slot_i) const {
  CompliantTipParams prm;
  prm.slot_i = slot_i;
  prm.p = config_.p;
  prm.W = config_.W;
  prm.W_p = config_.W_p;
  prm.tie_break = config_.tie_break;
  return prm;
}

GameOutcome ExtendedGame::simulate(const eq::Profile& profile) const {
  check_profile(profile);
  const std::int64_t p = config_.p;
  ExtendedPolicy policy(*this, profile);
  sim::RunConfig rc;
  rc.start_tick = propose_tick(-p + 1);
  rc.end_tick = propose_tick(p + 1);
  rc.realization_tick = propose_tick(p + 1);
  rc.boost = config_.effective_boost();
  rc.tie_break = config_.tie_break;
  auto trace = sim::run(rc, sim::World(-p, roster()), policy);

  GameOutcome out;
  out.ledger = reward::settle_payoffs(trace, reward_params());
  out.final_chain = trace.final_chain;
  out.reorged = trace.reorged;

  const auto& chain = out.final_chain;
  const BlockTree& full = trace.world.full();
  bool ok = chain.size() == static_cast<std::size_t>(p + 2) && chain.back() == policy.b_a;
  for (Slot i = 1; ok && i <= p; ++i) {
    const BlockId b = chain[static_cast<std::size_t>(i)];
    ok = full.block(b).slot == i && policy.marks.block_compliant(full, b);
  }
  out.success = ok;

  nlohmann::ordered_json tips = nlohmann::ordered_json::array();
  for (Slot i = 1; i <= p + 1; ++i) {
    nlohmann::ordered_json row;
    row["slot"] = i;
    if (auto it = policy.marks.propose_tip.find(i); it != policy.marks.propose_tip.end()) {
      row["propose_tip"] = it->second.value;
    }
    if (auto it = policy.marks.vote_tip.find(i); it != policy.marks.vote_tip.end()) {
      row["vote_tip"] = it->second.value;
    }
    tips.push_back(row);
  }
  out.details["compliant_tips"] = tips;
  nlohmann::ordered_json blocks = nlohmann::ordered_json::array();
  for (const auto& [id, c] : policy.marks.blocks) {
    blocks.push_back({{"block", id.value}, {"compliant", c}});
  }
  out.details["block_marks"] = blocks;
  out.details["adversary_block"] = policy.b_a.value;
  out.details["adversary_parent"] = full.block(policy.b_a).parent.value;
  out.trace = std::make_shared<const sim::RunTrace>(std::move(trace));
  return out;
}

std::int64_t required_attack_length(std::int64_t p, std::int64_t W, std::int64_t W_h) {
  if (p < 0 || W <= 0 || W_h < 0) throw GameConfigError("invalid attack length inputs");
  if (2 * W_h >= W) {
    throw HonestMajority("W_h = " + std::to_string(W_h) + " is at least half of W = " +
                         std::to_string(W));
  }
  const std::int64_t den = W - 2 * W_h;
  return (p * W + den - 1) / den;
}

}  // namespace lmdlab::games
