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

#include "lmdlab/games/simple.hpp"

#include <algorithm>
#include <cmath>

#include "lmdlab/games/policy.hpp"
#include "lmdlab/sim/clock.hpp"

namespace lmdlab::games {
namespace {

using sim::propose_tick;
using sim::vote_tick;

std::string prefix(const GameConfig& c) { return to_string(c.kind); }

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

class SimplePolicy : public LmdPolicy {
 public:
  using LmdPolicy::LmdPolicy;

  void on_tick(Tick t, sim::World& w) override {
    const Slot t_slot = SimpleGame::kT;
    const auto& sched = game_.schedule();
    if (t == propose_tick(t_slot - 1)) {
      b_prev = honest_propose(w, t_slot - 1, t);
    } else if (t == vote_tick(t_slot - 1)) {
      const BlockId target = tip(w, t);
      for (ValidatorId v : sched.duty(t_slot - 1).attestors) cast(w, v, t_slot - 1, target, t, t);
    } else if (t == propose_tick(t_slot)) {
      b_t = honest_propose(w, t_slot, t);
    } else if (t == vote_tick(t_slot)) {
      const BlockId head = tip(w, t);
      for (ValidatorId v : sched.duty(t_slot).attestors) {
        const Move m = game_.attestor_move(profile_, t_slot, v).value_or(Move::VoteTip);
        if (m == Move::Comply) cast(w, v, t_slot, b_prev, t, t);
        if (m == Move::VoteTip) cast(w, v, t_slot, head, t, t);
      }
    } else if (t == propose_tick(t_slot + 1)) {
      const BlockTree view = w.view(t);
      std::vector<VoteRecord> include;
      for (const VoteRecord& v : view.votes()) {
        if (v.slot != t_slot) continue;
        if (v.target == b_t) ++votes_for_proposal;
        if (v.target == b_prev || !game_.config().credibility_assumed) include.push_back(v);
      }
      attacked = votes_for_proposal < game_.config().W_p;
      sim::ProposeArgs a;
      a.slot = t_slot + 1;
      a.parent = attacked ? b_prev : b_t;
      a.proposer = sched.duty(t_slot + 1).leader;
      a.votes = std::move(include);
      a.created = t;
      a.release = t;
      b_a = w.propose(std::move(a));
    }
  }

  BlockId b_prev, b_t, b_a;
  std::int64_t votes_for_proposal = 0;
  bool attacked = false;
};

GameOutcome finish(const LmdGame& g, sim::RunTrace trace) {
  GameOutcome out;
  out.ledger = reward::settle_payoffs(trace, g.reward_params());
  out.final_chain = trace.final_chain;
  out.reorged = trace.reorged;
  out.trace = std::make_shared<const sim::RunTrace>(std::move(trace));
  return out;
}

bool on_chain(const std::vector<BlockId>& chain, BlockId b) {
  return std::find(chain.begin(), chain.end(), b) != chain.end();
}

ValidatorId validator_of(const LmdGame& g, Slot s, std::size_t player) {
  for (ValidatorId v : g.schedule().duty(s).attestors) {
    if (g.attestor_player(s, v) == player) return v;
  }
  throw std::invalid_argument("player has no seat in slot " + std::to_string(s));
}

}  // namespace

eq::Payoff MatrixCell::value() const {
  if (!consistent()) {
    throw std::logic_error("payoff cell holds " + std::to_string(observed.size()) +
                           " distinct values");
  }
  return observed.front();
}

SimpleGame::SimpleGame(GameConfig config) : LmdGame(std::move(config)) {
  const auto kind = config_.kind;
  if (kind != GameKind::Simple && kind != GameKind::StrongSimple &&
      kind != GameKind::PoolSimple) {
    throw GameConfigError("not a simple-game kind");
  }
  if (config_.pool && config_.W_h + config_.pool->members_at(kT) > config_.W) {
    throw GameConfigError("honest and pool seats overlap");
  }
  build_schedule(kT - 1, kT + 1, {kT + 1}, {kT});
  if (kind == GameKind::PoolSimple && config_.pool) {
    std::vector<Account> acc;
    for (Slot s : {kT - 1, kT}) {
      for (ValidatorId v : pool_members(s)) acc.push_back({v, s, reward::Channel::Attestation});
    }
    pool_owner_ = add_owner("pool", std::move(acc));
  }
  add_attestor_players(kT, vote_tick(kT), {Move::Comply, Move::VoteTip, Move::Abstain},
                       pool_owner_);
  for (std::size_t i = 0; i < players().size(); ++i) set_table(i, Move::VoteTip);

  const std::string pre = prefix(config_);
  add_strategy(pre + ".compliant-all", profile_of({Move::Comply}));
  add_strategy(pre + ".vote-tip-all", profile_of({Move::VoteTip}));
  add_strategy(pre + ".abstain-all", profile_of({Move::Abstain}));
  if (!players().empty()) {
    eq::Profile one = profile_of({Move::Comply});
    one[0] = action_index(0, move_name(Move::VoteTip));
    add_strategy(pre + ".defect-one", std::move(one));
  }
}

GameOutcome SimpleGame::simulate(const eq::Profile& profile) const {
  check_profile(profile);
  SimplePolicy policy(*this, profile);
  sim::RunConfig rc;
  rc.start_tick = propose_tick(kT - 1);
  rc.end_tick = propose_tick(kT + 1);
  rc.realization_tick = propose_tick(kT + 1);
  rc.boost = config_.effective_boost();
  rc.tie_break = config_.tie_break;
  GameOutcome out = finish(*this, sim::run(rc, sim::World(kT - 2, roster()), policy));
  out.success = policy.attacked && on_chain(out.final_chain, policy.b_a);
  out.details["votes_for_proposal"] = policy.votes_for_proposal;
  out.details["attacked"] = policy.attacked;
  out.details["adversary_block"] = policy.b_a.value;
  out.details["adversary_parent"] = (policy.attacked ? policy.b_prev : policy.b_t).value;
  return out;
}

namespace {

// Slot t' block by an honest leader, every slot t attestor voting for it,
// then the adversary's slot t'+1 block on top.
class SupportingPolicy : public LmdPolicy {
 public:
  using LmdPolicy::LmdPolicy;

  void on_tick(Tick t, sim::World& w) override {
    constexpr Slot tp = StrongSimpleGame::kTPrime;
    const auto& sched = game_.schedule();
    const auto& committee = sched.duty(SimpleGame::kT).attestors;
    if (t == propose_tick(tp)) {
      sim::ProposeArgs a;
      a.slot = tp;
      a.parent = w.full().genesis().id;
      a.proposer = sched.duty(SimpleGame::kT - 1).leader;
      a.created = t;
      a.release = t;
      b_tp = w.propose(std::move(a));
    } else if (t == vote_tick(tp)) {
      for (ValidatorId v : committee) cast(w, v, tp, b_tp, t, t);
    } else if (t == propose_tick(tp + 1)) {
      sim::ProposeArgs a;
      a.slot = tp + 1;
      a.parent = b_tp;
      a.proposer = sched.duty(SimpleGame::kT + 1).leader;
      const BlockTree view = w.view(t);
      for (const VoteRecord& v : view.votes()) {
        const auto m = game_.attestor_move(profile_, SimpleGame::kT, v.voter);
        if (v.slot == tp && m == Move::Comply) a.votes.push_back(v);
      }
      a.created = t;
      a.release = t;
      w.propose(std::move(a));
    }
  }

  BlockId b_tp;
};

}  // namespace

StrongSimpleGame::StrongSimpleGame(GameConfig config) : SimpleGame([&] {
  config.kind = GameKind::StrongSimple;
  return config;
}()) {}

reward::PayoffLedger StrongSimpleGame::supporting_ledger(const eq::Profile& profile) const {
  SupportingPolicy policy(*this, profile);
  sim::RunConfig rc;
  rc.start_tick = propose_tick(kTPrime);
  rc.end_tick = propose_tick(kTPrime + 1);
  rc.realization_tick = propose_tick(kTPrime + 1);
  rc.boost = config_.effective_boost();
  rc.tie_break = config_.tie_break;
  const auto trace = sim::run(rc, sim::World(kTPrime - 1, roster()), policy);
  return reward::settle_payoffs(trace, reward_params());
}

std::vector<eq::Payoff> StrongSimpleGame::play(const eq::Profile& profile) const {
  auto out = payoffs(SimpleGame::simulate(profile).ledger);
  const auto support = supporting_ledger(profile);
  const eq::Payoff q(1, config_.epoch_length);
  for (std::size_t o = 0; o < out.size(); ++o) {
    for (const Account& a : accounts(o)) {
      out[o] += q * support.of(a.who, kTPrime, reward::Channel::Attestation);
    }
  }
  return out;
}

GameOutcome StrongSimpleGame::simulate(const eq::Profile& profile) const {
  GameOutcome out = SimpleGame::simulate(profile);
  const auto support = supporting_ledger(profile);
  out.details["supporting_attestor_total"] = reward::to_string(support.attestor_total());
  out.details["membership_probability"] =
      reward::to_string(eq::Payoff(1, config_.epoch_length));
  return out;
}

namespace {

class NoBoostPolicy : public LmdPolicy {
 public:
  using LmdPolicy::LmdPolicy;

  void on_tick(Tick t, sim::World& w) override {
    constexpr Slot ts = SimpleGame::kT;
    const auto& sched = game_.schedule();
    if (t == propose_tick(ts - 1)) {
      // Withheld until the slot t proposal, then released alongside it.
      sim::ProposeArgs a;
      a.slot = ts - 1;
      a.parent = w.full().genesis().id;
      a.proposer = sched.duty(ts - 1).leader;
      a.created = t;
      a.release = propose_tick(ts);
      b_adv = w.propose(std::move(a));
    } else if (t == vote_tick(ts - 1)) {
      const BlockId target = tip(w, t);
      for (ValidatorId v : sched.duty(ts - 1).attestors) {
        if (v != sched.duty(ts - 1).leader) cast(w, v, ts - 1, target, t, t);
      }
    } else if (t == propose_tick(ts)) {
      b_t = honest_propose(w, ts, t);
    } else if (t == vote_tick(ts)) {
      const BlockId head = tip(w, t);
      for (ValidatorId v : sched.duty(ts).attestors) {
        const auto m = game_.attestor_move(profile_, ts, v);
        if (!m) {
          cast(w, v, ts, head, t, t);
        } else if (*m == Move::Comply) {
          cast(w, v, ts, b_adv, t, t);
        } else if (*m == Move::VoteProposal) {
          cast(w, v, ts, b_t, t, t);
        }
      }
    } else if (t == propose_tick(ts + 1)) {
      const BlockTree view = w.view(t);
      const BlockId head = fork_choice(view, sim::view_params(view, t, 0, tie_break()));
      attacked = view.is_ancestor(b_adv, head);
      sim::ProposeArgs a;
      a.slot = ts + 1;
      a.parent = attacked ? b_adv : head;
      a.proposer = sched.duty(ts + 1).leader;
      for (const VoteRecord& v : view.votes()) {
        if (v.slot != ts) continue;
        if (v.target == b_adv) ++votes_for_withheld;
        if (v.target == b_adv || !game_.config().credibility_assumed) a.votes.push_back(v);
      }
      a.created = t;
      a.release = t;
      b_a = w.propose(std::move(a));
    }
  }

  BlockId b_adv, b_t, b_a;
  std::int64_t votes_for_withheld = 0;
  bool attacked = false;
};

}  // namespace

NoBoostGame::NoBoostGame(GameConfig config) : LmdGame(std::move(config)) {
  if (config_.kind != GameKind::SimpleNoBoost) throw GameConfigError("not a no-boost game");
  constexpr Slot ts = SimpleGame::kT;
  build_schedule(ts - 1, ts + 1, {ts - 1, ts + 1}, {ts});
  add_attestor_players(ts, vote_tick(ts), {Move::Comply, Move::VoteProposal, Move::Abstain},
                       std::nullopt);
  for (std::size_t i = 0; i < players().size(); ++i) set_table(i, Move::VoteProposal);
  add_strategy("simple-no-boost.compliant-all", profile_of({Move::Comply}));
  add_strategy("simple-no-boost.vote-proposal-all", profile_of({Move::VoteProposal}));
}

GameOutcome NoBoostGame::simulate(const eq::Profile& profile) const {
  check_profile(profile);
  constexpr Slot ts = SimpleGame::kT;
  NoBoostPolicy policy(*this, profile);
  sim::RunConfig rc;
  rc.start_tick = propose_tick(ts - 1);
  rc.end_tick = propose_tick(ts + 1);
  rc.realization_tick = propose_tick(ts + 1);
  rc.boost = 0;
  rc.tie_break = config_.tie_break;
  GameOutcome out = finish(*this, sim::run(rc, sim::World(ts - 2, roster()), policy));
  out.success = policy.attacked && on_chain(out.final_chain, policy.b_a);
  out.details["votes_for_withheld"] = policy.votes_for_withheld;
  out.details["attacked"] = policy.attacked;
  out.details["adversary_block"] = policy.b_a.value;
  return out;
}

PayoffMatrix tabulate_simple_matrix(const SimpleGame& game, std::size_t player,
                                    std::uint64_t max_joint_actions) {
  const std::size_t n = game.players().size();
  if (player >= n) throw std::invalid_argument("player out of range");
  std::vector<std::vector<std::size_t>> cand(n);
  for (std::size_t i = 0; i < n; ++i) {
    cand[i] = {game.action_index(i, move_name(Move::Comply)),
               game.action_index(i, move_name(Move::VoteTip))};
  }
  const eq::Profile base = game.strategy(std::string(to_string(game.config().kind)) +
                                         ".compliant-all");
  const auto others = eq::enumerate_opponents(game, base, player, cand, max_joint_actions);
  std::vector<eq::Profile> batch;
  for (const eq::Profile& o : others) {
    for (std::size_t own : cand[player]) {
      eq::Profile p = o;
      p[player] = own;
      batch.push_back(std::move(p));
    }
  }
  const auto pays = eq::evaluate_profiles(game, batch);
  std::vector<char> success(batch.size());
  const auto count = static_cast<std::int64_t>(batch.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < count; ++i) {
    const auto k = static_cast<std::size_t>(i);
    success[k] = game.SimpleGame::simulate(batch[k]).success ? 1 : 0;
  }
  PayoffMatrix m;
  m.player = player;
  m.evaluations = batch.size();
  for (std::size_t k = 0; k < batch.size(); ++k) {
    const std::size_t row = success[k] ? 0 : 1;
    const std::size_t col = batch[k][player] == cand[player][0] ? 0 : 1;
    auto& obs = m.cells[row][col].observed;
    const eq::Payoff v = game.payoff_of(pays[k], player);
    if (std::find(obs.begin(), obs.end(), v) == obs.end()) obs.push_back(v);
  }
  for (auto& row : m.cells) {
    for (auto& cell : row) std::sort(cell.observed.begin(), cell.observed.end());
  }
  return m;
}

PayoffMatrix simple_payoff_matrix(const GameConfig& config, std::size_t player,
                                  std::uint64_t max_joint_actions) {
  GameConfig c = config;
  c.kind = GameKind::Simple;
  return tabulate_simple_matrix(SimpleGame(c), player, max_joint_actions);
}

PayoffMatrix strong_simple_expected_matrix(const GameConfig& config, std::size_t player,
                                           std::uint64_t max_joint_actions) {
  return tabulate_simple_matrix(StrongSimpleGame(config), player, max_joint_actions);
}

MonteCarloResult strong_simple_monte_carlo(const GameConfig& config,
                                           std::uint64_t samples, eq::Execution exec,
                                           std::size_t player) {
  const StrongSimpleGame game(config);
  const ValidatorId me = validator_of(game, SimpleGame::kT, player);
  const std::size_t owner = game.players().at(player).owner;
  const eq::Profile comply = game.strategy("strong-simple.compliant-all");
  eq::Profile fail = game.strategy("strong-simple.vote-tip-all");
  fail[player] = comply[player];

  MonteCarloResult res;
  res.samples = samples;
  res.support = game.supporting_ledger(comply).of(me, StrongSimpleGame::kTPrime,
                                                  reward::Channel::Attestation);
  const eq::Payoff base_succeed = game.payoffs(game.SimpleGame::simulate(comply).ledger)[owner];
  const eq::Payoff base_fail = game.payoffs(game.SimpleGame::simulate(fail).ledger)[owner];

  // The player's seat in epoch e is position j of the slot t committee; in
  // epoch e+2 the supporting slot t' is the first slot of the epoch.
  const auto& committee = game.schedule().duty(SimpleGame::kT).attestors;
  const auto j = static_cast<std::uint32_t>(
      std::find(committee.begin(), committee.end(), me) - committee.begin());
  const std::uint32_t W = config.W;
  const std::uint32_t n = W * config.epoch_length;
  auto member = [&](std::uint64_t i) -> std::uint64_t {
    const auto e0 = sim::seeded_permutation(splitmix64(config.seed ^ (2 * i)), n);
    const auto e2 = sim::seeded_permutation(splitmix64(config.seed ^ (2 * i + 1)), n);
    const std::uint32_t v = e0[j];
    return std::find(e2.begin(), e2.begin() + W, v) != e2.begin() + W ? 1 : 0;
  };
  std::uint64_t hits = 0;
  const auto total = static_cast<std::int64_t>(samples);
  if (exec == eq::Execution::Serial) {
    for (std::int64_t i = 0; i < total; ++i) hits += member(static_cast<std::uint64_t>(i));
  } else {
#pragma omp parallel for reduction(+ : hits) schedule(static)
    for (std::int64_t i = 0; i < total; ++i) hits += member(static_cast<std::uint64_t>(i));
  }
  res.memberships = hits;
  res.membership_rate = samples ? static_cast<double>(hits) / static_cast<double>(samples) : 0;
  const double q = 1.0 / config.epoch_length;
  res.sigma = samples ? std::sqrt(q * (1 - q) / static_cast<double>(samples)) : 0;
  auto as_double = [](const eq::Payoff& a) {
    return static_cast<double>(a.numerator()) / static_cast<double>(a.denominator());
  };
  res.succeed_c = as_double(base_succeed) + as_double(res.support) * res.membership_rate;
  res.fail_c = as_double(base_fail) + as_double(res.support) * res.membership_rate;
  return res;
}

std::pair<eq::Payoff, eq::Payoff> pool_payoff_simple(const GameConfig& config,
                                                     PoolAction action,
                                                     Condition others) {
  GameConfig c = config;
  c.kind = GameKind::PoolSimple;
  if (!c.pool) c.pool = PoolConfig{};
  const std::uint32_t m = c.pool->members_at(SimpleGame::kT);
  if (static_cast<std::int64_t>(m) >= c.W_p && m > 0) {
    throw GameConfigError("the pool must hold fewer than W_p slot t attestors");
  }
  const SimpleGame game(c);
  eq::Profile prof = game.strategy(others == Condition::Succeed ? "pool-simple.compliant-all"
                                                                : "pool-simple.vote-tip-all");
  std::int64_t solos = 0;
  for (std::size_t i = 0; i < game.players().size(); ++i) {
    const bool is_pool = game.players()[i].owner == game.pool_owner();
    if (!is_pool) {
      ++solos;
      continue;
    }
    prof[i] = game.action_index(
        i, move_name(action == PoolAction::C ? Move::Comply : Move::VoteTip));
  }
  if (others == Condition::Fail && solos < c.W_p) {
    throw GameConfigError("too few solo attestors to make the attack fail");
  }
  const auto ledger = game.simulate(prof).ledger;
  eq::Payoff prev(0), cur(0);
  for (ValidatorId v : game.pool_members(SimpleGame::kT - 1)) {
    prev += ledger.of(v, SimpleGame::kT - 1, reward::Channel::Attestation);
  }
  for (ValidatorId v : game.pool_members(SimpleGame::kT)) {
    cur += ledger.of(v, SimpleGame::kT, reward::Channel::Attestation);
  }
  return {prev, cur};
}

}  // namespace lmdlab::games
