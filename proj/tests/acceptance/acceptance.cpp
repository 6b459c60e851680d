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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "lmdlab/eq/search.hpp"
#include "lmdlab/games/compliance.hpp"
#include "lmdlab/games/dag.hpp"
#include "lmdlab/games/extended.hpp"
#include "lmdlab/games/selfish.hpp"
#include "lmdlab/games/simple.hpp"
#include "lmdlab/overhead/overhead.hpp"
#include "lmdlab/reward/quantify.hpp"
#include "lmdlab/reward/reward.hpp"
#include "lmdlab/tendermint/scenario.hpp"
#include "oracles.hpp"
#include "properties.hpp"

using namespace lmdlab;
using namespace lmdlab::games;
using reward::Amount;

namespace {

// Collects failed expectations for one criterion.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok && failures_.empty()) first_ = what;
    if (!ok) failures_.push_back(what);
  }
  bool ok() const { return failures_.empty(); }
  std::size_t count() const { return failures_.size(); }
  const std::string& first() const { return first_; }

 private:
  std::vector<std::string> failures_;
  std::string first_;
};

std::string str(const Amount& a) { return reward::to_string(a); }

GameConfig config(GameKind kind, std::uint32_t W, std::int64_t W_p) {
  GameConfig c;
  c.kind = kind;
  c.W = W;
  c.W_p = W_p;
  return c;
}

Amount settled(const LmdGame& g, const GameOutcome& o, std::size_t player) {
  const auto ledger = reward::settle_payoffs(*o.trace, g.reward_params());
  return g.payoffs(ledger)[g.players()[player].owner];
}

bool within(double got, double want, double rel) { return std::abs(got / want - 1) <= rel; }

void c1(Check& c) {
  const auto cfg = config(GameKind::Simple, 4, 2);
  const auto m = simple_payoff_matrix(cfg);
  const Amount want[2][2] = {{Amount(1), Amount(0)}, {Amount(0), Amount(0)}};
  for (auto cond : {Condition::Succeed, Condition::Fail}) {
    for (auto a : {PoolAction::C, PoolAction::NC}) {
      const auto& cell = m.at(cond, a);
      const auto& w = want[static_cast<int>(cond)][static_cast<int>(a)];
      c.expect(cell.consistent() && cell.value() == w, "matrix cell differs from " + str(w));
    }
  }
  // Every conditioned run, settled from its trace alone, lands in its cell.
  const SimpleGame g(cfg);
  const std::size_t comply = g.action_index(0, "comply");
  const std::size_t tip = g.action_index(0, "vote-tip");
  for (unsigned mask = 0; mask < 16; ++mask) {
    eq::Profile prof(g.players().size());
    for (std::size_t i = 0; i < prof.size(); ++i) prof[i] = (mask >> i) & 1 ? tip : comply;
    const auto out = g.simulate(prof);
    const auto cond = out.success ? Condition::Succeed : Condition::Fail;
    const auto act = prof[0] == comply ? PoolAction::C : PoolAction::NC;
    c.expect(settled(g, out, 0) == m.at(cond, act).value(),
             "settled payoff differs for mask " + std::to_string(mask));
  }
}

void c2(Check& c) {
  const auto m = strong_simple_expected_matrix(config(GameKind::StrongSimple, 4, 2));
  c.expect(m.at(Condition::Succeed, PoolAction::C).value() == Amount(1) + Amount(1, 32),
           "(Succeed,C) != r + r/32");
  c.expect(m.at(Condition::Fail, PoolAction::C).value() == Amount(1, 32), "(Fail,C) != r/32");
}

void c3(Check& c) {
  const SimpleGame g(config(GameKind::Simple, 4, 2));
  eq::SearchOptions opts;
  opts.exec = eq::Execution::Serial;
  for (std::size_t i = 0; i < g.players().size(); ++i) {
    opts.candidates.push_back({g.action_index(i, "comply"), g.action_index(i, "vote-tip"),
                               g.action_index(i, "abstain")});
  }
  for (const char* name : {"simple.compliant-all", "simple.vote-tip-all"}) {
    const auto prof = g.strategy(name);
    const bool success = g.simulate(prof).success;
    c.expect(success == (std::string(name) == "simple.compliant-all"),
             std::string(name) + " has the wrong attack outcome");
    const auto rep = eq::verify_nash(g, prof, opts);
    c.expect(rep.verdict == eq::Verdict::Nash, std::string(name) + " is not Nash");
    c.expect(rep.evaluations >= 8, std::string(name) + " checked too few deviations");
  }
}

void c4(Check& c) {
  for (std::int64_t p = 1; p <= 3; ++p) {
    auto cfg = config(GameKind::Extended, 4, 2);
    cfg.p = p;
    const ExtendedGame g(cfg);
    const auto rep = eq::verify_spne(g, g.strategy("extended.compliant-all"));
    const std::string tag = "p=" + std::to_string(p) + ": ";
    c.expect(rep.verdict == eq::Verdict::SPNE, tag + "not SPNE");
    std::size_t attestors = 0, leaders = 0;
    for (const auto& t : rep.tables) {
      const std::string& who = g.players()[t.player].name;
      if (who.rfind("attestor", 0) == 0) {
        ++attestors;
        const bool ok = t.cells.size() == 2 && t.cells[0] == std::vector{Amount(1), Amount(0)} &&
                        t.cells[1] == std::vector{Amount(0), Amount(0)};
        c.expect(ok, tag + who + " table differs from {(A,C)=r, else 0}");
      } else {
        ++leaders;
        const bool ok = t.cells.size() == 1 && t.cells[0] == std::vector{Amount(1), Amount(0)};
        c.expect(ok, tag + who + " table differs from {C=R, NC=0}");
      }
    }
    c.expect(attestors == static_cast<std::size_t>(4 * p), tag + "missing attestor tables");
    c.expect(leaders >= static_cast<std::size_t>(p - 1), tag + "missing leader tables");
  }
}

void c5(Check& c) {
  const auto cases = oracle::scripted_tip_cases();
  c.expect(cases.size() >= 10, "fewer than 10 scripted trees");
  bool beats_b0 = false;
  for (const auto& tc : cases) {
    const BlockId got = compliant_tip(tc.tree, tc.params, tc.marks);
    const BlockId oracle = oracle::compliant_tip(tc.tree, tc.params, tc.marks);
    c.expect(got == tc.expected && oracle == tc.expected, tc.name);
    c.expect(tc.params.p <= 3, tc.name + " exceeds p = 3");
    beats_b0 = beats_b0 || tc.name.find("beats B_0") != std::string::npos;
  }
  c.expect(beats_b0, "no B^e_1-beats-B_0 case");
}

void c6(Check& c) {
  struct Row {
    std::int64_t p;
    std::set<Slot> adv;
    std::int64_t n_a, n_na;
  };
  for (const Row& r : {Row{3, {2, 4}, 2, 2}, Row{4, {2, 4, 5}, 3, 2}, Row{4, {3, 5}, 2, 3}}) {
    auto cfg = config(GameKind::SelfishMining, 100, 40);
    cfg.p = r.p;
    cfg.adversarial_slots = r.adv;
    cfg.allow_condition_violation = true;
    const SelfishMiningGame g(cfg);
    const auto out = g.simulate(g.strategy("selfish-mining.compliant-all"));
    const auto w = selfish_weights(out);
    const std::string tag =
        "(N_A,N_NA)=(" + std::to_string(r.n_a) + "," + std::to_string(r.n_na) + "): ";
    c.expect(w.attributed_honest == r.n_na * 100, tag + "honest fork weight");
    c.expect(w.attributed_adversarial == r.n_a * 100 + 40, tag + "adversarial fork weight");
    c.expect(out.success == (w.attributed_adversarial > w.attributed_honest), tag + "success");
  }
  auto cfg = config(GameKind::SelfishMining, 100, 40);
  cfg.p = 3;
  cfg.adversarial_slots = {2, 4};
  cfg.pool = PoolConfig{10, {{1, 7}}};
  // S_A = {1, 3} holds 7 + 10 members, S_NA = {0, 2} holds 10 + 10.
  c.expect(pool_payoff_selfish(cfg, PoolAction::C, Condition::Succeed) == Amount(17),
           "pool (C, succeed)");
  c.expect(pool_payoff_selfish(cfg, PoolAction::NC, Condition::Succeed) == Amount(0),
           "pool (NC, succeed)");
  c.expect(pool_payoff_selfish(cfg, PoolAction::C, Condition::Fail) == Amount(20),
           "pool (C, fail)");
  c.expect(pool_payoff_selfish(cfg, PoolAction::NC, Condition::Fail) == Amount(20),
           "pool (NC, fail)");
  const SelfishMiningGame g(cfg);
  const auto pool = *g.pool_player();
  const auto win = g.simulate(g.strategy("selfish-mining.compliant-all"));
  c.expect(win.success && settled(g, win, pool) == Amount(17), "settled pool payoff on success");
  const auto lose = g.simulate(g.strategy("selfish-mining.vote-tip-all"));
  c.expect(!lose.success && settled(g, lose, pool) == Amount(20), "settled pool payoff on failure");
}

void c7(Check& c) {
  using P = std::pair<Amount, Amount>;
  for (std::int64_t W_p = 1; W_p <= 3; ++W_p) {
    for (std::uint32_t m = 0; m < W_p; ++m) {
      auto cfg = config(GameKind::PoolSimple, 5, W_p);
      cfg.pool = PoolConfig{m, {}};
      const Amount mr(m);
      const std::string tag = "W_p=" + std::to_string(W_p) + " m=" + std::to_string(m) + ": ";
      c.expect(pool_payoff_simple(cfg, PoolAction::C, Condition::Succeed) == P{0, mr},
               tag + "(C, succeed)");
      c.expect(pool_payoff_simple(cfg, PoolAction::NC, Condition::Succeed) == P{0, 0},
               tag + "(NC, succeed)");
      c.expect(pool_payoff_simple(cfg, PoolAction::C, Condition::Fail) == P{mr, 0},
               tag + "(C, fail)");
      c.expect(pool_payoff_simple(cfg, PoolAction::NC, Condition::Fail) == P{mr, 0},
               tag + "(NC, fail)");
    }
  }
}

void c8(Check& c) {
  auto cfg = config(GameKind::DagVotes, 5, 0);
  cfg.mechanism = reward::Mechanism::DagVotes;
  cfg.boost = 0;
  const auto r = dag_security_scenario(cfg);
  c.expect(r.report.verdict == eq::Verdict::SPNE, "prescribed profile is not SPNE");
  c.expect(r.adversary_votes == 0, "adversarial block gathered votes");
  // With no votes and no boost the off-tip block never leads any view, so it
  // leaves the run orphaned rather than displaced.
  const BlockId adv{r.outcome.details["adversary_block"].get<std::uint64_t>()};
  const auto& fin = r.outcome.final_chain;
  c.expect(std::find(fin.begin(), fin.end(), adv) == fin.end(),
           "adversarial block is on the final chain");
  c.expect(!r.outcome.details["adversary_final"].get<bool>(), "adversarial block is final");
  c.expect(r.safety, "a rational leader's block was reorged");
  c.expect(r.liveness, "a compliant leader's block is not final");
  auto eth = cfg;
  eth.mechanism = reward::Mechanism::Ethereum;
  const auto e = dag_security_scenario(eth);
  c.expect(e.report.verdict == eq::Verdict::NotEquilibrium, "Ethereum rewards keep equilibrium");
  c.expect(!e.report.deviations.empty(), "no deviation reported under Ethereum rewards");
}

void c9(Check& c) {
  const auto w = tm::withholding_attack_scenario(1, 2, Amount(1));
  c.expect(w.stalled_rounds == 2, "stalled rounds != 2");
  c.expect(w.finalized_round == 3, "finalized round != 3");
  c.expect(w.payoff_per_non_honest == Amount(2), "payoff per non-honest validator != 2");
  for (const auto& p : w.payoffs) c.expect(p == Amount(2), "a non-honest payoff != 2");
  c.expect(w.report.verdict == eq::Verdict::Nash, "withholding is not Nash");
  for (std::int64_t f = 1; f <= 2; ++f) {
    const auto a = tm::honest_anchor_scenario(f);
    c.expect(a.first_finalized_round == 1 && a.honest_block_finalized,
             "anchor f=" + std::to_string(f) + " not final in the first honest round");
  }
}

void c10(Check& c) {
  using namespace reward;
  const auto inc = altair_block_inclusion_reward(1'073'375, 32 * kGweiPerEth);
  const double all = to_eth(inc.all_three_votes);
  const double success = to_eth(inc.all_three_votes + inc.source_target_only);
  c.expect(within(all, 0.0446, 0.01), "all three votes " + std::to_string(all));
  c.expect(within(success, 0.0777, 0.01), "success reward " + std::to_string(success));
  c.expect(within(to_eth(inc.head_only), 0.0115, 0.02), "head only");
  const auto g = attack_gain_summary(inc, Amount(82, 1000), Amount(12, 100), Amount(278, 1000));
  c.expect(within(to_eth(g.delta), 0.0711, 0.02), "attack gain " + std::to_string(to_eth(g.delta)));
  c.expect(within(to_eth(g.pool_head_loss), 0.0225, 0.02), "pool head loss");
  c.expect(within(to_eth(g.pool_net), 0.0486, 0.02), "pool net");
  c.expect(inc.head_only / inc.all_three_votes == Amount(14, 54), "head/all != 14/54");
  c.expect((inc.all_three_votes + inc.source_target_only) / inc.all_three_votes == Amount(94, 54),
           "success/fail != 94/54");
}

void c11(Check& c) {
  using namespace overhead;
  OverheadParams p16;
  p16.n_agg = 16;
  p16.n_limit = 8;
  OverheadParams p128;
  p128.n_agg = 128;
  p128.n_limit = 64;
  c.expect(current_block_aggregate_bytes(p16) == 20672, "current 20672");
  const auto o16 = optimistic_evidence_bytes(p16);
  const auto o128 = optimistic_evidence_bytes(p128);
  c.expect(o16.bytes == 33216 && o16.delta_vs_current == 12544, "optimistic 16");
  c.expect(o128.bytes == 35008 && o128.delta_vs_current == 14336, "optimistic 128");
  c.expect(within(boost::rational_cast<double>(o16.delta_fraction_of_block), 0.1236, 0.001),
           "12.36%");
  c.expect(within(boost::rational_cast<double>(o128.delta_fraction_of_block), 0.1412, 0.001),
           "14.12%");
  c.expect(worst_case_evidence_bytes(p16) == 527360, "worst 16");
  c.expect(worst_case_evidence_bytes(p128) == 4218880, "worst 128");
  for (const OverheadParams& p : {p16, p128}) {
    const std::int64_t a = p.n_att, g = p.n_agg;
    const std::string tag = "N_agg=" + std::to_string(g) + ": ";
    c.expect(aggregator_cost(p, AggregatorMode::Current) == CostVector{a - 1, 1, 2 * a},
             tag + "aggregator current");
    c.expect(aggregator_cost(p, AggregatorMode::Practical) ==
                 CostVector{2 * (a - 1), 2, 2 * (a + 1)},
             tag + "aggregator practical");
    c.expect(proposer_extra_cost(p, EvidenceCase::Optimistic) ==
                 CostVector{64 * (g - 1), 0, 128 * g},
             tag + "proposer optimistic");
    c.expect(proposer_extra_cost(p, EvidenceCase::Worst) == CostVector{0, 0, 128 * g},
             tag + "proposer worst");
    c.expect(verifier_cost(p, VerifierMode::Current) == CostVector{64 * (a - 1), 0, 128},
             tag + "verifier current");
    c.expect(verifier_cost(p, VerifierMode::Optimistic) ==
                 CostVector{64 * (2 * a + g - 3), 0, 384},
             tag + "verifier optimistic");
    c.expect(verifier_cost(p, VerifierMode::Worst) ==
                 CostVector{64 * (a - 1) * (g + 1), 0, 64 * (2 + 4 * g)},
             tag + "verifier worst");
  }
  c.expect(aggregator_comm_overhead_bytes() == 192, "communication 192");
}

void c12(Check& c) {
  const auto fc = oracle::fork_choice_exhaustive();
  c.expect(fc.ok(), "fork choice: " + fc.first_failure);
  c.expect(fc.cases > 200'000, "fork choice enumeration too small");
  const auto det = oracle::bundled_determinism(3);
  c.expect(det.ok(), "determinism: " + det.first_failure);
  c.expect(oracle::bundled_scenarios().size() == 10, "expected 10 bundled scenarios");
  const auto slash = oracle::bundled_no_honest_equivocation(20);
  c.expect(slash.ok(), "slashing: " + slash.first_failure);
  std::uint64_t gained = 0;
  const auto dag = oracle::dag_timeliness_monotone(10'000, 2026, &gained);
  c.expect(dag.ok() && dag.cases == 10'000, "DAG monotonicity: " + dag.first_failure);
  c.expect(gained > 0, "DAG monotonicity never exercised a flip to timely");
}

struct Criterion {
  const char* id;
  const char* title;
  std::function<void(Check&)> run;
  double limit_s = 0;  // 0 means untimed
};

}  // namespace

int main() {
  const std::vector<Criterion> all = {
      {"C1", "simple game payoff matrix", c1, 1.0},
      {"C2", "strong simple expected matrix", c2},
      {"C3", "simple game Nash certificates", c3, 5.0},
      {"C4", "extended game SPNE and subgame tables", c4},
      {"C5", "compliant tip against the scripted oracle", c5},
      {"C6", "selfish mining weights and pool payoffs", c6},
      {"C7", "pool payoffs in the simple game", c7},
      {"C8", "DAG votes security", c8},
      {"C9", "Tendermint withholding and honest anchor", c9},
      {"C10", "reward quantification", c10},
      {"C11", "aggregation overhead", c11},
      {"C12", "property suites", c12},
  };
  int failed = 0;
  for (const auto& cr : all) {
    Check check;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      cr.run(check);
    } catch (const std::exception& e) {
      check.expect(false, std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (cr.limit_s > 0 && secs >= cr.limit_s) {
      std::ostringstream os;
      os << "took " << secs << " s, limit " << cr.limit_s << " s";
      check.expect(false, os.str());
    }
    std::printf("[%s] %-4s %-44s %8.3f s", check.ok() ? "PASS" : "FAIL", cr.id, cr.title, secs);
    if (!check.ok()) {
      std::printf("  %zu failure(s), first: %s", check.count(), check.first().c_str());
      ++failed;
    }
    std::printf("\n");
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(all.size()) - failed, all.size());
  return failed == 0 ? 0 : 1;
}
