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

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "lmdlab/cli/runner.hpp"
#include "lmdlab/games/dag.hpp"
#include "lmdlab/games/game.hpp"
#include "lmdlab/games/selfish.hpp"
#include "lmdlab/games/simple.hpp"
#include "lmdlab/reward/quantify.hpp"
#include "lmdlab/tendermint/scenario.hpp"

namespace lmdlab::cli {

using nlohmann::ordered_json;
using reward::to_string;

namespace {

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string ratio_percent(const overhead::Ratio& r) {
  return fixed(100.0 * static_cast<double>(r.numerator()) / static_cast<double>(r.denominator()),
               2);
}

std::size_t player_index(const eq::Game& game, const std::string& name) {
  const auto p = game.find_player(name);
  if (!p) throw ValidationError("unknown player: " + name);
  return *p;
}

std::size_t action_of(const eq::Game& game, std::size_t player, const std::string& action) {
  const auto& menu = game.players()[player].actions;
  const auto it = std::find(menu.begin(), menu.end(), action);
  if (it == menu.end()) {
    throw ValidationError("player " + game.players()[player].name + " has no action " + action);
  }
  return static_cast<std::size_t>(it - menu.begin());
}

// Menu entries named in `names`, per player. A player whose menu has none of
// them keeps its whole menu.
std::vector<std::vector<std::size_t>> candidate_sets(const eq::Game& game,
                                                     const std::vector<std::string>& names) {
  if (names.empty()) return {};
  std::vector<std::vector<std::size_t>> out;
  for (const eq::PlayerSpec& p : game.players()) {
    std::vector<std::size_t> keep;
    for (std::size_t a = 0; a < p.actions.size(); ++a) {
      if (std::find(names.begin(), names.end(), p.actions[a]) != names.end()) keep.push_back(a);
    }
    out.push_back(std::move(keep));
  }
  return out;
}

ordered_json report_json(const eq::Game& game, const eq::EquilibriumReport& r) {
  ordered_json j;
  j["verdict"] = eq::to_string(r.verdict);
  j["evaluations"] = r.evaluations;
  j["deviations"] = ordered_json::array();
  for (const eq::Deviation& d : r.deviations) {
    ordered_json dj;
    dj["players"] = ordered_json::array();
    dj["actions"] = ordered_json::array();
    dj["gains"] = ordered_json::array();
    for (std::size_t i = 0; i < d.players.size(); ++i) {
      const eq::PlayerSpec& p = game.players()[d.players[i]];
      dj["players"].push_back(p.name);
      dj["actions"].push_back(p.actions[d.actions[i]]);
      dj["gains"].push_back(to_string(d.gains[i]));
    }
    if (!d.subgame.empty()) dj["subgame"] = d.subgame;
    j["deviations"].push_back(std::move(dj));
  }
  if (!r.tables.empty()) {
    j["tables"] = ordered_json::array();
    for (const eq::SubgameTable& t : r.tables) {
      ordered_json tj;
      tj["player"] = game.players()[t.player].name;
      tj["rows"] = t.rows;
      tj["cols"] = t.cols;
      tj["cells"] = ordered_json::array();
      for (const auto& row : t.cells) {
        ordered_json rj = ordered_json::array();
        for (const eq::Payoff& c : row) rj.push_back(to_string(c));
        tj["cells"].push_back(std::move(rj));
      }
      j["tables"].push_back(std::move(tj));
    }
  }
  return j;
}

ordered_json cell_json(const games::MatrixCell& c) {
  if (c.consistent()) return to_string(c.value());
  ordered_json all = ordered_json::array();
  for (const eq::Payoff& p : c.observed) all.push_back(to_string(p));
  return all;
}

ordered_json matrix_json(const eq::Game& game, const games::PayoffMatrix& m) {
  using games::Condition;
  using games::PoolAction;
  ordered_json j;
  j["player"] = game.players()[m.player].name;
  j["evaluations"] = m.evaluations;
  for (const auto& [cname, cond] :
       {std::pair{"succeed", Condition::Succeed}, std::pair{"fail", Condition::Fail}}) {
    j["cells"][cname]["C"] = cell_json(m.at(cond, PoolAction::C));
    j["cells"][cname]["NC"] = cell_json(m.at(cond, PoolAction::NC));
  }
  return j;
}

eq::Profile build_profile(const games::LmdGame& game, const Scenario& s) {
  std::string name;
  if (s.strategy) {
    name = *s.strategy;
    if (!game.has_strategy(name)) throw ValidationError("unknown strategy: " + name);
  } else {
    name = game.strategy_names().front();
  }
  eq::Profile profile = game.strategy(name);
  for (const auto& [player, action] : s.overrides) {
    const std::size_t p = player_index(game, player);
    profile[p] = action_of(game, p, action);
  }
  return profile;
}

ordered_json run_check(const games::LmdGame& game, const eq::Profile& profile,
                       const CheckRequest& c, const games::GameOutcome& outcome,
                       const RunOptions& opts) {
  using games::Condition;
  using games::GameKind;
  using games::PoolAction;
  const games::GameConfig& cfg = game.config();
  eq::SearchOptions so;
  so.max_coalition = c.max_coalition;
  so.candidates = candidate_sets(game, c.candidates);
  so.max_joint_actions = opts.max_joint_actions;
  so.exec = opts.exec;
  for (const std::string& n : c.coalition) so.coalition_players.push_back(player_index(game, n));

  ordered_json j;
  switch (c.type) {
    case CheckType::Nash:
      j = report_json(game, eq::verify_nash(game, profile, so));
      break;
    case CheckType::Spne:
      j = report_json(game, eq::verify_spne(game, profile, so));
      break;
    case CheckType::Dominance: {
      const std::size_t p = player_index(game, c.player);
      const std::size_t a = action_of(game, p, c.action);
      std::vector<std::size_t> alts;
      if (c.alternatives.empty()) {
        for (std::size_t x = 0; x < game.players()[p].actions.size(); ++x) {
          if (x != a) alts.push_back(x);
        }
      } else {
        for (const std::string& n : c.alternatives) alts.push_back(action_of(game, p, n));
      }
      auto cands = so.candidates;
      if (cands.empty()) {
        for (const eq::PlayerSpec& ps : game.players()) {
          std::vector<std::size_t> all(ps.actions.size());
          for (std::size_t x = 0; x < all.size(); ++x) all[x] = x;
          cands.push_back(std::move(all));
        }
      }
      const auto cond = eq::enumerate_opponents(game, profile, p, cands, opts.max_joint_actions);
      j["player"] = c.player;
      j["action"] = c.action;
      j["conditioning_profiles"] = cond.size();
      j["dominance"] = eq::to_string(eq::dominance_check(game, p, a, alts, cond, opts.exec));
      break;
    }
    case CheckType::Matrix: {
      const std::size_t p = c.player.empty() ? 0 : player_index(game, c.player);
      if (cfg.kind == GameKind::Simple) {
        j = matrix_json(game, games::simple_payoff_matrix(cfg, p, opts.max_joint_actions));
      } else if (cfg.kind == GameKind::StrongSimple) {
        j = matrix_json(game,
                        games::strong_simple_expected_matrix(cfg, p, opts.max_joint_actions));
        if (c.samples > 0) {
          const auto mc = games::strong_simple_monte_carlo(cfg, c.samples, opts.exec, p);
          j["monte_carlo"] = {{"samples", mc.samples},
                              {"memberships", mc.memberships},
                              {"membership_rate", fixed(mc.membership_rate, 6)},
                              {"sigma", fixed(mc.sigma, 6)},
                              {"support", to_string(mc.support)},
                              {"succeed_C", fixed(mc.succeed_c, 6)},
                              {"fail_C", fixed(mc.fail_c, 6)}};
        }
      } else if (cfg.kind == GameKind::PoolSimple) {
        for (const auto& [aname, act] : {std::pair{"C", PoolAction::C}, std::pair{"NC", PoolAction::NC}}) {
          for (const auto& [cname, cond] :
               {std::pair{"succeed", Condition::Succeed}, std::pair{"fail", Condition::Fail}}) {
            const auto [prev, cur] = games::pool_payoff_simple(cfg, act, cond);
            j["cells"][cname][aname] = {{"slot_t_minus_1", to_string(prev)},
                                        {"slot_t", to_string(cur)},
                                        {"total", to_string(prev + cur)}};
          }
        }
      } else if (cfg.kind == GameKind::SelfishMining) {
        for (const auto& [aname, act] : {std::pair{"C", PoolAction::C}, std::pair{"NC", PoolAction::NC}}) {
          for (const auto& [cname, cond] :
               {std::pair{"succeed", Condition::Succeed}, std::pair{"fail", Condition::Fail}}) {
            j["cells"][cname][aname] = to_string(games::pool_payoff_selfish(cfg, act, cond));
          }
        }
        const auto w = games::selfish_weights(outcome);
        j["weights"] = {{"attributed_honest", w.attributed_honest},
                        {"attributed_adversarial", w.attributed_adversarial},
                        {"measured_honest", w.measured_honest},
                        {"measured_adversarial", w.measured_adversarial}};
      } else {
        throw ValidationError(std::string("no payoff matrix for ") + games::to_string(cfg.kind));
      }
      break;
    }
    case CheckType::Security: {
      if (cfg.kind != GameKind::DagVotes) {
        throw ValidationError("the security check needs a dag-votes game");
      }
      const games::DagScenarioResult r = games::dag_security_scenario(cfg, so);
      const auto dag = games::make_game(cfg);
      j = report_json(*dag, r.report);
      j["coalition"] = report_json(*dag, r.coalition);
      j["safety"] = r.safety;
      j["liveness"] = r.liveness;
      j["adversary_votes"] = r.adversary_votes;
      j["adversary_block_final"] = r.outcome.success;
      break;
    }
  }
  static constexpr const char* kNames[] = {"nash", "spne", "dominance", "matrix", "security"};
  ordered_json out;
  out["type"] = kNames[static_cast<int>(c.type)];
  for (auto& [k, v] : j.items()) {
    if (k != "type") out[k] = v;
  }
  return out;
}

std::uint64_t effective_seed(const Scenario& s, const RunOptions& o) {
  if (o.seed) return *o.seed;
  if (s.seed) return *s.seed;
  return s.game.seed;
}

void run_game(const Scenario& s, const RunOptions& o, Report& rep) {
  games::GameConfig cfg = s.game;
  cfg.seed = effective_seed(s, o);
  const auto game = games::make_game(cfg);
  const eq::Profile profile = build_profile(*game, s);
  const games::GameOutcome outcome = game->simulate(profile);
  const std::vector<eq::Payoff> pay = game->play(profile);

  ordered_json& j = rep.json;
  j["profile"]["strategy"] = s.strategy.value_or(game->strategy_names().front());
  j["profile"]["overrides"] = s.overrides;
  ordered_json& out = j["outcome"];
  out["success"] = outcome.success;
  out["final_chain"] = ordered_json::array();
  for (BlockId b : outcome.final_chain) out["final_chain"].push_back(b.value);
  out["reorged"] = ordered_json::array();
  for (BlockId b : outcome.reorged) out["reorged"].push_back(b.value);
  out["payoffs"] = ordered_json::object();
  for (std::size_t i = 0; i < pay.size(); ++i) out["payoffs"][game->owner_name(i)] = to_string(pay[i]);
  out["details"] = outcome.details;
  j["checks"] = ordered_json::array();
  for (const CheckRequest& c : s.checks) j["checks"].push_back(run_check(*game, profile, c, outcome, o));
  if (outcome.trace) rep.trace = outcome.trace->jsonl();
}

std::vector<std::string> tm_trace_lines(const tm::TmTrace& t) {
  std::vector<std::string> out;
  auto value = [](const tm::Value& v) -> ordered_json {
    return v ? ordered_json(v->value) : ordered_json(nullptr);
  };
  auto msg = [&](const tm::TmMsg& m) {
    ordered_json j{{"kind", tm::to_string(m.kind)}, {"height", m.h},     {"round", m.round},
                   {"value", value(m.value)},       {"sender", m.sender.index}};
    if (m.kind == tm::MsgKind::Proposal) j["vr"] = m.vr;
    return j;
  };
  for (const tm::TmSent& m : t.messages) {
    out.push_back(ordered_json{{"tick", m.created}, {"kind", "message"},
                               {"payload", {{"msg", msg(m.msg)}, {"release", m.release}}}}
                      .dump());
  }
  for (const tm::TmSentEvidence& e : t.evidences) {
    out.push_back(
        ordered_json{{"tick", e.created},
                     {"kind", "evidence"},
                     {"payload",
                      {{"signer", e.ev.signer.index},
                       {"attested", msg(e.ev.attested)},
                       {"justification", e.ev.justification.size()},
                       {"release", e.release == kNeverReleased ? ordered_json(nullptr)
                                                               : ordered_json(e.release)}}}}
            .dump());
  }
  for (const tm::TmFinalized& f : t.finalized) {
    const tm::TmBlock& b = t.blocks.at(f.block.value);
    out.push_back(ordered_json{{"kind", "finalized"},
                               {"payload",
                                {{"height", f.h},
                                 {"round", f.round},
                                 {"block", f.block.value},
                                 {"proposer", b.proposer.index},
                                 {"votes", b.votes.size()},
                                 {"evidences", b.evidences.size()}}}}
                      .dump());
  }
  return out;
}

void run_withholding(const Scenario& s, const RunOptions& o, Report& rep) {
  const TendermintSpec& t = s.tendermint;
  tm::WithholdingResult r;
  try {
    r = tm::withholding_attack_scenario(t.f, t.m, t.r_unit, o.exec, t.honest);
  } catch (const games::GameConfigError& e) {
    throw ValidationError(std::string("game: ") + e.what());
  }
  const tm::WithholdingGame game(t.f, t.m, t.r_unit, t.honest);
  ordered_json& j = rep.json["outcome"];
  j["stalled_rounds"] = r.stalled_rounds;
  j["finalized_round"] = r.finalized_round;
  j["payoff_per_non_honest"] = to_string(r.payoff_per_non_honest);
  for (std::size_t i = 0; i < r.payoffs.size(); ++i) {
    j["payoffs"][game.owner_name(i)] = to_string(r.payoffs[i]);
  }
  j["conflicting_finalization"] = r.trace.conflicting_finalization;
  ordered_json check{{"type", "nash"}};
  const ordered_json verdict = report_json(game, r.report);
  for (const auto& [k, v] : verdict.items()) check[k] = v;
  rep.json["checks"] = ordered_json::array({check});
  rep.trace = tm_trace_lines(r.trace);
}

void run_anchor(const Scenario& s, const RunOptions& o, Report& rep) {
  const TendermintSpec& t = s.tendermint;
  const std::int64_t honest = t.honest.value_or(t.f + 1);
  tm::AnchorResult r;
  try {
    r = tm::honest_anchor_scenario(t.f, honest, t.r_unit, o.exec);
  } catch (const games::GameConfigError& e) {
    throw ValidationError(std::string("game: ") + e.what());
  }
  const tm::AnchorGame game(t.f, honest, t.r_unit);
  ordered_json& j = rep.json["outcome"];
  j["first_finalized_round"] = r.first_finalized_round;
  j["honest_block_finalized"] = r.honest_block_finalized;
  j["reorg_resilient"] = r.reorg_resilient;
  j["deviations_forfeit"] = r.deviations_forfeit;
  j["nil_prevote_honest_evidences"] = r.nil_prevote_honest_evidences;
  j["nil_prevote_rewarded"] = r.nil_prevote_rewarded;
  ordered_json br = ordered_json::object();
  for (std::size_t p = 0; p < r.responses.size(); ++p) {
    const auto& resp = r.responses[p];
    for (std::size_t i = 0; i < resp.candidates.size(); ++i) {
      br[game.players()[p].name][game.players()[p].actions[resp.candidates[i]]] =
          to_string(resp.payoffs[i]);
    }
  }
  j["best_responses"] = br;
  rep.trace = tm_trace_lines(r.trace);
}

void run_quantify(const Scenario& s, Report& rep) {
  const QuantifySpec& q = s.quantify;
  const auto inc = reward::altair_block_inclusion_reward(q.n_validators, q.stake_gwei);
  const auto gain =
      reward::attack_gain_summary(inc, q.mev_fail_eth, q.mev_success_eth, q.pool_share);
  ordered_json& j = rep.json["outcome"];
  j["rows"] = ordered_json::array();
  for (const reward::QuantRow& row : reward::quantification_rows(inc, gain)) {
    j["rows"].push_back(
        {{"label", row.label}, {"gwei", to_string(row.gwei)}, {"eth", fixed(reward::to_eth(row.gwei), 6)}});
  }
  j["head_over_all"] = to_string(inc.head_only / inc.all_three_votes);
  j["success_over_fail"] =
      to_string((inc.all_three_votes + inc.source_target_only) / inc.all_three_votes);
  j["delta_fraction"] = to_string(gain.delta_fraction);
}

void run_overhead(const Scenario& s, Report& rep) {
  using namespace overhead;
  std::vector<std::pair<std::int64_t, std::int64_t>> grid = s.overhead.grid;
  if (grid.empty()) grid.emplace_back(s.overhead.base.n_agg, s.overhead.base.n_limit);
  ordered_json rows = ordered_json::array();
  try {
    for (const auto& [agg, limit] : grid) {
      OverheadParams p = s.overhead.base;
      p.n_agg = agg;
      p.n_limit = limit;
      p.validate();
      const EvidenceBytes opt = optimistic_evidence_bytes(p);
      ordered_json r;
      r["n_agg"] = agg;
      r["n_limit"] = limit;
      r["current_bytes"] = current_block_aggregate_bytes(p);
      r["optimistic_bytes"] = opt.bytes;
      r["optimistic_delta"] = opt.delta_vs_current;
      r["optimistic_delta_percent"] = ratio_percent(opt.delta_fraction_of_block);
      r["worst_bytes"] = worst_case_evidence_bytes(p);
      r["aggregator_cost"] = {{"current", aggregator_cost(p, AggregatorMode::Current).to_string()},
                              {"practical", aggregator_cost(p, AggregatorMode::Practical).to_string()}};
      r["proposer_extra_cost"] = {
          {"optimistic", proposer_extra_cost(p, EvidenceCase::Optimistic).to_string()},
          {"worst", proposer_extra_cost(p, EvidenceCase::Worst).to_string()}};
      r["verifier_cost"] = {{"current", verifier_cost(p, VerifierMode::Current).to_string()},
                            {"optimistic", verifier_cost(p, VerifierMode::Optimistic).to_string()},
                            {"worst", verifier_cost(p, VerifierMode::Worst).to_string()}};
      r["comm_overhead_bytes"] = aggregator_comm_overhead_bytes(p);
      rows.push_back(std::move(r));
    }
  } catch (const OverheadError& e) {
    throw ValidationError(std::string("game: ") + e.what());
  }
  rep.json["outcome"]["grid"] = std::move(rows);
}

const char* analysis_name(const Scenario& s) {
  switch (s.analysis) {
    case Analysis::Game: return games::to_string(s.game.kind);
    case Analysis::TendermintWithholding: return "tendermint.withholding";
    case Analysis::TendermintAnchor: return "tendermint.honest-anchor";
    case Analysis::Quantify: return "quantify";
    case Analysis::Overhead: return "overhead";
  }
  return "?";
}

void flatten(const ordered_json& j, const std::string& path,
             std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object() && !j.empty()) {
    for (const auto& [k, v] : j.items()) flatten(v, path.empty() ? k : path + "." + k, out);
  } else if (j.is_array() && !j.empty() &&
             std::any_of(j.begin(), j.end(), [](const auto& x) { return x.is_structured(); })) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", out);
  } else {
    out.emplace_back(path, j.is_string() ? j.get<std::string>() : j.dump());
  }
}

}  // namespace

Report run_scenario(const Scenario& s, const RunOptions& o) {
  Report rep;
  rep.json["scenario"] = s.id;
  if (!s.description.empty()) rep.json["description"] = s.description;
  rep.json["analysis"] = analysis_name(s);
  rep.json["seed"] = effective_seed(s, o);
  switch (s.analysis) {
    case Analysis::Game: run_game(s, o, rep); break;
    case Analysis::TendermintWithholding: run_withholding(s, o, rep); break;
    case Analysis::TendermintAnchor: run_anchor(s, o, rep); break;
    case Analysis::Quantify: run_quantify(s, rep); break;
    case Analysis::Overhead: run_overhead(s, rep); break;
  }
  rep.json["trace"] = o.trace_path ? ordered_json(*o.trace_path) : ordered_json(nullptr);
  return rep;
}

std::string render(const Report& report, Format format) {
  if (format == Format::Json) return report.json.dump(2) + "\n";
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(report.json, "", rows);
  std::size_t width = 0;
  for (const auto& [k, v] : rows) width = std::max(width, k.size());
  std::ostringstream os;
  for (const auto& [k, v] : rows) os << k << std::string(width - k.size() + 2, ' ') << v << '\n';
  return os.str();
}

}  // namespace lmdlab::cli
