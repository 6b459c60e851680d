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
#include <map>
#include <string>

#include "lmdlab/games/config.hpp"
#include "lmdlab/tendermint/scenario.hpp"

namespace lmdlab::tm {

namespace {

ValidatorId vid(std::int64_t i) { return ValidatorId{static_cast<std::uint32_t>(i)}; }

const std::vector<std::string> kWithholdingMenu = {"withhold", "release-on-time",
                                                   "prevote-proposal", "abstain"};
const std::vector<std::string> kAnchorMenu = {"prevote-proposal", "prevote-nil", "withhold",
                                              "abstain"};

}  // namespace

WithholdingGame::WithholdingGame(std::int64_t f, std::int64_t m, reward::Amount r_unit,
                                 std::optional<std::int64_t> honest)
    : f_(f), m_(m), honest_(honest.value_or(std::min(m, f))), r_unit_(r_unit) {
  if (f < 1 || m < 0) throw games::GameConfigError("withholding needs f >= 1 and m >= 0");
  if (honest_ > f || honest_ < 0 || (m > 0 && honest_ == 0)) {
    throw games::GameConfigError("withholding needs between 1 and f honest round leaders");
  }
  const std::int64_t n = 3 * f + 1;
  for (std::int64_t i = 0; i < n; ++i) {
    roles_.push_back(i < honest_       ? TmRole::Honest
                     : i < honest_ + f ? TmRole::Adversarial
                                       : TmRole::Rational);
    if (i >= honest_) owners_.push_back(vid(i));
  }
  for (std::int64_t i = honest_ + f; i < n; ++i) {
    for (Round round = 1; round <= m; ++round) {
      eq::PlayerSpec p;
      p.name = "rational:" + std::to_string(i) + ":round:" + std::to_string(round);
      p.decision_tick = 3 * (round - 1) + 1;
      p.actions = kWithholdingMenu;
      p.owner = static_cast<std::size_t>(i - honest_);
      p.group = "round:" + std::to_string(round);
      players_.push_back(std::move(p));
      seats_.emplace_back(vid(i), round);
    }
  }
}

std::string WithholdingGame::owner_name(std::size_t owner) const {
  return "validator:" + std::to_string(owners_[owner].index);
}

TmSetup WithholdingGame::setup(const eq::Profile& profile) const {
  check_profile(profile);
  TmSetup s;
  s.params.f = f_;
  s.roles = roles_;
  for (TmRole r : roles_) s.coalition.push_back(r != TmRole::Honest);
  s.heights = 2;
  s.max_rounds = m_ + 4;
  const std::int64_t m = m_;
  const std::int64_t honest = honest_;
  const std::int64_t others = s.params.n() - honest;
  // Honest leaders for rounds 1..m of the first height, non-honest after.
  s.leader = [m, honest, others](Height h, Round round) {
    if (h == 1 && round <= m) return vid((round - 1) % honest);
    const Round offset = h == 1 ? round - (m + 1) : round - 1;
    return vid(honest + (h - 1 + offset) % others);
  };
  std::map<std::pair<std::uint32_t, Round>, TmAction> chosen;
  for (std::size_t p = 0; p < players_.size(); ++p) {
    chosen[{seats_[p].first.index, seats_[p].second}] =
        tm_action_from_string(players_[p].actions[profile[p]]);
  }
  const auto roles = roles_;
  s.policy = [m, roles, chosen](ValidatorId v, Height h, Round round) {
    if (h != 1 || round > m || roles[v.index] == TmRole::Honest) return TmAction::Follow;
    if (roles[v.index] == TmRole::Adversarial) return TmAction::Withhold;
    return chosen.at({v.index, round});
  };
  s.withhold_release = 3 * m;
  return s;
}

std::vector<eq::Payoff> WithholdingGame::play(const eq::Profile& profile) const {
  const TmTrace trace = run_tendermint(setup(profile));
  std::vector<eq::Payoff> out;
  for (ValidatorId v : owners_) out.push_back(round_payoff(trace, v, 1, 1, m_, r_unit_));
  return out;
}

WithholdingResult withholding_attack_scenario(std::int64_t f, std::int64_t m,
                                              const reward::Amount& r_unit,
                                              eq::Execution exec,
                                              std::optional<std::int64_t> honest) {
  const WithholdingGame game(f, m, r_unit, honest);
  const eq::Profile profile = game.withholding_profile();
  WithholdingResult out;
  out.trace = run_tendermint(game.setup(profile));
  const auto fin = out.trace.finalized_at(1);
  out.finalized_round = fin ? fin->round : 0;
  out.stalled_rounds = fin ? fin->round - 1 : game.setup(profile).max_rounds;
  for (ValidatorId v : game.owners()) out.payoffs.push_back(round_payoff(out.trace, v, 1, 1, m, r_unit));
  out.payoff_per_non_honest = out.payoffs.front();
  eq::SearchOptions opts;
  opts.exec = exec;
  out.report = eq::verify_nash(game, profile, opts);
  return out;
}

AnchorGame::AnchorGame(std::int64_t f, std::int64_t honest, reward::Amount r_unit)
    : f_(f), r_unit_(r_unit) {
  if (f < 1) throw games::AssumptionViolated("the honest anchor needs f >= 1");
  if (honest < f + 1) {
    throw games::AssumptionViolated("the honest anchor needs at least f+1 honest validators");
  }
  const std::int64_t n = 3 * f + 1;
  if (honest + f > n) throw games::GameConfigError("too many honest validators for 3f+1");
  for (std::int64_t i = 0; i < n; ++i) {
    roles_.push_back(i < honest       ? TmRole::Honest
                     : i < honest + f ? TmRole::Adversarial
                                      : TmRole::Rational);
    if (roles_.back() != TmRole::Rational) continue;
    eq::PlayerSpec p;
    p.name = "rational:" + std::to_string(i);
    p.decision_tick = 1;
    p.actions = kAnchorMenu;
    p.owner = players_.size();
    p.group = "round:1";
    players_.push_back(std::move(p));
    rational_.push_back(vid(i));
  }
}

TmSetup AnchorGame::setup(const eq::Profile& profile) const {
  check_profile(profile);
  TmSetup s;
  s.params.f = f_;
  s.roles = roles_;
  for (TmRole r : roles_) s.coalition.push_back(r == TmRole::Adversarial);
  s.heights = 3;
  std::int64_t honest = 0;
  for (TmRole r : roles_) honest += r == TmRole::Honest;
  s.leader = [honest](Height h, Round round) { return vid((h - 1 + round - 1) % honest); };
  std::map<std::uint32_t, TmAction> chosen;
  for (std::size_t p = 0; p < players_.size(); ++p) {
    chosen[rational_[p].index] = tm_action_from_string(players_[p].actions[profile[p]]);
  }
  const auto roles = roles_;
  s.policy = [roles, chosen](ValidatorId v, Height h, Round round) {
    if (roles[v.index] == TmRole::Adversarial) return TmAction::Withhold;
    if (roles[v.index] == TmRole::Rational && h == 1 && round == 1) return chosen.at(v.index);
    return TmAction::Follow;
  };
  return s;
}

std::vector<eq::Payoff> AnchorGame::play(const eq::Profile& profile) const {
  const TmTrace trace = run_tendermint(setup(profile));
  std::vector<eq::Payoff> out;
  for (ValidatorId v : rational_) out.push_back(round_payoff(trace, v, 1, 1, 1, r_unit_));
  return out;
}

AnchorResult honest_anchor_scenario(std::int64_t f, std::int64_t honest,
                                    const reward::Amount& r_unit, eq::Execution exec) {
  const AnchorGame game(f, honest, r_unit);
  const eq::Profile profile = game.uniform_profile("prevote-proposal");
  AnchorResult out;
  out.trace = run_tendermint(game.setup(profile));
  if (const auto fin = out.trace.finalized_at(1)) {
    out.first_finalized_round = fin->round;
    const TmBlock& b = out.trace.blocks.at(fin->block.value);
    out.honest_block_finalized = game.roles()[b.proposer.index] == TmRole::Honest;
  }
  out.reorg_resilient = out.honest_block_finalized && out.first_finalized_round == 1 &&
                        !out.trace.conflicting_finalization;

  out.deviations_forfeit = true;
  const std::size_t follow = 0;
  for (std::size_t p = 0; p < game.players().size(); ++p) {
    eq::BestResponse br = eq::best_response(game, profile, p, {}, exec);
    const bool unique = br.argmax.size() == 1 && br.candidates[br.argmax.front()] == follow;
    out.deviations_forfeit = out.deviations_forfeit && unique;
    out.responses.push_back(std::move(br));
  }

  if (!game.players().empty()) {
    eq::Profile nil = profile;
    nil[0] = game.action_index(0, "prevote-nil");
    const TmTrace t = run_tendermint(game.setup(nil));
    const ValidatorId v = game.rational(0);
    for (const TmSentEvidence& e : t.evidences) {
      const TmMsg& a = e.ev.attested;
      if (a.kind == MsgKind::Prevote && a.sender == v && a.h == 1 && a.round == 1 &&
          game.roles()[e.ev.signer.index] == TmRole::Honest) {
        ++out.nil_prevote_honest_evidences;
      }
    }
    for (const TmMsg& m : t.rewarded) {
      if (m.kind == MsgKind::Prevote && m.sender == v && m.h == 1 && m.round == 1) {
        out.nil_prevote_rewarded = true;
      }
    }
  }
  return out;
}

}  // namespace lmdlab::tm
