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
#include <utility>

#include "lmdlab/tendermint/scenario.hpp"

namespace lmdlab::tm {

const char* to_string(TmAction a) {
  switch (a) {
    case TmAction::Follow: return "follow";
    case TmAction::Withhold: return "withhold";
    case TmAction::ReleaseOnTime: return "release-on-time";
    case TmAction::PrevoteProposal: return "prevote-proposal";
    case TmAction::PrevoteNil: return "prevote-nil";
    case TmAction::Abstain: return "abstain";
  }
  return "?";
}

TmAction tm_action_from_string(std::string_view s) {
  for (TmAction a : {TmAction::Follow, TmAction::Withhold, TmAction::ReleaseOnTime,
                     TmAction::PrevoteProposal, TmAction::PrevoteNil, TmAction::Abstain}) {
    if (s == to_string(a)) return a;
  }
  throw std::invalid_argument("unknown tendermint action: " + std::string(s));
}

TmAction TmSetup::action(ValidatorId v, Height h, Round round) const {
  return policy ? policy(v, h, round) : TmAction::Follow;
}

std::optional<TmFinalized> TmTrace::finalized_at(Height h) const {
  for (const TmFinalized& f : finalized) {
    if (f.h == h) return f;
  }
  return std::nullopt;
}

bool TmTrace::rewarded_bundle(ValidatorId v, Height h, Round round) const {
  bool prevote = false, precommit = false;
  for (const TmMsg& m : rewarded) {
    if (m.sender != v || m.h != h || m.round != round) continue;
    prevote |= m.kind == MsgKind::Prevote;
    precommit |= m.kind == MsgKind::Precommit;
  }
  return prevote && precommit;
}

reward::Amount round_payoff(const TmTrace& trace, ValidatorId v, Height h, Round first,
                            Round last, const reward::Amount& r_unit) {
  reward::Amount out(0);
  for (Round round = first; round <= last; ++round) {
    if (trace.rewarded_bundle(v, h, round)) out += r_unit;
  }
  return out;
}

namespace {

bool sends(TmAction a) { return a != TmAction::Abstain; }

// Coalition-style signers vouch only for non-honest senders.
bool coalition_style(TmAction a) {
  return a == TmAction::Withhold || a == TmAction::ReleaseOnTime;
}

class Simulation {
 public:
  explicit Simulation(const TmSetup& s) : s_(s), n_(s.roles.size()) {
    if (static_cast<std::int64_t>(n_) != s.params.n()) {
      throw std::invalid_argument("tendermint setup needs 3f+1 roles");
    }
    if (s.coalition.size() != n_) throw std::invalid_argument("coalition size mismatch");
    if (!s.leader) throw std::invalid_argument("tendermint setup without a leader rule");
  }

  TmTrace run() {
    Tick t = 0;
    for (Height h = s_.first_height; h < s_.first_height + s_.heights; ++h) {
      states_.assign(n_, RoundState{});
      bool done = false;
      for (Round round = 1; round <= s_.max_rounds && !done; ++round, t += 3) {
        for (RoundState& st : states_) {
          st.height = h;
          st.round = round;
        }
        propose(h, round, t);
        prevote(h, round, t + 1);
        precommit(h, round, t + 2);
        done = settle(h, round, t + 3);
      }
      if (!done) break;
    }
    check_conflicts();
    return std::move(tr_);
  }

 private:
  ValidatorId id(std::size_t i) const { return ValidatorId{static_cast<std::uint32_t>(i)}; }
  TmRole role(ValidatorId v) const { return s_.roles[v.index]; }

  Tick release_of(TmAction a, Tick created) const {
    return a == TmAction::Withhold ? std::max(created, s_.withhold_release) : created;
  }

  bool sees(ValidatorId v, ValidatorId sender, Tick created, Tick release, Tick at) const {
    if (sender == v) return created <= at;
    if (release < at) return true;
    return s_.coalition[v.index] && s_.coalition[sender.index] && created < at;
  }

  MessageLog view(ValidatorId v, Tick at) const {
    MessageLog out;
    for (const TmSent& m : tr_.messages) {
      if (sees(v, m.msg.sender, m.created, m.release, at)) out.add(m.msg);
    }
    return out;
  }

  std::vector<TmEvidence> evidence_view(ValidatorId v, Tick at) const {
    std::vector<TmEvidence> out;
    for (const TmSentEvidence& e : tr_.evidences) {
      if (sees(v, e.ev.signer, e.created, e.release, at)) out.push_back(e.ev);
    }
    return out;
  }

  MessageLog public_view(Tick at) const {
    MessageLog out;
    for (const TmSent& m : tr_.messages) {
      if (m.release < at) out.add(m.msg);
    }
    return out;
  }

  void send(const TmMsg& m, Tick created, Tick release) {
    if (global_.add(m)) tr_.messages.push_back({m, created, release});
  }

  void check(const RoundState& st) {
    if (!st.consistent()) tr_.state_invariants_held = false;
  }

  void propose(Height h, Round round, Tick t) {
    const ValidatorId leader = s_.leader(h, round);
    const TmAction a = s_.action(leader, h, round);
    if (!sends(a)) return;
    RoundState& st = states_[leader.index];
    const BlockId fresh{tr_.blocks.size()};
    const MessageLog v = view(leader, t);
    for (const TmMsg& m : tm_step(st, Step::Propose, v, {leader, leader, fresh, s_.params})) {
      if (m.value == Value(fresh)) tr_.blocks.push_back(build_block(leader, h, round, t, fresh, v));
      send(m, t, release_of(a, t));
    }
    check(st);
  }

  TmBlock build_block(ValidatorId leader, Height h, Round round, Tick t, BlockId id,
                      const MessageLog& v) const {
    TmBlock b{id, leader, h, round, {}, {}};
    const std::vector<TmEvidence> evs = evidence_view(leader, t);
    for (const TmMsg& m : v.messages()) {
      if (m.kind == MsgKind::Proposal || final_included_.contains(m)) continue;
      if (!vote_correct(m, h, round)) continue;
      if (!tm_vote_reward(m, h, round, unique_evidence_count(m, evs), s_.params)) continue;
      b.votes.push_back(m);
      const EvidenceKind want =
          m.kind == MsgKind::Precommit ? EvidenceKind::Precommit : EvidenceKind::Prevote;
      for (const TmEvidence& e : evs) {
        if (e.kind == want && e.attested == m) b.evidences.push_back(e);
      }
    }
    return b;
  }

  void prevote(Height h, Round round, Tick t) {
    const ValidatorId leader = s_.leader(h, round);
    for (std::size_t i = 0; i < n_; ++i) {
      const ValidatorId v = id(i);
      const TmAction a = s_.action(v, h, round);
      if (!sends(a)) continue;
      const MessageLog vw = view(v, t);
      TmMsg pv{MsgKind::Prevote, h, round, {}, -1, v};
      if (a == TmAction::Follow) {
        pv = tm_step(states_[i], Step::Prevote, vw, {v, leader, BlockId{}, s_.params}).front();
        check(states_[i]);
      } else if (a == TmAction::PrevoteProposal) {
        if (const TmMsg* p = vw.proposal(h, round)) pv.value = p->value;
      }
      send(pv, t, release_of(a, t));
    }
    for (std::size_t i = 0; i < n_; ++i) {
      const ValidatorId v = id(i);
      const TmAction a = s_.action(v, h, round);
      if (sends(a)) sign_precommits(v, a, h, round, t);
    }
  }

  void sign_precommits(ValidatorId v, TmAction a, Height h, Round round, Tick t) {
    const MessageLog vw = view(v, t);
    Height h2 = h;
    Round r2 = round - 1;
    if (round == 1) {
      h2 = h - 1;
      r2 = vw.last_round(h2);
    }
    const auto end = end_tick_.find({h2, r2});
    if (end == end_tick_.end()) return;
    const MessageLog seen = view(v, end->second);
    for (const TmMsg& m : vw.messages()) {
      if (m.kind != MsgKind::Precommit || m.h != h2 || m.round != r2) continue;
      if (coalition_style(a) && role(m.sender) == TmRole::Honest) continue;
      TmEvidence ev{EvidenceKind::Precommit, v, m, {}, h, round};
      const TmMsg* own = vw.find(MsgKind::Precommit, v, h2, r2);
      if (!own || own->value != m.value) {
        for (const TmMsg& j : seen.messages()) {
          if (j.kind == MsgKind::Prevote && j.h == h2 && j.round == r2 && j.value == m.value) {
            ev.justification.push_back(j);
          }
        }
      }
      if (precommit_evidence_valid(ev, vw, s_.params)) {
        tr_.evidences.push_back({std::move(ev), t, release_of(a, t)});
      }
    }
  }

  void precommit(Height h, Round round, Tick t) {
    const ValidatorId leader = s_.leader(h, round);
    for (std::size_t i = 0; i < n_; ++i) {
      const ValidatorId v = id(i);
      const TmAction a = s_.action(v, h, round);
      if (!sends(a)) continue;
      TmMsg pc{MsgKind::Precommit, h, round, {}, -1, v};
      if (!coalition_style(a)) {
        pc = tm_step(states_[i], Step::Precommit, view(v, t), {v, leader, BlockId{}, s_.params})
                 .front();
        check(states_[i]);
      }
      send(pc, t, release_of(a, t));
    }
    for (std::size_t i = 0; i < n_; ++i) {
      const ValidatorId v = id(i);
      const TmAction a = s_.action(v, h, round);
      if (!sends(a)) continue;
      const MessageLog vw = view(v, t);
      for (const TmMsg& m : vw.messages()) {
        if (m.kind != MsgKind::Prevote || m.h != h || m.round != round) continue;
        if (coalition_style(a) && role(m.sender) == TmRole::Honest) continue;
        TmEvidence ev{EvidenceKind::Prevote, v, m, {}, h, round};
        if (prevote_evidence_valid(ev, vw, s_.params)) {
          tr_.evidences.push_back({std::move(ev), t, release_of(a, t)});
        }
      }
    }
  }

  bool settle(Height h, Round round, Tick t) {
    end_tick_[{h, round}] = t;
    const Value v = finalized_value(public_view(t), h, round, s_.params);
    if (!v) return false;
    tr_.finalized.push_back({h, round, *v});
    const TmBlock& b = tr_.blocks.at(v->value);
    for (const TmMsg& m : b.votes) {
      final_included_.insert(m);
      if (tm_vote_reward(m, b.h, b.round, unique_evidence_count(m, b.evidences), s_.params)) {
        tr_.rewarded.insert(m);
      }
    }
    return true;
  }

  // Quorum precommits for two different blocks at one height, counting
  // every message ever sent.
  void check_conflicts() {
    std::map<Height, std::set<BlockId>> decided;
    for (const TmSent& m : tr_.messages) {
      if (m.msg.kind != MsgKind::Precommit || !m.msg.value) continue;
      if (static_cast<std::int64_t>(global_.count(MsgKind::Precommit, m.msg.h, m.msg.round,
                                                  m.msg.value)) >= s_.params.quorum()) {
        decided[m.msg.h].insert(*m.msg.value);
      }
    }
    for (const auto& [h, blocks] : decided) {
      if (blocks.size() > 1) tr_.conflicting_finalization = true;
    }
  }

  const TmSetup& s_;
  std::size_t n_;
  TmTrace tr_;
  MessageLog global_;
  std::vector<RoundState> states_;
  std::map<std::pair<Height, Round>, Tick> end_tick_;
  std::set<TmMsg> final_included_;
};

}  // namespace

TmTrace run_tendermint(const TmSetup& setup) { return Simulation(setup).run(); }

}  // namespace lmdlab::tm
