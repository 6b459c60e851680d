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

#include "lmdlab/tendermint/protocol.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace lmdlab::tm {

bool RoundState::consistent() const {
  if (valid_round < locked_round) return false;
  return locked_value.has_value() == (locked_round != -1);
}

const char* to_string(MsgKind k) {
  switch (k) {
    case MsgKind::Proposal: return "proposal";
    case MsgKind::Prevote: return "prevote";
    case MsgKind::Precommit: return "precommit";
  }
  return "?";
}

namespace {

std::string describe(const TmMsg& m) {
  return std::string(to_string(m.kind)) + " from " + std::to_string(m.sender.index) +
         " at height " + std::to_string(m.h) + " round " + std::to_string(m.round);
}

bool earlier(Height h, Round round, Height h2, Round round2) {
  return h < h2 || (h == h2 && round < round2);
}

// Senders of prevotes in `msgs` at (h, round) for `value`.
std::size_t justified_prevotes(std::span<const TmMsg> msgs, Height h, Round round,
                               const Value& value) {
  std::set<ValidatorId> senders;
  for (const TmMsg& m : msgs) {
    if (m.kind == MsgKind::Prevote && m.h == h && m.round == round && m.value == value) {
      senders.insert(m.sender);
    }
  }
  return senders.size();
}

}  // namespace

bool MessageLog::add(const TmMsg& msg) {
  if (const TmMsg* old = find(msg.kind, msg.sender, msg.h, msg.round)) {
    if (*old == msg) return false;
    throw SlashableAttempt("conflicting " + describe(msg));
  }
  msgs_.push_back(msg);
  return true;
}

const TmMsg* MessageLog::find(MsgKind kind, ValidatorId sender, Height h, Round round) const {
  for (const TmMsg& m : msgs_) {
    if (m.kind == kind && m.sender == sender && m.h == h && m.round == round) return &m;
  }
  return nullptr;
}

const TmMsg* MessageLog::proposal(Height h, Round round) const {
  for (const TmMsg& m : msgs_) {
    if (m.kind == MsgKind::Proposal && m.h == h && m.round == round) return &m;
  }
  return nullptr;
}

std::size_t MessageLog::count(MsgKind kind, Height h, Round round, const Value& value) const {
  return static_cast<std::size_t>(std::count_if(msgs_.begin(), msgs_.end(), [&](const TmMsg& m) {
    return m.kind == kind && m.h == h && m.round == round && m.value == value;
  }));
}

std::optional<Value> MessageLog::quorum_value(MsgKind kind, Height h, Round round,
                                              const TmParams& params) const {
  for (const TmMsg& m : msgs_) {
    if (m.kind != kind || m.h != h || m.round != round) continue;
    if (static_cast<std::int64_t>(count(kind, h, round, m.value)) >= params.quorum()) {
      return m.value;
    }
  }
  return std::nullopt;
}

Round MessageLog::last_round(Height h) const {
  Round out = 0;
  for (const TmMsg& m : msgs_) {
    if (m.h == h) out = std::max(out, m.round);
  }
  return out;
}

std::vector<TmMsg> tm_step(RoundState& state, Step step, const MessageLog& view,
                           const StepContext& ctx) {
  const Height h = state.height;
  const Round round = state.round;
  TmMsg out;
  out.h = h;
  out.round = round;
  out.sender = ctx.self;

  switch (step) {
    case Step::Propose: {
      if (ctx.self != ctx.leader) return {};
      out.kind = MsgKind::Proposal;
      out.vr = state.valid_round;
      out.value = state.valid_round > -1 ? state.valid_value : Value(ctx.fresh_block);
      break;
    }
    case Step::Prevote: {
      out.kind = MsgKind::Prevote;
      if (const TmMsg* p = view.proposal(h, round); p && p->sender == ctx.leader && p->value) {
        const bool unlocked = state.locked_round == -1;
        const bool same_lock = state.locked_value == p->value;
        const bool newer_proof =
            p->vr > -1 && p->vr < round && p->vr >= state.locked_round &&
            static_cast<std::int64_t>(view.count(MsgKind::Prevote, h, p->vr, p->value)) >=
                ctx.params.quorum();
        if (unlocked || same_lock || newer_proof) out.value = p->value;
      }
      break;
    }
    case Step::Precommit: {
      out.kind = MsgKind::Precommit;
      const auto q = view.quorum_value(MsgKind::Prevote, h, round, ctx.params);
      if (q && q->has_value()) {
        out.value = *q;
        state.locked_value = *q;
        state.locked_round = round;
        state.valid_value = *q;
        state.valid_round = round;
      }
      break;
    }
  }
  if (const TmMsg* old = view.find(out.kind, ctx.self, h, round); old && !(*old == out)) {
    throw SlashableAttempt("conflicting " + describe(out));
  }
  return {out};
}

Value finalized_value(const MessageLog& view, Height h, Round round, const TmParams& params) {
  const auto q = view.quorum_value(MsgKind::Precommit, h, round, params);
  return q ? *q : Value{};
}

bool prevote_evidence_valid(const TmEvidence& ev, const MessageLog& signer_view,
                            const TmParams& params) {
  const TmMsg& a = ev.attested;
  if (ev.kind != EvidenceKind::Prevote || a.kind != MsgKind::Prevote) return false;
  if (ev.at_height != a.h || ev.at_round != a.round) return false;
  if (!signer_view.find(MsgKind::Precommit, ev.signer, a.h, a.round)) return false;
  const TmMsg* own = signer_view.find(MsgKind::Prevote, ev.signer, a.h, a.round);
  if (!own) return false;
  if (own->value == a.value) return true;

  // A nil prevote backed by a lock on some other block from a round no
  // older than the proposal's valid round.
  if (a.value || !own->value) return false;
  const TmMsg* p = signer_view.proposal(a.h, a.round);
  const Round vr = p ? p->vr : -1;
  for (const TmMsg& j : ev.justification) {
    if (j.kind != MsgKind::Prevote || j.h != a.h || j.round < vr || j.round >= a.round) continue;
    if (!j.value || j.value == own->value) continue;
    if (static_cast<std::int64_t>(justified_prevotes(ev.justification, j.h, j.round, j.value)) >=
        params.quorum()) {
      return true;
    }
  }
  return false;
}

bool precommit_evidence_valid(const TmEvidence& ev, const MessageLog& signer_view,
                              const TmParams& params) {
  const TmMsg& a = ev.attested;
  if (ev.kind != EvidenceKind::Precommit || a.kind != MsgKind::Precommit) return false;
  if (ev.at_round > 1) {
    if (a.h != ev.at_height || a.round != ev.at_round - 1) return false;
  } else {
    if (a.h != ev.at_height - 1 || a.round != signer_view.last_round(a.h)) return false;
  }
  if (!signer_view.find(MsgKind::Prevote, ev.signer, ev.at_height, ev.at_round)) return false;
  if (const TmMsg* own = signer_view.find(MsgKind::Precommit, ev.signer, a.h, a.round);
      own && own->value == a.value) {
    return true;
  }
  return static_cast<std::int64_t>(justified_prevotes(ev.justification, a.h, a.round, a.value)) >=
         params.quorum();
}

bool vote_correct(const TmMsg& vote, Height block_h, Round block_round) {
  return earlier(vote.h, vote.round, block_h, block_round);
}

std::size_t unique_evidence_count(const TmMsg& vote, std::span<const TmEvidence> evidences) {
  const EvidenceKind want =
      vote.kind == MsgKind::Precommit ? EvidenceKind::Precommit : EvidenceKind::Prevote;
  std::set<ValidatorId> signers;
  for (const TmEvidence& ev : evidences) {
    if (ev.kind == want && ev.attested == vote) signers.insert(ev.signer);
  }
  return signers.size();
}

bool tm_vote_reward(const TmMsg& vote, Height block_h, Round block_round,
                    std::size_t unique_evidences, const TmParams& params) {
  if (vote.kind == MsgKind::Proposal) return false;
  return vote_correct(vote, block_h, block_round) &&
         static_cast<std::int64_t>(unique_evidences) >= params.quorum();
}

}  // namespace lmdlab::tm
