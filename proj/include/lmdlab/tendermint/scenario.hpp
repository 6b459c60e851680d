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

#ifndef LMDLAB_TENDERMINT_SCENARIO_HPP_
#define LMDLAB_TENDERMINT_SCENARIO_HPP_

#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "lmdlab/eq/game.hpp"
#include "lmdlab/eq/search.hpp"
#include "lmdlab/reward/reward.hpp"
#include "lmdlab/tendermint/protocol.hpp"

namespace lmdlab::tm {

enum class TmRole : std::uint8_t { Honest, Rational, Adversarial };

// What a validator does in one round.
enum class TmAction : std::uint8_t {
  Follow,           // protocol rules, broadcast on time
  Withhold,         // nil votes kept inside the coalition until the release tick
  ReleaseOnTime,    // the same nil votes, broadcast on time
  PrevoteProposal,  // prevote the round's proposal, then precommit per protocol
  PrevoteNil,       // nil prevote without a lock proof, then precommit per protocol
  Abstain,          // send nothing
};
const char* to_string(TmAction a);
TmAction tm_action_from_string(std::string_view s);

struct TmSetup {
  TmParams params;
  std::vector<TmRole> roles;  // size n
  // Members see each other's messages and evidences from creation on.
  std::vector<bool> coalition;
  Height first_height = 1;
  Height heights = 3;
  Round max_rounds = 8;
  std::function<ValidatorId(Height, Round)> leader;
  // Follow when empty.
  std::function<TmAction(ValidatorId, Height, Round)> policy;
  Tick withhold_release = kNeverReleased;

  TmAction action(ValidatorId v, Height h, Round round) const;
};

struct TmBlock {
  BlockId id;
  ValidatorId proposer;
  Height h = 0;
  Round round = 0;
  std::vector<TmMsg> votes;
  std::vector<TmEvidence> evidences;
};

struct TmFinalized {
  Height h = 0;
  Round round = 0;
  BlockId block;
};

struct TmSent {
  TmMsg msg;
  Tick created = 0;
  Tick release = 0;
};

struct TmSentEvidence {
  TmEvidence ev;
  Tick created = 0;
  Tick release = 0;
};

struct TmTrace {
  std::vector<TmSent> messages;
  std::vector<TmSentEvidence> evidences;
  std::vector<TmBlock> blocks;  // indexed by BlockId value
  std::vector<TmFinalized> finalized;
  std::set<TmMsg> rewarded;
  bool state_invariants_held = true;
  bool conflicting_finalization = false;

  std::optional<TmFinalized> finalized_at(Height h) const;
  bool rewarded_bundle(ValidatorId v, Height h, Round round) const;
};

// Round-by-round simulation. Each round has a propose, prevote and precommit
// tick; a message is visible from the tick after its release. Leaders include
// every not yet finalized vote that already carries a quorum of evidences,
// so a vote whose evidences arrive late rides in a later block.
TmTrace run_tendermint(const TmSetup& setup);

// r_unit for every round in [first, last] of height `h` where both of the
// validator's votes were rewarded.
reward::Amount round_payoff(const TmTrace& trace, ValidatorId v, Height h, Round first,
                            Round last, const reward::Amount& r_unit);

// The first `honest` validators (min(m, f) by default) are honest and lead
// rounds 1..m in turn; the next f are adversarial; the rest are rational.
// Every non-honest validator belongs to the withholding coalition.
class WithholdingGame : public eq::Game {
 public:
  WithholdingGame(std::int64_t f, std::int64_t m, reward::Amount r_unit,
                  std::optional<std::int64_t> honest = std::nullopt);

  const std::vector<eq::PlayerSpec>& players() const override { return players_; }
  std::size_t owner_count() const override { return owners_.size(); }
  std::string owner_name(std::size_t owner) const override;
  std::vector<eq::Payoff> play(const eq::Profile& profile) const override;

  TmSetup setup(const eq::Profile& profile) const;
  const std::vector<ValidatorId>& owners() const { return owners_; }
  eq::Profile withholding_profile() const { return uniform_profile("withhold"); }

 private:
  std::int64_t f_, m_, honest_;
  reward::Amount r_unit_;
  std::vector<TmRole> roles_;
  std::vector<ValidatorId> owners_;  // non-honest validators
  std::vector<eq::PlayerSpec> players_;
  std::vector<std::pair<ValidatorId, Round>> seats_;  // per player
};

struct WithholdingResult {
  Round stalled_rounds = 0;
  Round finalized_round = 0;
  reward::Amount payoff_per_non_honest{0};
  std::vector<reward::Amount> payoffs;  // per owner
  eq::EquilibriumReport report;
  TmTrace trace;
};

// Throws games::GameConfigError unless f >= 1, m >= 0 and the honest count
// lies in [1, f] (or is 0 when m is 0).
WithholdingResult withholding_attack_scenario(std::int64_t f, std::int64_t m,
                                              const reward::Amount& r_unit,
                                              eq::Execution exec = eq::Execution::Parallel,
                                              std::optional<std::int64_t> honest = std::nullopt);

// Validators 0..f are honest, the next f adversarial, the last f rational.
// Honest validators lead in turn. The adversary withholds its nil votes for
// good. Rational validators choose their round-1 action; payoffs count
// round 1 only.
class AnchorGame : public eq::Game {
 public:
  AnchorGame(std::int64_t f, std::int64_t honest, reward::Amount r_unit);

  const std::vector<eq::PlayerSpec>& players() const override { return players_; }
  std::size_t owner_count() const override { return players_.size(); }
  std::string owner_name(std::size_t owner) const override { return players_[owner].name; }
  std::vector<eq::Payoff> play(const eq::Profile& profile) const override;

  TmSetup setup(const eq::Profile& profile) const;
  ValidatorId rational(std::size_t player) const { return rational_[player]; }
  const std::vector<TmRole>& roles() const { return roles_; }

 private:
  std::int64_t f_;
  reward::Amount r_unit_;
  std::vector<TmRole> roles_;
  std::vector<ValidatorId> rational_;
  std::vector<eq::PlayerSpec> players_;
};

struct AnchorResult {
  Round first_finalized_round = 0;
  bool honest_block_finalized = false;
  bool reorg_resilient = false;
  std::vector<eq::BestResponse> responses;  // per rational validator
  // Every departure from prevoting the proposal loses the round reward.
  bool deviations_forfeit = false;
  // Honest evidences for a scripted nil prevote without a lock proof.
  std::size_t nil_prevote_honest_evidences = 0;
  bool nil_prevote_rewarded = false;
  TmTrace trace;
};

// Throws games::AssumptionViolated when f < 1 or honest < f + 1.
AnchorResult honest_anchor_scenario(std::int64_t f, std::int64_t honest,
                                    const reward::Amount& r_unit = reward::Amount(1),
                                    eq::Execution exec = eq::Execution::Parallel);
inline AnchorResult honest_anchor_scenario(std::int64_t f) {
  return honest_anchor_scenario(f, f + 1);
}

}  // namespace lmdlab::tm

#endif  // LMDLAB_TENDERMINT_SCENARIO_HPP_
