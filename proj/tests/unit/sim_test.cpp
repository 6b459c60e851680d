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

#include <doctest.h>

#include <algorithm>
#include <set>

#include "lmdlab/sim/clock.hpp"
#include "lmdlab/sim/committee.hpp"
#include "lmdlab/sim/engine.hpp"

using namespace lmdlab;
using namespace lmdlab::sim;

namespace {

std::vector<Validator> roster(std::uint32_t n) {
  std::vector<Validator> r(n);
  for (std::uint32_t i = 0; i < n; ++i) r[i].id = ValidatorId{i};
  return r;
}

// Slot leaders propose on the tip at 3s; validator 1 votes at 3s+1.
class Steady : public Policy {
 public:
  void on_tick(Tick t, World& w) override {
    const BlockTree v = w.view(t);
    const BlockId tip = fork_choice(v, view_params(v, t, 0, TieBreakPolicy::Lexicographic));
    if (phase_of(t) == Phase::Propose) {
      ProposeArgs a;
      a.slot = slot_of(t);
      a.parent = tip;
      a.proposer = ValidatorId{0};
      a.created = t;
      a.release = t;
      w.propose(a);
    } else if (phase_of(t) == Phase::Vote) {
      w.vote({slot_of(t), ValidatorId{1}, tip, 0}, t, t);
    }
  }
};

}  // namespace

TEST_SUITE("sim") {

TEST_CASE("clock phases") {
  CHECK(slot_of(0) == 0);
  CHECK(slot_of(5) == 1);
  CHECK(slot_of(-1) == -1);
  CHECK(slot_of(-3) == -1);
  CHECK(slot_of(-4) == -2);
  CHECK(phase_of(-1) == Phase::Aggregate);
  CHECK(phase_of(7) == Phase::Vote);
  for (Slot s = -4; s < 5; ++s) {
    CHECK(slot_of(propose_tick(s)) == s);
    CHECK(phase_of(aggregate_tick(s)) == Phase::Aggregate);
  }
}

TEST_CASE("seeded committees are disjoint and reproducible") {
  ScheduleOptions o;
  o.seed = 42;
  o.n_validators = 200;
  o.committee_size = 5;
  o.epoch_length = 32;
  o.adversarial_slots = {3};
  const auto a = assign_committees(o);
  const auto b = assign_committees(o);
  std::set<std::uint32_t> seen;
  for (Slot s = 0; s < 32; ++s) {
    CHECK(a.duty(s).attestors == b.duty(s).attestors);
    const auto& at = a.duty(s).attestors;
    CHECK(std::find(at.begin(), at.end(), a.duty(s).leader) != at.end());
    for (ValidatorId v : at) CHECK(seen.insert(v.index).second);
  }
  CHECK(a.validators[a.duty(3).leader.index].kind == ValidatorKind::Adversarial);
  CHECK(a.validators[a.duty(4).leader.index].kind == ValidatorKind::Rational);

  o.seed = 43;
  CHECK(assign_committees(o).duty(0).attestors != a.duty(0).attestors);
  auto perm = seeded_permutation(7, 50);
  std::sort(perm.begin(), perm.end());
  for (std::uint32_t i = 0; i < 50; ++i) CHECK(perm[i] == i);
}

TEST_CASE("committee errors") {
  ScheduleOptions o;
  o.n_validators = 10;
  o.committee_size = 5;
  o.epoch_length = 32;
  CHECK_THROWS_AS(assign_committees(o), ScheduleError);
  o.fixed_attestors = true;
  const auto s = assign_committees(o);
  CHECK(s.duty(31).attestors == s.duty(0).attestors);
  CHECK_THROWS_AS(s.duty(32), ScheduleError);
  o.adversarial_slots = {40};
  CHECK_THROWS_AS(assign_committees(o), ScheduleError);
}

TEST_CASE("messages become visible one tick after release") {
  World w(-1, roster(4));
  ProposeArgs a;
  a.slot = 0;
  a.proposer = ValidatorId{0};
  a.created = 0;
  a.release = 3;
  const BlockId b = w.propose(a);
  CHECK_FALSE(w.view(3).contains(b));
  CHECK(w.view(4).contains(b));

  w.vote({0, ValidatorId{1}, b, 0}, 1, 5);
  CHECK(w.visible_votes(5).empty());
  CHECK(w.visible_votes(6).size() == 1);
  // A vote carried in a visible block is visible through the block.
  ProposeArgs c;
  c.slot = 1;
  c.parent = b;
  c.proposer = ValidatorId{2};
  c.votes = {{0, ValidatorId{3}, b, 4}};
  c.created = 4;
  c.release = 4;
  w.propose(c);
  CHECK(w.view(5).votes().size() == 1);
}

TEST_CASE("world refuses honest equivocation and counts adversarial ones") {
  auto r = roster(3);
  r[2].kind = ValidatorKind::Adversarial;
  World w(-1, r);
  ProposeArgs a;
  a.slot = 0;
  a.proposer = ValidatorId{0};
  const BlockId b0 = w.propose(a);
  a.proposer = ValidatorId{2};
  const BlockId b1 = w.propose(a);
  w.vote({0, ValidatorId{1}, b0, 0}, 1, 1);
  CHECK_THROWS_AS(w.vote({0, ValidatorId{1}, b1, 0}, 1, 1), SimError);
  w.vote({0, ValidatorId{2}, b0, 0}, 1, 1);
  w.vote({0, ValidatorId{2}, b1, 0}, 1, 1);
  CHECK(w.adversarial_equivocations() == 1);
  ProposeArgs future;
  future.slot = 5;
  future.parent = b0;
  future.proposer = ValidatorId{0};
  CHECK_THROWS_AS(w.propose(future), SimError);
}

TEST_CASE("run loop records tips and a stable chain") {
  Steady p;
  RunConfig rc;
  rc.start_tick = 0;
  rc.end_tick = 8;
  rc.realization_tick = 8;
  const RunTrace tr = run(rc, World(-1, roster(2)), p);
  CHECK(tr.final_chain.size() == 4);
  CHECK(tr.reorged.empty());
  CHECK(tr.tips.size() == 9);
  const auto lines = tr.jsonl();
  CHECK(lines.back().find("\"summary\"") != std::string::npos);
  CHECK(lines == run(rc, World(-1, roster(2)), p).jsonl());
  rc.end_tick = -1;
  CHECK_THROWS_AS(run(rc, World(-1, roster(2)), p), SimError);
}

}  // TEST_SUITE
