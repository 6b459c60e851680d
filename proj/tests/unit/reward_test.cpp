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

#include <cmath>
#include <random>

#include "lmdlab/reward/quantify.hpp"
#include "lmdlab/reward/reward.hpp"
#include "oracles.hpp"
#include "properties.hpp"

using namespace lmdlab;
using namespace lmdlab::reward;

namespace {

VoteRecord vote(Slot s, std::uint32_t voter, std::uint64_t target) {
  return {s, ValidatorId{voter}, BlockId{target}, 0};
}

// Chain 0 <- 1 (slot 1) <- 2 (slot 2) <- 3 (slot 3) with block k proposed by
// validator 100 + k.
BlockTree chain_with(std::vector<VoteRecord> in2, std::vector<VoteRecord> in3,
                     std::vector<EvidenceRecord> ev3 = {}) {
  BlockTree t = BlockTree::with_genesis(0);
  for (std::uint64_t k = 1; k <= 3; ++k) {
    Block b;
    b.id = BlockId{k};
    b.slot = static_cast<Slot>(k);
    b.parent = BlockId{k - 1};
    b.proposer = ValidatorId{static_cast<std::uint32_t>(100 + k)};
    if (k == 2) b.included_votes = in2;
    if (k == 3) {
      b.included_votes = in3;
      b.included_evidences = ev3;
    }
    t.insert(std::move(b));
  }
  return t;
}

const std::vector<BlockId> kChain{{0}, {1}, {2}, {3}};

}  // namespace

TEST_SUITE("reward") {

TEST_CASE("correct and timely head votes earn r and R") {
  RewardParams p;
  p.r = Amount(3);
  p.R = Amount(1, 2);
  // Voter 1 is correct and timely, 2 voted the genesis in slot 1 (wrong),
  // 3 is correct but included one slot late.
  const BlockTree t = chain_with({vote(1, 1, 1), vote(1, 2, 0)}, {vote(1, 3, 1)});
  const auto l = settle_chain(t, kChain, p);
  CHECK(l.of(ValidatorId{1}) == Amount(3));
  CHECK(l.of(ValidatorId{2}) == Amount(0));
  CHECK(l.of(ValidatorId{3}) == Amount(0));
  CHECK(l.of(ValidatorId{102}) == Amount(1, 2));
  CHECK(l.of(ValidatorId{1}, 1, Channel::Attestation) == Amount(3));
  CHECK(l.of(ValidatorId{102}, 2, Channel::Inclusion) == Amount(1, 2));
  CHECK(l.credited_votes() == 1);
  // Conservation: attestor total r * n, leader total R * n.
  CHECK(l.attestor_total() == p.r * Amount(l.credited_votes()));
  CHECK(l.leader_total() == p.R * Amount(l.credited_votes()));
  CHECK(l.total() == l.attestor_total() + l.leader_total());
}

TEST_CASE("a vote is credited once even if included twice") {
  const BlockTree t = chain_with({vote(1, 1, 1)}, {vote(1, 1, 1), vote(2, 4, 2)});
  const auto l = settle_chain(t, kChain, RewardParams{});
  CHECK(l.of(ValidatorId{1}) == Amount(1));
  CHECK(l.of(ValidatorId{4}) == Amount(1));
  CHECK(l.credited_votes() == 2);
}

TEST_CASE("per-canonical-block leader reward") {
  RewardParams p;
  p.leader_reward = LeaderReward::PerCanonicalBlock;
  p.R = Amount(5);
  const BlockTree t = chain_with({}, {});
  const auto l = settle_chain(t, kChain, p);
  CHECK(l.leader_total() == Amount(15));
  CHECK(l.of(ValidatorId{101}) == Amount(5));
}

TEST_CASE("head vote correctness and queries") {
  const BlockTree t = chain_with({}, {});
  CHECK(head_vote_correct(vote(2, 0, 2), kChain, t));
  CHECK(head_vote_correct(vote(7, 0, 3), kChain, t));
  CHECK_FALSE(head_vote_correct(vote(2, 0, 1), kChain, t));
  CHECK_THROWS_AS(head_vote_correct(vote(2, 0, 9), kChain, t), ChainError);
}

TEST_CASE("DAG timeliness threshold is strict") {
  // W = 4: two evidences are not enough, three are.
  const VoteRecord v = vote(1, 1, 1);
  auto ev = [&](std::uint32_t signer) { return EvidenceRecord{ValidatorId{signer}, v, 5}; };
  const BlockTree two = chain_with({}, {v}, {ev(10), ev(11), ev(11)});
  CHECK(unique_evidence_signers(v, kChain, two) == 2);
  CHECK_FALSE(head_vote_timely_dag(v, kChain, two, 4));
  const BlockTree three = chain_with({}, {v}, {ev(10), ev(11), ev(12)});
  CHECK(head_vote_timely_dag(v, kChain, three, 4));
  // Inclusion in the next slot's block is timely without evidence.
  const BlockTree direct = chain_with({v}, {});
  CHECK(head_vote_timely_dag(v, kChain, direct, 4));

  RewardParams p;
  p.mechanism = Mechanism::DagVotes;
  p.committee_size = 4;
  CHECK(settle_chain(three, kChain, p).of(ValidatorId{1}) == Amount(1));
  CHECK(settle_chain(two, kChain, p).of(ValidatorId{1}) == Amount(0));
  // Under the Ethereum rule the late vote earns nothing whatever the evidence.
  CHECK(settle_chain(three, kChain, RewardParams{}).of(ValidatorId{1}) == Amount(0));
}

TEST_CASE("unique signers match a brute-force count") {
  std::mt19937_64 rng(5);
  for (int iter = 0; iter < 3000; ++iter) {
    std::vector<VoteRecord> pool{vote(1, 1, 1), vote(1, 2, 1), vote(1, 1, 0)};
    std::vector<EvidenceRecord> ev;
    const int n = static_cast<int>(rng() % 10);
    for (int i = 0; i < n; ++i) {
      ev.push_back({ValidatorId{static_cast<std::uint32_t>(rng() % 6)}, pool[rng() % 3], 5});
    }
    const BlockTree t = chain_with({}, {}, ev);
    for (const auto& v : pool) {
      CHECK(unique_evidence_signers(v, kChain, t) == oracle::unique_signers(v, kChain, t));
    }
  }
}

TEST_CASE("adding evidence never makes a timely vote untimely") {
  std::uint64_t gained = 0;
  const auto r = oracle::dag_timeliness_monotone(10'000, 2026, &gained);
  CHECK_MESSAGE(r.ok(), r.first_failure);
  CHECK(r.cases == 10'000);
  CHECK(gained > 0);
}

TEST_CASE("inclusion reward for 1,073,375 validators") {
  const auto inc = altair_block_inclusion_reward(1'073'375, 32 * kGweiPerEth);
  // Independent evaluation in floating point.
  const double total = 1'073'375.0 * 32e9;
  const double brpi = std::floor(1e9 * 64 / std::floor(std::sqrt(total)));
  const double per_attestor = 32 * brpi * 1'073'375.0 / 32;
  const double all_three = per_attestor * 54.0 / 64 * 8.0 / 56 / 1e9;
  CHECK(to_eth(inc.all_three_votes) == doctest::Approx(all_three).epsilon(1e-12));
  CHECK(std::abs(to_eth(inc.all_three_votes) / 0.0446 - 1) < 0.01);
  CHECK(std::abs(to_eth(inc.all_three_votes + inc.source_target_only) / 0.0777 - 1) < 0.01);
  CHECK(std::abs(to_eth(inc.head_only) / 0.0115 - 1) < 0.02);
  CHECK(inc.head_only / inc.all_three_votes == Amount(14, 54));
  CHECK((inc.all_three_votes + inc.source_target_only) / inc.all_three_votes == Amount(94, 54));
  CHECK_THROWS_AS(altair_block_inclusion_reward(0, 1), ZeroStake);
  CHECK(isqrt(99) == 9);
  CHECK(isqrt(100) == 10);
  CHECK(isqrt(std::uint64_t{1} << 62) == std::uint64_t{1} << 31);
}

TEST_CASE("attack gain summary") {
  const auto inc = altair_block_inclusion_reward(1'073'375, 32 * kGweiPerEth);
  const auto g = attack_gain_summary(inc, Amount(82, 1000), Amount(12, 100), Amount(278, 1000));
  CHECK(std::abs(to_eth(g.delta) / 0.0711 - 1) < 0.02);
  CHECK(std::abs(to_eth(g.pool_head_loss) / 0.0225 - 1) < 0.02);
  CHECK(std::abs(to_eth(g.pool_net) / 0.0486 - 1) < 0.02);
  CHECK(g.pool_net == g.delta - g.pool_head_loss);
  const auto free = attack_gain_summary(inc, Amount(0), Amount(0), Amount(0));
  CHECK(free.delta == inc.source_target_only);
  CHECK(quantification_rows(inc, g).size() == 10);
}

}  // TEST_SUITE
