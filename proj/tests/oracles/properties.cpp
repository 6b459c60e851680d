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

#include "properties.hpp"

#include <map>
#include <random>
#include <set>
#include <sstream>
#include <tuple>
#include <vector>

#include "lmdlab/chain/fork_choice.hpp"
#include "lmdlab/cli/runner.hpp"
#include "lmdlab/games/game.hpp"
#include "lmdlab/reward/reward.hpp"
#include "lmdlab/tendermint/scenario.hpp"
#include "oracles.hpp"

namespace lmdlab::oracle {

namespace {

VoteRecord vote(Slot s, std::uint32_t voter, std::uint64_t target) {
  return {s, ValidatorId{voter}, BlockId{target}, 0};
}

// Multisets of `k` targets drawn from `n` blocks, as non-decreasing vectors.
void multisets(std::size_t n, std::size_t k, std::vector<std::size_t>& cur,
               std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  const std::size_t from = cur.empty() ? 0 : cur.back();
  for (std::size_t t = from; t < n; ++t) {
    cur.push_back(t);
    multisets(n, k, cur, out);
    cur.pop_back();
  }
}

// Chain 0 <- 1 <- 2 <- 3 with block k at slot k; block 3 carries `ev`.
BlockTree chain_with(const std::vector<VoteRecord>& in2, const std::vector<VoteRecord>& in3,
                     const std::vector<EvidenceRecord>& ev3) {
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

std::vector<eq::Profile> sample_profiles(const eq::Game& g, std::size_t count,
                                         std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<eq::Profile> out;
  for (std::size_t k = 0; k < count; ++k) {
    eq::Profile p;
    for (const auto& pl : g.players()) {
      p.push_back(std::uniform_int_distribution<std::size_t>(0, pl.actions.size() - 1)(rng));
    }
    out.push_back(std::move(p));
  }
  return out;
}

std::size_t tm_honest_conflicts(const tm::TmSetup& s, const tm::TmTrace& tr) {
  std::map<std::tuple<int, std::uint32_t, tm::Height, tm::Round>, std::set<tm::Value>> seen;
  for (const auto& m : tr.messages) {
    seen[{static_cast<int>(m.msg.kind), m.msg.sender.index, m.msg.h, m.msg.round}].insert(
        m.msg.value);
  }
  std::size_t bad = 0;
  for (const auto& [key, values] : seen) {
    if (values.size() > 1 && s.roles[std::get<1>(key)] != tm::TmRole::Adversarial) ++bad;
  }
  return bad;
}

}  // namespace

PropertyResult fork_choice_exhaustive() {
  PropertyResult r;
  for (std::size_t n = 1; n <= 6; ++n) {
    const auto shapes = all_parent_vectors(n);
    std::vector<std::vector<std::size_t>> votes;
    for (std::size_t k = 0; k <= 6; ++k) {
      std::vector<std::size_t> cur;
      multisets(n, k, cur, votes);
    }
    for (std::size_t si = 0; si < shapes.size(); ++si) {
      for (std::size_t vi = 0; vi < votes.size(); ++vi) {
        std::vector<bool> adv(n);
        for (std::size_t b = 1; b < n; ++b) adv[b] = ((si + vi) >> b) & 1;
        BlockTree t = build_tree(shapes[si], adv);
        for (std::size_t i = 0; i < votes[vi].size(); ++i) {
          t.add_vote(vote(10, static_cast<std::uint32_t>(i), votes[vi][i]));
        }
        for (auto tb : {TieBreakPolicy::AdversaryFavoring, TieBreakPolicy::Lexicographic}) {
          ForkChoiceParams p;
          p.tie_break = tb;
          p.current_slot = static_cast<Slot>(vi % n);
          p.boosted = BlockId{vi % n};
          p.boost = static_cast<std::int64_t>(si % 3);
          const auto fast = lmdlab::fork_choice(t, p);
          const auto slow = oracle::fork_choice(t, p);
          ++r.cases;
          if (fast != slow) {
            std::ostringstream os;
            os << "n=" << n << " shape=" << si << " votes=" << vi << " got=" << fast.value
               << " oracle=" << slow.value;
            r.fail(os.str());
          }
        }
      }
    }
  }
  return r;
}

PropertyResult dag_timeliness_monotone(std::uint64_t cases, std::uint64_t seed,
                                       std::uint64_t* newly_timely) {
  const std::vector<BlockId> chain{{0}, {1}, {2}, {3}};
  std::mt19937_64 rng(seed);
  PropertyResult r;
  std::uint64_t gained = 0;
  for (std::uint64_t iter = 0; iter < cases; ++iter) {
    const VoteRecord v = vote(1, 1, 1);
    const std::int64_t W = 1 + static_cast<std::int64_t>(rng() % 8);
    std::vector<EvidenceRecord> base;
    const int n = static_cast<int>(rng() % 8);
    for (int i = 0; i < n; ++i) {
      base.push_back({ValidatorId{static_cast<std::uint32_t>(rng() % 8)}, v, 5});
    }
    std::vector<EvidenceRecord> more = base;
    const int extra = 1 + static_cast<int>(rng() % 4);
    for (int i = 0; i < extra; ++i) {
      const auto at = more.begin() + static_cast<std::ptrdiff_t>(rng() % (more.size() + 1));
      more.insert(at, {ValidatorId{static_cast<std::uint32_t>(rng() % 8)}, v, 5});
    }
    const std::vector<VoteRecord> in2 =
        rng() % 4 == 0 ? std::vector<VoteRecord>{v} : std::vector<VoteRecord>{};
    const bool before = reward::head_vote_timely_dag(v, chain, chain_with(in2, {v}, base), W);
    const bool after = reward::head_vote_timely_dag(v, chain, chain_with(in2, {v}, more), W);
    ++r.cases;
    if (before && !after) r.fail("case " + std::to_string(iter) + " lost timeliness");
    if (!before && after) ++gained;
  }
  if (newly_timely) *newly_timely = gained;
  return r;
}

PropertyResult bundled_determinism(int runs) {
  PropertyResult r;
  for (const auto& f : bundled_scenarios()) {
    const cli::Scenario s = cli::load_scenario(f);
    const auto first = cli::run_scenario(s);
    const std::string text = cli::render(first, cli::Format::Json);
    for (int rep = 1; rep < runs; ++rep) {
      const auto again = cli::run_scenario(cli::load_scenario(f));
      ++r.cases;
      if (cli::render(again, cli::Format::Json) != text || again.trace != first.trace) {
        r.fail(s.id + " differs on run " + std::to_string(rep + 1));
      }
    }
  }
  return r;
}

PropertyResult bundled_no_honest_equivocation(std::size_t random_profiles) {
  PropertyResult r;
  for (const auto& f : bundled_scenarios()) {
    const cli::Scenario s = cli::load_scenario(f);
    switch (s.analysis) {
      case cli::Analysis::Game: {
        const auto g = games::make_game(s.game);
        auto profiles = sample_profiles(*g, random_profiles, 7);
        for (const auto& name : g->strategy_names()) profiles.push_back(g->strategy(name));
        for (const auto& p : profiles) {
          const auto out = g->simulate(p);
          ++r.cases;
          if (!out.trace || honest_equivocations(out.trace->world.full(), g->roster()) != 0) {
            r.fail(s.id + ": honest equivocation");
          }
        }
        break;
      }
      case cli::Analysis::TendermintWithholding: {
        const tm::WithholdingGame g(s.tendermint.f, s.tendermint.m, s.tendermint.r_unit,
                                    s.tendermint.honest);
        auto profiles = sample_profiles(g, random_profiles, 11);
        profiles.push_back(g.withholding_profile());
        for (const auto& p : profiles) {
          const auto setup = g.setup(p);
          ++r.cases;
          if (tm_honest_conflicts(setup, tm::run_tendermint(setup)) != 0) {
            r.fail(s.id + ": conflicting votes");
          }
        }
        break;
      }
      case cli::Analysis::TendermintAnchor: {
        const tm::AnchorGame g(s.tendermint.f, s.tendermint.honest.value_or(s.tendermint.f + 1),
                               s.tendermint.r_unit);
        auto profiles = sample_profiles(g, random_profiles, 13);
        profiles.push_back(g.uniform_profile("prevote-proposal"));
        for (const auto& p : profiles) {
          const auto setup = g.setup(p);
          ++r.cases;
          if (tm_honest_conflicts(setup, tm::run_tendermint(setup)) != 0) {
            r.fail(s.id + ": conflicting votes");
          }
        }
        break;
      }
      case cli::Analysis::Quantify:
      case cli::Analysis::Overhead:
        break;  // no agents
    }
  }
  return r;
}

}  // namespace lmdlab::oracle
