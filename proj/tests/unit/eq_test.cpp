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

#include <map>
#include <random>

#include "lmdlab/eq/search.hpp"

using namespace lmdlab;
using namespace lmdlab::eq;

namespace {

// Normal-form game from a payoff table keyed by profile.
class TableGame : public Game {
 public:
  TableGame(std::vector<std::size_t> menu_sizes, std::map<Profile, std::vector<Payoff>> table)
      : table_(std::move(table)) {
    for (std::size_t i = 0; i < menu_sizes.size(); ++i) {
      PlayerSpec p;
      p.name = "p" + std::to_string(i);
      p.owner = i;
      p.decision_tick = static_cast<Tick>(i);
      for (std::size_t a = 0; a < menu_sizes[i]; ++a) p.actions.push_back("a" + std::to_string(a));
      players_.push_back(std::move(p));
    }
  }
  const std::vector<PlayerSpec>& players() const override { return players_; }
  std::size_t owner_count() const override { return players_.size(); }
  std::vector<Payoff> play(const Profile& profile) const override { return table_.at(profile); }

 private:
  std::vector<PlayerSpec> players_;
  std::map<Profile, std::vector<Payoff>> table_;
};

TableGame prisoners() {
  // a0 = cooperate, a1 = defect.
  return TableGame({2, 2}, {{{0, 0}, {Payoff(3), Payoff(3)}},
                            {{0, 1}, {Payoff(0), Payoff(5)}},
                            {{1, 0}, {Payoff(5), Payoff(0)}},
                            {{1, 1}, {Payoff(1), Payoff(1)}}});
}

TableGame stag_hunt() {
  return TableGame({2, 2}, {{{0, 0}, {Payoff(4), Payoff(4)}},
                            {{0, 1}, {Payoff(0), Payoff(2)}},
                            {{1, 0}, {Payoff(2), Payoff(0)}},
                            {{1, 1}, {Payoff(2), Payoff(2)}}});
}

std::vector<Profile> all_profiles(const std::vector<std::size_t>& sizes) {
  std::vector<Profile> out{{}};
  for (std::size_t s : sizes) {
    std::vector<Profile> next;
    for (const auto& p : out) {
      for (std::size_t a = 0; a < s; ++a) {
        auto q = p;
        q.push_back(a);
        next.push_back(std::move(q));
      }
    }
    out = std::move(next);
  }
  return out;
}

TableGame random_game(std::mt19937_64& rng, std::vector<std::size_t>& sizes) {
  sizes.clear();
  const std::size_t n = 2 + rng() % 2;
  for (std::size_t i = 0; i < n; ++i) sizes.push_back(2 + rng() % 2);
  std::map<Profile, std::vector<Payoff>> t;
  for (const auto& p : all_profiles(sizes)) {
    std::vector<Payoff> v;
    for (std::size_t i = 0; i < n; ++i) v.emplace_back(static_cast<std::int64_t>(rng() % 4));
    t[p] = v;
  }
  return TableGame(sizes, t);
}

}  // namespace

TEST_SUITE("eq") {

TEST_CASE("prisoner's dilemma") {
  const auto g = prisoners();
  CHECK(verify_nash(g, {1, 1}).verdict == Verdict::Nash);
  const auto coop = verify_nash(g, {0, 0});
  CHECK(coop.verdict == Verdict::NotEquilibrium);
  REQUIRE(coop.deviations.size() == 2);
  CHECK(coop.deviations[0].gains[0] == Payoff(2));

  const auto br = best_response(g, {0, 0}, 1);
  CHECK(br.argmax == std::vector<std::size_t>{1});
  CHECK(dominance_check(g, 0, 1, {0}, {{0, 0}, {0, 1}}) == Dominance::StrictlyDominant);
  CHECK(dominance_check(g, 0, 0, {1}, {{0, 0}, {0, 1}}) == Dominance::Neither);
}

TEST_CASE("coalitions break the risk-dominant equilibrium") {
  const auto g = stag_hunt();
  CHECK(verify_nash(g, {1, 1}).verdict == Verdict::Nash);
  SearchOptions o;
  o.max_coalition = 2;
  const auto r = verify_nash(g, {1, 1}, o);
  CHECK(r.verdict == Verdict::NotEquilibrium);
  REQUIRE(r.deviations.size() == 1);
  CHECK(r.deviations[0].players == std::vector<std::size_t>{0, 1});
  CHECK(verify_nash(g, {0, 0}, o).verdict == Verdict::StrongNash);
}

TEST_CASE("weak dominance and ties") {
  const TableGame g({2, 2}, {{{0, 0}, {Payoff(1), Payoff(0)}},
                             {{0, 1}, {Payoff(1), Payoff(0)}},
                             {{1, 0}, {Payoff(0), Payoff(0)}},
                             {{1, 1}, {Payoff(1), Payoff(0)}}});
  CHECK(dominance_check(g, 0, 0, {1}, {{0, 0}, {0, 1}}) == Dominance::WeaklyDominant);
  const auto br = best_response(g, {0, 1}, 0);
  CHECK(br.argmax.size() == 2);
}

TEST_CASE("candidate subsets restrict the search") {
  const auto g = prisoners();
  SearchOptions o;
  o.candidates = {{0}, {0}};
  CHECK(verify_nash(g, {0, 0}, o).verdict == Verdict::Nash);
}

TEST_CASE("explosion guard") {
  const auto g = prisoners();
  SearchOptions o;
  o.max_joint_actions = 1;
  CHECK_THROWS_AS(verify_nash(g, {0, 0}, o), ExplosionGuard);
  CHECK_THROWS_AS(enumerate_opponents(g, {0, 0}, 0, {}, 1), ExplosionGuard);
  CHECK(enumerate_opponents(g, {0, 0}, 0, {}, 10).size() == 2);
  CHECK_THROWS(verify_nash(g, {0}));
}

TEST_CASE("verify_nash agrees with brute force on random games") {
  std::mt19937_64 rng(11);
  for (int iter = 0; iter < 300; ++iter) {
    std::vector<std::size_t> sizes;
    const auto g = random_game(rng, sizes);
    for (const auto& prof : all_profiles(sizes)) {
      const auto base = g.play(prof);
      bool nash = true;
      for (std::size_t i = 0; i < sizes.size(); ++i) {
        for (std::size_t a = 0; a < sizes[i]; ++a) {
          auto q = prof;
          q[i] = a;
          if (g.play(q)[i] > base[i]) nash = false;
        }
      }
      const auto rep = verify_nash(g, prof);
      CHECK((rep.verdict == Verdict::Nash) == nash);
      // Every reported deviation replays to a strict gain for all members.
      for (const auto& d : rep.deviations) {
        auto q = prof;
        for (std::size_t k = 0; k < d.players.size(); ++k) q[d.players[k]] = d.actions[k];
        const auto out = g.play(q);
        for (std::size_t k = 0; k < d.players.size(); ++k) {
          CHECK(out[d.players[k]] - base[d.players[k]] == d.gains[k]);
          CHECK(d.gains[k] > Payoff(0));
        }
      }
    }
  }
}

TEST_CASE("serial and parallel evaluation agree") {
  std::mt19937_64 rng(3);
  std::vector<std::size_t> sizes;
  const auto g = random_game(rng, sizes);
  const auto profiles = all_profiles(sizes);
  CHECK(evaluate_profiles(g, profiles, Execution::Serial) ==
        evaluate_profiles(g, profiles, Execution::Parallel));
  SearchOptions s, p;
  s.exec = Execution::Serial;
  s.max_coalition = p.max_coalition = 2;
  const auto a = verify_nash(g, profiles.front(), s);
  const auto b = verify_nash(g, profiles.front(), p);
  CHECK(a.verdict == b.verdict);
  CHECK(a.deviations.size() == b.deviations.size());
  CHECK(a.evaluations == b.evaluations);
}

TEST_CASE("spne checks decision points in reverse order") {
  const auto g = prisoners();
  const auto r = verify_spne(g, {0, 0});
  CHECK(r.verdict == Verdict::NotEquilibrium);
  REQUIRE(r.deviations.size() == 2);
  CHECK(r.deviations[0].players[0] == 1);
  CHECK(verify_spne(g, {1, 1}).verdict == Verdict::SPNE);
}

}  // TEST_SUITE
