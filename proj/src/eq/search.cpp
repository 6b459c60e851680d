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

#include "lmdlab/eq/search.hpp"

#include <algorithm>
#include <exception>
#include <numeric>
#include <stdexcept>

namespace lmdlab::eq {
namespace {

constexpr std::size_t kBatch = 4096;

std::vector<std::size_t> menu(const Game& game, std::size_t player,
                              const std::vector<std::vector<std::size_t>>& candidates) {
  if (player < candidates.size() && !candidates[player].empty()) {
    return candidates[player];
  }
  std::vector<std::size_t> all(game.players()[player].actions.size());
  std::iota(all.begin(), all.end(), 0);
  return all;
}

// Saturating product used to size enumerations before running them.
std::uint64_t mul_sat(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > UINT64_MAX / a) return UINT64_MAX;
  return a * b;
}

void guard(std::uint64_t count, std::uint64_t limit, const std::string& what) {
  if (count > limit) {
    throw ExplosionGuard(what + " needs " + std::to_string(count) +
                         " joint actions, limit is " + std::to_string(limit));
  }
}

}  // namespace

std::vector<std::vector<Payoff>> evaluate_profiles(const Game& game,
                                                   const std::vector<Profile>& profiles,
                                                   Execution exec) {
  for (const Profile& p : profiles) game.check_profile(p);
  std::vector<std::vector<Payoff>> out(profiles.size());
  if (exec == Execution::Serial) {
    for (std::size_t i = 0; i < profiles.size(); ++i) out[i] = game.play(profiles[i]);
    return out;
  }
  const auto n = static_cast<std::int64_t>(profiles.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = game.play(profiles[static_cast<std::size_t>(i)]);
    } catch (...) {
#pragma omp critical(lmdlab_eq_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Nash: return "Nash";
    case Verdict::StrongNash: return "StrongNash";
    case Verdict::SPNE: return "SPNE";
    case Verdict::NotEquilibrium: return "NotEquilibrium";
  }
  return "?";
}

const char* to_string(Dominance d) {
  switch (d) {
    case Dominance::StrictlyDominant: return "StrictlyDominant";
    case Dominance::WeaklyDominant: return "WeaklyDominant";
    case Dominance::Neither: return "Neither";
  }
  return "?";
}

BestResponse best_response(const Game& game, const Profile& profile,
                           std::size_t player, std::vector<std::size_t> candidates,
                           Execution exec) {
  game.check_profile(profile);
  if (candidates.empty()) candidates = menu(game, player, {});
  std::vector<Profile> batch;
  for (std::size_t a : candidates) {
    Profile p = profile;
    p[player] = a;
    batch.push_back(std::move(p));
  }
  const auto results = evaluate_profiles(game, batch, exec);
  BestResponse br;
  br.candidates = candidates;
  for (const auto& r : results) br.payoffs.push_back(game.payoff_of(r, player));
  const Payoff best = *std::max_element(br.payoffs.begin(), br.payoffs.end());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (br.payoffs[i] == best) br.argmax.push_back(candidates[i]);
  }
  return br;
}

EquilibriumReport verify_nash(const Game& game, const Profile& profile,
                              const SearchOptions& opts) {
  game.check_profile(profile);
  const std::size_t n = game.players().size();
  EquilibriumReport report;

  std::vector<std::size_t> pool = opts.coalition_players;
  if (pool.empty()) {
    pool.resize(n);
    std::iota(pool.begin(), pool.end(), 0);
  }
  std::vector<std::vector<std::size_t>> alts(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t a : menu(game, i, opts.candidates)) {
      if (a != profile[i]) alts[i].push_back(a);
    }
  }

  // Enumerate coalitions (subsets of the pool, size 1 for every player plus
  // larger ones from the pool) and size the total work first.
  std::vector<std::vector<std::size_t>> coalitions;
  for (std::size_t i = 0; i < n; ++i) coalitions.push_back({i});
  const std::size_t kmax = std::min(opts.max_coalition, pool.size());
  for (std::size_t k = 2; k <= kmax; ++k) {
    std::vector<bool> pick(pool.size(), false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k), true);
    do {
      std::vector<std::size_t> c;
      for (std::size_t i = 0; i < pool.size(); ++i) {
        if (pick[i]) c.push_back(pool[i]);
      }
      coalitions.push_back(std::move(c));
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  std::uint64_t total = 1;
  for (const auto& c : coalitions) {
    std::uint64_t joint = 1;
    for (std::size_t p : c) joint = mul_sat(joint, alts[p].size());
    total = total == UINT64_MAX || joint == UINT64_MAX ? UINT64_MAX : total + joint;
  }
  guard(total, opts.max_joint_actions, "coalition search");

  const auto base = game.play(profile);
  report.evaluations = 1;

  struct Pending {
    std::size_t coalition;
    Profile profile;
  };
  std::vector<Pending> pending;
  auto flush = [&] {
    std::vector<Profile> batch;
    batch.reserve(pending.size());
    for (const auto& p : pending) batch.push_back(p.profile);
    const auto results = evaluate_profiles(game, batch, opts.exec);
    report.evaluations += results.size();
    for (std::size_t i = 0; i < results.size(); ++i) {
      const auto& members = coalitions[pending[i].coalition];
      Deviation d;
      bool all_gain = true;
      for (std::size_t p : members) {
        const Payoff g = game.payoff_of(results[i], p) - game.payoff_of(base, p);
        if (g <= Payoff(0)) all_gain = false;
        d.players.push_back(p);
        d.actions.push_back(pending[i].profile[p]);
        d.gains.push_back(g);
      }
      if (all_gain) {
        d.subgame = "root";
        report.deviations.push_back(std::move(d));
      }
    }
    pending.clear();
  };

  for (std::size_t ci = 0; ci < coalitions.size(); ++ci) {
    const auto& c = coalitions[ci];
    bool empty = false;
    for (std::size_t p : c) empty = empty || alts[p].empty();
    if (empty) continue;
    std::vector<std::size_t> digit(c.size(), 0);
    while (true) {
      Profile p = profile;
      for (std::size_t j = 0; j < c.size(); ++j) p[c[j]] = alts[c[j]][digit[j]];
      pending.push_back({ci, std::move(p)});
      if (pending.size() >= kBatch) flush();
      std::size_t j = 0;
      while (j < c.size() && ++digit[j] == alts[c[j]].size()) digit[j++] = 0;
      if (j == c.size()) break;
    }
  }
  flush();

  if (!report.deviations.empty()) {
    report.verdict = Verdict::NotEquilibrium;
  } else {
    report.verdict = kmax > 1 ? Verdict::StrongNash : Verdict::Nash;
  }
  return report;
}

EquilibriumReport verify_spne(const Game& game, const Profile& profile,
                              const SearchOptions& opts) {
  game.check_profile(profile);
  const auto& ps = game.players();
  const std::size_t n = ps.size();
  EquilibriumReport report;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return ps[a].decision_tick > ps[b].decision_tick;
  });

  std::uint64_t total = 0;
  for (std::size_t i = 0; i < n; ++i) total += menu(game, i, opts.candidates).size();
  guard(total, opts.max_joint_actions, "backward induction");

  const auto base = game.play(profile);
  report.evaluations = 1;
  for (std::size_t player : order) {
    std::vector<std::size_t> cands;
    for (std::size_t a : menu(game, player, opts.candidates)) {
      if (a != profile[player]) cands.push_back(a);
    }
    if (cands.empty()) continue;
    std::vector<Profile> batch;
    for (std::size_t a : cands) {
      Profile p = profile;
      p[player] = a;
      batch.push_back(std::move(p));
    }
    const auto results = evaluate_profiles(game, batch, opts.exec);
    report.evaluations += results.size();
    for (std::size_t i = 0; i < cands.size(); ++i) {
      const Payoff g = game.payoff_of(results[i], player) - game.payoff_of(base, player);
      if (g > Payoff(0)) {
        report.deviations.push_back(
            {{player}, {cands[i]}, {g},
             "on-path decision of " + ps[player].name + " at tick " +
                 std::to_string(ps[player].decision_tick)});
      }
    }
  }

  // C/NC tables. Rows condition the rest of the player's group.
  for (std::size_t player : order) {
    const PlayerSpec& me = ps[player];
    if (!me.table_c || !me.table_nc) continue;
    std::vector<std::size_t> peers;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != player && !me.group.empty() && ps[j].group == me.group &&
          ps[j].table_c && ps[j].table_nc) {
        peers.push_back(j);
      }
    }
    SubgameTable table;
    table.player = player;
    table.cols = {"C", "NC"};
    std::vector<Profile> batch;
    auto add_row = [&](const std::string& label, bool peers_comply) {
      table.rows.push_back(label);
      for (bool self_c : {true, false}) {
        Profile p = profile;
        for (std::size_t j : peers) p[j] = peers_comply ? *ps[j].table_c : *ps[j].table_nc;
        p[player] = self_c ? *me.table_c : *me.table_nc;
        batch.push_back(std::move(p));
      }
    };
    if (peers.empty()) {
      add_row("", true);
    } else {
      add_row("A", true);
      add_row("NA", false);
    }
    const auto results = evaluate_profiles(game, batch, opts.exec);
    report.evaluations += results.size();
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
      table.cells.push_back({game.payoff_of(results[2 * r], player),
                             game.payoff_of(results[2 * r + 1], player)});
    }
    report.tables.push_back(std::move(table));
  }

  report.verdict = report.deviations.empty() ? Verdict::SPNE : Verdict::NotEquilibrium;
  return report;
}

Dominance dominance_check(const Game& game, std::size_t player, std::size_t action,
                          const std::vector<std::size_t>& alternatives,
                          const std::vector<Profile>& conditioning, Execution exec) {
  std::vector<Profile> batch;
  std::vector<std::size_t> alts;
  for (std::size_t a : alternatives) {
    if (a != action) alts.push_back(a);
  }
  for (const Profile& c : conditioning) {
    Profile p = c;
    p[player] = action;
    batch.push_back(p);
    for (std::size_t a : alts) {
      p[player] = a;
      batch.push_back(p);
    }
  }
  const auto results = evaluate_profiles(game, batch, exec);
  bool strict = true;
  bool weak = true;
  const std::size_t stride = alts.size() + 1;
  for (std::size_t c = 0; c < conditioning.size(); ++c) {
    const Payoff mine = game.payoff_of(results[c * stride], player);
    for (std::size_t j = 0; j < alts.size(); ++j) {
      const Payoff other = game.payoff_of(results[c * stride + 1 + j], player);
      if (!(mine > other)) strict = false;
      if (mine < other) weak = false;
    }
  }
  if (strict) return Dominance::StrictlyDominant;
  if (weak) return Dominance::WeaklyDominant;
  return Dominance::Neither;
}

std::vector<Profile> enumerate_opponents(const Game& game, const Profile& base,
                                         std::size_t player,
                                         const std::vector<std::vector<std::size_t>>& candidates,
                                         std::uint64_t max_joint_actions) {
  const std::size_t n = game.players().size();
  std::vector<std::vector<std::size_t>> m(n);
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    m[i] = i == player ? std::vector<std::size_t>{base[i]} : menu(game, i, candidates);
    total = mul_sat(total, m[i].size());
  }
  guard(total, max_joint_actions, "opponent enumeration");
  std::vector<Profile> out;
  out.reserve(total);
  std::vector<std::size_t> digit(n, 0);
  while (true) {
    Profile p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = m[i][digit[i]];
    out.push_back(std::move(p));
    std::size_t j = 0;
    while (j < n && ++digit[j] == m[j].size()) digit[j++] = 0;
    if (j == n) break;
  }
  return out;
}

}  // namespace lmdlab::eq
