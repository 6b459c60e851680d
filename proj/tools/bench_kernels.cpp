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

// Serial against OpenMP timings for the two parallel kernels: batch profile
// evaluation and the strong simple game Monte Carlo.

#include <benchmark/benchmark.h>

#include <vector>

#include "lmdlab/eq/search.hpp"
#include "lmdlab/games/simple.hpp"

namespace {

using lmdlab::eq::Execution;
using lmdlab::eq::Profile;
using namespace lmdlab::games;

GameConfig simple_config(GameKind kind, std::uint32_t W) {
  GameConfig c;
  c.kind = kind;
  c.W = W;
  c.W_p = W / 2;
  return c;
}

// Every profile of the simple game's W attestors.
std::vector<Profile> all_profiles(const SimpleGame& g) {
  std::vector<Profile> out(1);
  for (const auto& p : g.players()) {
    std::vector<Profile> next;
    for (const Profile& prefix : out) {
      for (std::size_t a = 0; a < p.actions.size(); ++a) {
        next.push_back(prefix);
        next.back().push_back(a);
      }
    }
    out = std::move(next);
  }
  return out;
}

void BM_EvaluateProfiles(benchmark::State& state, Execution exec) {
  const SimpleGame g(simple_config(GameKind::Simple, static_cast<std::uint32_t>(state.range(0))));
  const auto profiles = all_profiles(g);
  for (auto _ : state) {
    benchmark::DoNotOptimize(lmdlab::eq::evaluate_profiles(g, profiles, exec));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(profiles.size()));
}

void BM_MonteCarlo(benchmark::State& state, Execution exec) {
  const auto cfg = simple_config(GameKind::StrongSimple, 4);
  const auto samples = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(strong_simple_monte_carlo(cfg, samples, exec));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK_CAPTURE(BM_EvaluateProfiles, serial, Execution::Serial)->Arg(4)->Arg(6);
BENCHMARK_CAPTURE(BM_EvaluateProfiles, parallel, Execution::Parallel)->Arg(4)->Arg(6);
BENCHMARK_CAPTURE(BM_MonteCarlo, serial, Execution::Serial)->Arg(100'000);
BENCHMARK_CAPTURE(BM_MonteCarlo, parallel, Execution::Parallel)->Arg(100'000);

BENCHMARK_MAIN();
