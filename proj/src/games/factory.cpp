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

#include "lmdlab/games/dag.hpp"
#include "lmdlab/games/extended.hpp"
#include "lmdlab/games/game.hpp"
#include "lmdlab/games/selfish.hpp"
#include "lmdlab/games/simple.hpp"

namespace lmdlab::games {

std::unique_ptr<LmdGame> make_game(const GameConfig& config) {
  switch (config.kind) {
    case GameKind::Simple:
    case GameKind::PoolSimple:
      return std::make_unique<SimpleGame>(config);
    case GameKind::StrongSimple:
      return std::make_unique<StrongSimpleGame>(config);
    case GameKind::SimpleNoBoost:
      return std::make_unique<NoBoostGame>(config);
    case GameKind::Extended:
      return std::make_unique<ExtendedGame>(config);
    case GameKind::SelfishMining:
      return std::make_unique<SelfishMiningGame>(config);
    case GameKind::DagVotes:
      return std::make_unique<DagGame>(config);
  }
  throw GameConfigError("unknown game kind");
}

}  // namespace lmdlab::games
