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
#include <charconv>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "lmdlab/cli/runner.hpp"

namespace lmdlab::cli {

using nlohmann::json;

Format format_from_string(std::string_view s) {
  if (s == "text") return Format::Text;
  if (s == "json") return Format::Json;
  throw ValidationError("unknown format: " + std::string(s));
}

namespace {

void allow_keys(const json& obj, std::initializer_list<std::string_view> keys,
                const std::string& where) {
  if (!obj.is_object()) throw ValidationError(where + " must be an object");
  for (const auto& [k, v] : obj.items()) {
    if (std::find(keys.begin(), keys.end(), k) == keys.end()) {
      throw ValidationError("unknown key '" + k + "' in " + where);
    }
  }
}

template <typename T>
T get(const json& obj, const char* key, const std::string& where) {
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ValidationError(where + "." + key + ": " + e.what());
  }
}

template <typename T>
void maybe(const json& obj, const char* key, const std::string& where, T& out) {
  if (obj.contains(key)) out = get<T>(obj, key, where);
}

std::int64_t parse_int(std::string_view s, const std::string& where) {
  std::int64_t v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) {
    throw ValidationError(where + ": not an integer: " + std::string(s));
  }
  return v;
}

// "a/b", "a" or a decimal such as "0.082", read exactly.
reward::Amount parse_amount_text(std::string_view s, const std::string& where) {
  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    const std::int64_t den = parse_int(s.substr(slash + 1), where);
    if (den == 0) throw ValidationError(where + ": zero denominator");
    return reward::Amount(parse_int(s.substr(0, slash), where), den);
  }
  if (const auto dot = s.find('.'); dot != std::string_view::npos) {
    const std::string_view frac = s.substr(dot + 1);
    if (frac.empty() || frac.size() > 15) throw ValidationError(where + ": bad decimal");
    std::int64_t den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    const std::string_view whole = s.substr(0, dot);
    const bool neg = !whole.empty() && whole.front() == '-';
    const std::int64_t w = whole.empty() || whole == "-" ? 0 : parse_int(whole, where);
    const std::int64_t f = parse_int(frac, where);
    return reward::Amount(w * den + (neg ? -f : f), den);
  }
  return reward::Amount(parse_int(s, where));
}

reward::Amount parse_amount(const json& v, const std::string& where) {
  if (v.is_number_integer()) return reward::Amount(v.get<std::int64_t>());
  if (v.is_string()) return parse_amount_text(v.get<std::string>(), where);
  if (v.is_number_float()) {
    char buf[64];
    const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v.get<double>());
    if (ec != std::errc()) throw ValidationError(where + ": bad number");
    return parse_amount_text(std::string_view(buf, p - buf), where);
  }
  throw ValidationError(where + ": expected a number or a \"a/b\" string");
}

template <typename E>
E pick(const std::string& s, std::initializer_list<std::pair<std::string_view, E>> names,
       const std::string& where) {
  for (const auto& [n, e] : names) {
    if (s == n) return e;
  }
  throw ValidationError(where + ": unknown value '" + s + "'");
}

games::GameConfig parse_game(const json& g, games::GameKind kind) {
  const std::string w = "game";
  allow_keys(g, {"kind", "W", "W_p", "p", "adversarial_slots", "r", "R", "mechanism",
                 "tie_break", "leader_reward", "seed", "pool", "W_h", "epoch_length",
                 "credibility_assumed", "allow_condition_violation", "dag_adversary", "boost"},
             w);
  games::GameConfig c;
  c.kind = kind;
  maybe(g, "W", w, c.W);
  maybe(g, "W_p", w, c.W_p);
  maybe(g, "p", w, c.p);
  maybe(g, "adversarial_slots", w, c.adversarial_slots);
  if (g.contains("r")) c.r = parse_amount(g["r"], w + ".r");
  if (g.contains("R")) c.R = parse_amount(g["R"], w + ".R");
  if (g.contains("mechanism")) {
    c.mechanism = pick<reward::Mechanism>(
        get<std::string>(g, "mechanism", w),
        {{"ethereum", reward::Mechanism::Ethereum}, {"dag-votes", reward::Mechanism::DagVotes}},
        w + ".mechanism");
  }
  if (g.contains("tie_break")) {
    c.tie_break = pick<TieBreakPolicy>(get<std::string>(g, "tie_break", w),
                                       {{"adversary-favoring", TieBreakPolicy::AdversaryFavoring},
                                        {"lexicographic", TieBreakPolicy::Lexicographic}},
                                       w + ".tie_break");
  }
  if (g.contains("leader_reward")) {
    c.leader_reward = pick<reward::LeaderReward>(
        get<std::string>(g, "leader_reward", w),
        {{"per-included-vote", reward::LeaderReward::PerIncludedVote},
         {"per-canonical-block", reward::LeaderReward::PerCanonicalBlock}},
        w + ".leader_reward");
  }
  maybe(g, "seed", w, c.seed);
  if (g.contains("pool")) {
    const json& p = g["pool"];
    allow_keys(p, {"members", "per_slot"}, "game.pool");
    games::PoolConfig pool;
    maybe(p, "members", "game.pool", pool.members);
    if (p.contains("per_slot")) {
      const json& per = p["per_slot"];
      if (!per.is_object()) throw ValidationError("game.pool.per_slot must be an object");
      for (const auto& [slot, n] : per.items()) {
        if (!n.is_number_unsigned()) {
          throw ValidationError("game.pool.per_slot." + slot + " must be a count");
        }
        pool.per_slot[parse_int(slot, "game.pool.per_slot")] = n.get<std::uint32_t>();
      }
    }
    c.pool = pool;
  }
  maybe(g, "W_h", w, c.W_h);
  maybe(g, "epoch_length", w, c.epoch_length);
  maybe(g, "credibility_assumed", w, c.credibility_assumed);
  maybe(g, "allow_condition_violation", w, c.allow_condition_violation);
  if (g.contains("dag_adversary")) {
    c.dag_adversary = pick<games::DagAdversary>(
        get<std::string>(g, "dag_adversary", w),
        {{"off-tip", games::DagAdversary::OffTip}, {"on-tip", games::DagAdversary::OnTip}},
        w + ".dag_adversary");
  }
  if (g.contains("boost")) c.boost = get<std::int64_t>(g, "boost", w);
  try {
    c.validate();
  } catch (const games::GameConfigError& e) {
    throw ValidationError(std::string("game: ") + e.what());
  }
  return c;
}

CheckRequest parse_check(const json& c, std::size_t i) {
  const std::string w = "checks[" + std::to_string(i) + "]";
  allow_keys(c, {"type", "max_coalition", "coalition", "candidates", "player", "action",
                 "alternatives", "samples"},
             w);
  CheckRequest out;
  out.type = pick<CheckType>(get<std::string>(c, "type", w),
                             {{"nash", CheckType::Nash},
                              {"spne", CheckType::Spne},
                              {"dominance", CheckType::Dominance},
                              {"matrix", CheckType::Matrix},
                              {"security", CheckType::Security}},
                             w + ".type");
  maybe(c, "max_coalition", w, out.max_coalition);
  maybe(c, "coalition", w, out.coalition);
  maybe(c, "candidates", w, out.candidates);
  maybe(c, "player", w, out.player);
  maybe(c, "action", w, out.action);
  maybe(c, "alternatives", w, out.alternatives);
  maybe(c, "samples", w, out.samples);
  if (out.max_coalition == 0) throw ValidationError(w + ".max_coalition must be positive");
  if (out.type == CheckType::Dominance && (out.player.empty() || out.action.empty())) {
    throw ValidationError(w + ": dominance needs player and action");
  }
  return out;
}

}  // namespace

Scenario parse_scenario(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what());
  }
  allow_keys(doc, {"scenario", "description", "game", "profile", "checks", "seed", "output"},
             "scenario file");
  Scenario s;
  s.id = get<std::string>(doc, "scenario", "scenario file");
  if (s.id.empty()) throw ValidationError("scenario id is empty");
  maybe(doc, "description", "scenario file", s.description);
  if (doc.contains("seed")) s.seed = get<std::uint64_t>(doc, "seed", "scenario file");

  if (!doc.contains("game")) throw ValidationError("missing key 'game'");
  const json& g = doc["game"];
  if (!g.is_object()) throw ValidationError("game must be an object");
  const std::string kind = get<std::string>(g, "kind", "game");
  if (const auto k = games::game_kind_from_string(kind)) {
    s.analysis = Analysis::Game;
    s.game = parse_game(g, *k);
  } else if (kind == "tendermint.withholding" || kind == "tendermint.honest-anchor") {
    s.analysis = kind == "tendermint.withholding" ? Analysis::TendermintWithholding
                                                  : Analysis::TendermintAnchor;
    allow_keys(g, {"kind", "f", "m", "honest", "r_unit"}, "game");
    maybe(g, "f", "game", s.tendermint.f);
    maybe(g, "m", "game", s.tendermint.m);
    if (g.contains("honest")) s.tendermint.honest = get<std::int64_t>(g, "honest", "game");
    if (g.contains("r_unit")) s.tendermint.r_unit = parse_amount(g["r_unit"], "game.r_unit");
  } else if (kind == "quantify") {
    s.analysis = Analysis::Quantify;
    allow_keys(g, {"kind", "n_validators", "stake_gwei", "mev_fail_eth", "mev_success_eth",
                   "pool_share"},
               "game");
    maybe(g, "n_validators", "game", s.quantify.n_validators);
    maybe(g, "stake_gwei", "game", s.quantify.stake_gwei);
    if (g.contains("mev_fail_eth")) {
      s.quantify.mev_fail_eth = parse_amount(g["mev_fail_eth"], "game.mev_fail_eth");
    }
    if (g.contains("mev_success_eth")) {
      s.quantify.mev_success_eth = parse_amount(g["mev_success_eth"], "game.mev_success_eth");
    }
    if (g.contains("pool_share")) {
      s.quantify.pool_share = parse_amount(g["pool_share"], "game.pool_share");
    }
  } else if (kind == "overhead") {
    s.analysis = Analysis::Overhead;
    allow_keys(g, {"kind", "n_att", "n_agg", "n_limit", "sig_bytes", "subcommittees_per_slot",
                   "aggregates_per_block", "avg_block_bytes", "grid"},
               "game");
    overhead::OverheadParams& p = s.overhead.base;
    maybe(g, "n_att", "game", p.n_att);
    maybe(g, "n_agg", "game", p.n_agg);
    maybe(g, "n_limit", "game", p.n_limit);
    maybe(g, "sig_bytes", "game", p.sig_bytes);
    maybe(g, "subcommittees_per_slot", "game", p.subcommittees_per_slot);
    maybe(g, "aggregates_per_block", "game", p.aggregates_per_block);
    maybe(g, "avg_block_bytes", "game", p.avg_block_bytes);
    maybe(g, "grid", "game", s.overhead.grid);
  } else {
    throw ValidationError("unknown game kind: " + kind);
  }

  if (doc.contains("profile")) {
    const json& p = doc["profile"];
    allow_keys(p, {"strategy", "overrides"}, "profile");
    if (p.contains("strategy")) s.strategy = get<std::string>(p, "strategy", "profile");
    maybe(p, "overrides", "profile", s.overrides);
  }
  if (doc.contains("checks")) {
    const json& c = doc["checks"];
    if (!c.is_array()) throw ValidationError("checks must be a list");
    for (std::size_t i = 0; i < c.size(); ++i) s.checks.push_back(parse_check(c[i], i));
  }
  if (doc.contains("output")) {
    const json& o = doc["output"];
    allow_keys(o, {"path", "format"}, "output");
    if (o.contains("path")) s.output_path = get<std::string>(o, "path", "output");
    if (o.contains("format")) s.format = format_from_string(get<std::string>(o, "format", "output"));
  }
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::vector<ScenarioInfo> list_scenarios(const std::vector<std::filesystem::path>& dirs) {
  std::map<std::string, ScenarioInfo> found;
  for (const auto& dir : dirs) {
    std::error_code ec;
    if (!std::filesystem::is_directory(dir, ec)) continue;
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
      if (entry.is_regular_file() && entry.path().extension() == ".json") {
        files.push_back(entry.path());
      }
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
      const Scenario s = load_scenario(f);
      found[s.id] = {s.id, s.description, f};
    }
  }
  std::vector<ScenarioInfo> out;
  for (auto& [id, info] : found) out.push_back(std::move(info));
  return out;
}

std::filesystem::path bundled_scenario_dir() { return LMDLAB_SCENARIO_DIR; }

int exit_code_of(const std::exception& e) {
  if (dynamic_cast<const ParseError*>(&e)) return 2;
  if (dynamic_cast<const ValidationError*>(&e)) return 3;
  if (dynamic_cast<const games::GameConfigError*>(&e)) return 3;
  if (dynamic_cast<const eq::ExplosionGuard*>(&e)) return 4;
  return 1;
}

}  // namespace lmdlab::cli
