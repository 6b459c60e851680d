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

// Command-line front end: run one scenario, list the known ones, or run a
// directory of them.

#include <omp.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lmdlab/cli/runner.hpp"

namespace fs = std::filesystem;
using namespace lmdlab;

namespace {

struct Flags {
  std::optional<std::uint64_t> seed;
  std::string trace;
  std::string format;
  std::uint64_t max_joint_actions = 1'000'000;
  std::vector<std::string> scenario_dirs;
  bool serial = false;
};

std::vector<fs::path> search_dirs(const Flags& f) {
  std::vector<fs::path> dirs{cli::bundled_scenario_dir()};
  for (const auto& d : f.scenario_dirs) dirs.emplace_back(d);
  return dirs;
}

cli::RunOptions run_options(const Flags& f) {
  cli::RunOptions o;
  o.seed = f.seed;
  o.max_joint_actions = f.max_joint_actions;
  o.exec = f.serial ? eq::Execution::Serial : eq::Execution::Parallel;
  if (!f.trace.empty()) o.trace_path = f.trace;
  return o;
}

cli::Format pick_format(const Flags& f, const cli::Scenario& s) {
  if (!f.format.empty()) return cli::format_from_string(f.format);
  return s.format.value_or(cli::Format::Text);
}

// A path, or the id of a scenario in one of the search directories.
cli::Scenario resolve(const std::string& target, const Flags& f) {
  if (fs::exists(target)) return cli::load_scenario(target);
  for (const auto& info : cli::list_scenarios(search_dirs(f))) {
    if (info.id == target) return cli::load_scenario(info.path);
  }
  throw cli::ParseError("no scenario file or id: " + target);
}

void write_lines(const std::string& path, const std::vector<std::string>& lines) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  for (const auto& l : lines) out << l << '\n';
}

int cmd_run(const std::string& target, const Flags& f) {
  const cli::Scenario s = resolve(target, f);
  const cli::Report rep = cli::run_scenario(s, run_options(f));
  const std::string text = cli::render(rep, pick_format(f, s));
  if (s.output_path) {
    std::ofstream out(*s.output_path);
    if (!out) throw std::runtime_error("cannot write " + *s.output_path);
    out << text;
  } else {
    std::cout << text;
  }
  if (!f.trace.empty()) write_lines(f.trace, rep.trace);
  return 0;
}

int cmd_list(const Flags& f) {
  for (const auto& info : cli::list_scenarios(search_dirs(f))) {
    std::cout << info.id << "  " << info.description << '\n';
  }
  return 0;
}

int cmd_batch(const std::string& dir, const Flags& f) {
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<std::string> outputs(files.size());
  std::vector<int> codes(files.size(), 0);
  cli::RunOptions opts = run_options(f);
  opts.trace_path.reset();
  const long long count = static_cast<long long>(files.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long long i = 0; i < count; ++i) {
    try {
      const cli::Scenario s = cli::load_scenario(files[i]);
      outputs[i] = cli::render(cli::run_scenario(s, opts), pick_format(f, s));
    } catch (const std::exception& e) {
      codes[i] = cli::exit_code_of(e);
      outputs[i] = std::string("error: ") + e.what() + "\n";
    }
  }
  int code = 0;
  for (std::size_t i = 0; i < files.size(); ++i) {
    std::cout << "== " << files[i].filename().string() << '\n' << outputs[i];
    if (code == 0) code = codes[i];
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Incentive analysis of LMD GHOST and Tendermint reward mechanisms"};
  app.require_subcommand(1);
  Flags flags;
  std::string target;
  std::string dir;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--seed", flags.seed, "Override the scenario seed");
    sub->add_option("--format", flags.format, "Report format")
        ->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--max-joint-actions", flags.max_joint_actions,
                    "Largest joint action space a search may enumerate");
    sub->add_option("--scenario-dir", flags.scenario_dirs, "Extra scenario directory");
    sub->add_flag("--serial", flags.serial, "Use the serial evaluation path");
  };

  CLI::App* run = app.add_subcommand("run", "Run one scenario file or bundled id");
  run->add_option("scenario", target, "Scenario file or id")->required();
  run->add_option("--trace", flags.trace, "Write line-delimited trace records here");
  common(run);

  CLI::App* list = app.add_subcommand("list", "List bundled and extra scenarios");
  list->add_option("--scenario-dir", flags.scenario_dirs, "Extra scenario directory");

  CLI::App* batch = app.add_subcommand("batch", "Run every scenario in a directory");
  batch->add_option("dir", dir, "Directory of scenario files")->required()->check(CLI::ExistingDirectory);
  common(batch);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*run) return cmd_run(target, flags);
    if (*list) return cmd_list(flags);
    return cmd_batch(dir, flags);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::exit_code_of(e);
  }
}
