// Copyright 2026 The Prompt Games Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end.
//
//   prompt-games run  <scenario.json> [--format json|table] [--eps E]
//                     [--all-mixed] [--cache PATH]
//   prompt-games lift <scenario.json> [--format json|table] [--cache PATH]
//   prompt-games nash <scenario.json> [--format json|table] [--eps E]
//   prompt-games gap  <scenario.json> --player A|D --opponent-prompt ID
//   prompt-games init rps [--output PATH]
//
// Exit codes: 0 success, 2 schema/validation, 3 oracle failure, 4 internal
// solver failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "prompt_games/error.h"
#include "prompt_games/report.h"
#include "prompt_games/scenario.h"

namespace pg = prompt_games;

namespace {

struct CommonFlags {
  std::string scenario;
  std::string format = "json";
  std::optional<double> eps;
  std::optional<std::string> cache;

  pg::RunOptions Options() const {
    pg::RunOptions options;
    options.eps = eps;
    if (cache) options.cache_path = *cache;
    return options;
  }
};

void AddCommon(CLI::App* cmd, CommonFlags& flags, bool with_eps) {
  cmd->add_option("scenario", flags.scenario, "scenario file")->required();
  cmd->add_option("--format", flags.format, "json or table")
      ->check(CLI::IsMember({"json", "table"}));
  cmd->add_option("--cache", flags.cache, "oracle cache (JSON lines) for the http backend");
  if (with_eps) cmd->add_option("--eps", flags.eps, "equilibrium tolerance");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reasoning-equilibrium solver for prompt-lifted two-player games"};
  app.set_version_flag("--version", std::string(pg::ToolVersion()));
  app.require_subcommand(1);

  CommonFlags run_flags;
  bool all_mixed = false;
  auto* run = app.add_subcommand("run", "full report for a scenario");
  AddCommon(run, run_flags, true);
  run->add_flag("--all-mixed", all_mixed, "list every mixed reasoning equilibrium found");

  CommonFlags lift_flags;
  auto* lift = app.add_subcommand("lift", "lifted payoff matrices only");
  AddCommon(lift, lift_flags, false);

  CommonFlags nash_flags;
  auto* nash = app.add_subcommand("nash", "behavioral Nash equilibria of the base game only");
  AddCommon(nash, nash_flags, true);

  CommonFlags gap_flags;
  std::string gap_player;
  std::string opponent_prompt;
  auto* gap = app.add_subcommand("gap", "behavioral vs reasoning utility gap");
  AddCommon(gap, gap_flags, false);
  gap->add_option("--player", gap_player, "A or D")->required()->check(CLI::IsMember({"A", "D"}));
  gap->add_option("--opponent-prompt", opponent_prompt, "opponent prompt id")->required();

  std::string init_name;
  std::string init_output;
  auto* init = app.add_subcommand("init", "write a built-in scenario to disk");
  init->add_option("name", init_name, "built-in scenario")->required()->check(CLI::IsMember({"rps"}));
  init->add_option("--output,-o", init_output, "destination (default rps_case_study.json)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*run) {
      pg::RunOptions options = run_flags.Options();
      options.all_mixed = all_mixed;
      pg::Scenario scenario = pg::LoadScenario(run_flags.scenario);
      std::cout << pg::Emit(pg::Run(scenario, options), pg::ParseFormat(run_flags.format));
    } else if (*lift) {
      pg::Scenario scenario = pg::LoadScenario(lift_flags.scenario);
      auto oracle = pg::MakeOracle(scenario, lift_flags.Options());
      pg::LiftedGame lifted = pg::Lift(scenario.game, *oracle, scenario.mindset_a, scenario.mindset_d);
      std::cout << pg::EmitLift(scenario.name, lifted, pg::ParseFormat(lift_flags.format));
    } else if (*nash) {
      pg::Scenario scenario = pg::LoadScenario(nash_flags.scenario);
      const double eps = nash_flags.eps.value_or(scenario.eps);
      std::cout << pg::EmitNash(scenario.name, scenario.game,
                                pg::SolveBehavioralNash(scenario.game, eps),
                                pg::ParseFormat(nash_flags.format));
    } else if (*gap) {
      pg::Scenario scenario = pg::LoadScenario(gap_flags.scenario);
      const pg::Player player = pg::ParsePlayer(gap_player);
      auto oracle = pg::MakeOracle(scenario, gap_flags.Options());
      pg::LiftedGame lifted = pg::Lift(scenario.game, *oracle, scenario.mindset_a, scenario.mindset_d);
      pg::OpponentSpec spec{opponent_prompt, std::nullopt};
      pg::MixedStrategy opp = pg::OpponentBehavior(scenario, lifted, player, spec);
      const pg::PolicySet& own = player == pg::Player::kA ? lifted.policies_a : lifted.policies_d;
      std::cout << pg::EmitGap(scenario.name, pg::UtilityGap(scenario.game, own, player, opp),
                               pg::ParseFormat(gap_flags.format));
    } else if (*init) {
      const std::string path = init_output.empty() ? "rps_case_study.json" : init_output;
      std::ofstream out(path);
      if (!out) throw pg::Error(pg::ErrorCode::kIoError, "cannot write " + path);
      out << pg::SerializeScenario(pg::BuiltinRpsScenario()).dump(2) << "\n";
      std::cerr << "wrote " << path << "\n";
    }
  } catch (const pg::Error& e) {
    std::cerr << "prompt-games: " << e.what() << "\n";
    return pg::ExitCodeFor(e);
  } catch (const std::exception& e) {
    std::cerr << "prompt-games: internal error: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
