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

#ifndef PROMPT_GAMES_REPORT_H_
#define PROMPT_GAMES_REPORT_H_

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "prompt_games/analysis.h"
#include "prompt_games/http_oracle.h"
#include "prompt_games/nash_solver.h"
#include "prompt_games/reasoning_game.h"
#include "prompt_games/scenario.h"

namespace prompt_games {

std::string_view ToolVersion();

struct RunOptions {
  bool all_mixed = false;
  std::optional<double> eps;                      // overrides the scenario's
  std::optional<std::filesystem::path> cache_path;  // overrides the scenario's
  std::optional<HttpOracleOptions> http;          // default: from environment
};

// Builds the backend named by the scenario's oracle config.
std::unique_ptr<PolicyOracle> MakeOracle(const Scenario& scenario, const RunOptions& options);

struct GapEntry {
  GapRequest request;
  GapReport report;
};

struct ExpressivenessEntry {
  ExpressivenessRequest request;
  ExpressivenessVerdict verdict;
};

struct SupportEntry {
  SupportRequest request;
  SupportResult result;
};

struct ReasoningPolicyEntry {
  ReasoningPolicyRequest request;
  std::vector<std::pair<InfoVector, std::string>> assignments;
};

struct ReferenceCheck {
  ReferenceValue reference;
  double computed;
  bool deviation;
};

struct Report {
  std::string scenario_name;
  std::string tool_version;
  std::string oracle_backend;
  std::string oracle_digest;
  double eps;
  LiftedGame lifted;
  std::vector<PromptProfile> pure_equilibria;
  ReasoningEquilibrium mixed_equilibrium;
  std::vector<ReasoningEquilibrium> all_mixed;  // filled only with RunOptions::all_mixed
  std::vector<EquilibriumProfile> behavioral_nash;
  std::vector<GapEntry> gaps;
  std::vector<ExpressivenessEntry> expressiveness;
  std::vector<SupportEntry> supported;
  std::vector<ReasoningPolicyEntry> reasoning_policies;
  std::vector<ReferenceCheck> reference_checks;
};

// lift -> reasoning equilibria -> behavioral Nash -> requested analyses.
// Errors are annotated with the pipeline stage.
Report Run(const Scenario& scenario, PolicyOracle& oracle, const RunOptions& options = {});
Report Run(const Scenario& scenario, const RunOptions& options = {});

// Resolves an opponent spec to a behavior: the induced policy of a prompt
// from `lifted`, or the explicit vector.
MixedStrategy OpponentBehavior(const Scenario& scenario, const LiftedGame& lifted, Player player,
                               const OpponentSpec& spec);

enum class Format { kJson, kTable };
// Parses "json" / "table".
Format ParseFormat(std::string_view name);

// JSON: sorted keys, floats printed with 12 decimals, byte-stable.
// Table: aligned text with 4 decimals.
std::string Emit(const Report& report, Format format);
std::string EmitLift(const std::string& name, const LiftedGame& lifted, Format format);
std::string EmitNash(const std::string& name, const Game& game,
                     const std::vector<EquilibriumProfile>& profiles, Format format);
std::string EmitGap(const std::string& name, const GapReport& gap, Format format);

nlohmann::json ReportToJson(const Report& report);
// Canonical serialization used by every JSON output.
std::string CanonicalJson(const nlohmann::json& value);

}  // namespace prompt_games

#endif  // PROMPT_GAMES_REPORT_H_
