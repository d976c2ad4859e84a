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

#ifndef PROMPT_GAMES_SCENARIO_H_
#define PROMPT_GAMES_SCENARIO_H_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "prompt_games/game.h"
#include "prompt_games/policy_oracle.h"

namespace prompt_games {

struct OracleConfig {
  enum class Type { kTable, kHttp };
  Type type = Type::kTable;
  // kTable: either a path (relative to the scenario file) or inline rows.
  std::filesystem::path table_path;
  std::optional<nlohmann::json> table;
  // kHttp: JSON-lines cache; empty keeps answers in memory.
  std::filesystem::path cache_path;

  bool operator==(const OracleConfig& other) const = default;
};

// Opponent behavior for gap and reasoning-policy requests: either the policy
// induced by one of the opponent's prompts or an explicit mixed strategy.
struct OpponentSpec {
  std::optional<std::string> prompt;
  std::optional<std::vector<double>> mu;
  bool operator==(const OpponentSpec& other) const = default;
};

struct GapRequest {
  Player player;
  OpponentSpec opponent;
  bool operator==(const GapRequest& other) const = default;
};

// Compares the player's mindset with an alternative prompt space (and
// optionally another worldview) at the same information.
struct ExpressivenessRequest {
  Player player;
  std::string label;
  std::vector<PromptSpec> prompts;
  std::string worldview;
  double eps;
  bool operator==(const ExpressivenessRequest& other) const = default;
};

struct SupportRequest {
  Player player;
  std::vector<double> target;
  double eps;
  bool operator==(const SupportRequest& other) const = default;
};

struct ReasoningPolicyRequest {
  Player player;
  std::vector<std::vector<double>> infos;
  OpponentSpec opponent;
  bool operator==(const ReasoningPolicyRequest& other) const = default;
};

struct AnalysisRequests {
  std::vector<GapRequest> gap;
  std::vector<ExpressivenessRequest> expressiveness;
  std::vector<SupportRequest> supported;
  std::vector<ReasoningPolicyRequest> reasoning_policy;
  bool operator==(const AnalysisRequests& other) const = default;
};

// An externally reported lifted payoff to compare against; the report flags
// a deviation when the computed cell differs by more than `tolerance`.
struct ReferenceValue {
  Player player;
  std::string prompt_a;
  std::string prompt_d;
  double value;
  double tolerance;
  std::string note;
  bool operator==(const ReferenceValue& other) const = default;
};

struct Scenario {
  std::string name;
  Game game;
  Mindset mindset_a;
  Mindset mindset_d;
  OracleConfig oracle;
  double eps = 1e-9;
  AnalysisRequests analyses;
  std::vector<ReferenceValue> reference_values;
  // Directory relative paths resolve against; not serialized.
  std::filesystem::path base_dir;

  const Mindset& mindset(Player p) const { return p == Player::kA ? mindset_a : mindset_d; }
  // Field-wise equality ignoring base_dir.
  bool operator==(const Scenario& other) const;
};

// Parses and validates a scenario document. kSchemaError carries a JSON
// pointer; kValidationError covers cross-field checks (zero_sum mismatch,
// prompt id collisions, analysis references to unknown prompts).
Scenario ParseScenario(const nlohmann::json& document, std::filesystem::path base_dir = {});
Scenario LoadScenario(const std::filesystem::path& path);
nlohmann::json SerializeScenario(const Scenario& scenario);

// The rock-paper-scissors case study with a self-contained oracle table.
Scenario BuiltinRpsScenario();

}  // namespace prompt_games

#endif  // PROMPT_GAMES_SCENARIO_H_
