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

#ifndef PROMPT_GAMES_POLICY_ORACLE_H_
#define PROMPT_GAMES_POLICY_ORACLE_H_

#include <compare>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "json.hpp"
#include "prompt_games/game.h"

namespace prompt_games {

// What a player knows when reasoning, e.g. empirical opponent frequencies.
struct InfoVector {
  std::vector<double> values;
  std::string schema_tag;

  // Digest over the canonical decimal text of `values`; the tag is
  // descriptive only and does not participate.
  std::string Hash() const;
  bool operator==(const InfoVector& other) const = default;
};

struct PromptSpec {
  std::string id;
  std::string text;
  bool operator==(const PromptSpec& other) const = default;
};

// A player's (information, prompt space, worldview). The worldview is an
// opaque identifier such as a model name plus decoding settings.
struct Mindset {
  InfoVector info;
  std::vector<PromptSpec> prompts;
  std::string worldview;

  // Throws kValidationError: no prompts, duplicate ids, empty text,
  // non-finite info.
  void Validate() const;
  LabelSet PromptSpace() const;
  const PromptSpec& Prompt(const std::string& id) const;  // kUnknownPrompt
  bool operator==(const Mindset& other) const = default;
};

// Identity of one evaluation of the generative policy map.
struct OracleKey {
  Player player;
  std::string info_hash;
  std::string prompt_id;
  std::string worldview;
  std::uint64_t action_space_fingerprint;

  auto operator<=>(const OracleKey& other) const = default;
  bool operator==(const OracleKey& other) const = default;
};

struct OracleQuery {
  Player player;
  const InfoVector& info;
  const PromptSpec& prompt;
  const std::string& worldview;
  const ActionSpace& actions;

  OracleKey Key() const;
};

struct PolicyEntry {
  std::string prompt_id;
  MixedStrategy strategy;
};

// The induced strategies of a mindset, one per prompt, in prompt order.
// Duplicated vectors are kept.
struct PolicySet {
  std::vector<PolicyEntry> entries;

  int size() const { return static_cast<int>(entries.size()); }
  // kUnknownPrompt when absent.
  const MixedStrategy& at(const std::string& prompt_id) const;
};

// The fixed map (player, info, prompt, worldview) -> distribution over
// actions. Answers are memoized per key, so repeated queries return
// bit-identical vectors whatever the backend does. Thread-safe: Induce may
// be called concurrently; memo writes are serialized.
class PolicyOracle {
 public:
  virtual ~PolicyOracle() = default;

  MixedStrategy Induce(const OracleQuery& query);

  // Digest over every (key, weights) answered so far, in key order.
  std::string UsageDigest() const;

 protected:
  virtual MixedStrategy Evaluate(const OracleQuery& query) = 0;

 private:
  mutable std::mutex mu_;
  std::map<OracleKey, MixedStrategy> answered_;
};

// Scales non-negative scores to a simplex vector over `actions`. Labels
// absent from `raw` get weight 0. Throws kUnknownLabel, kNegativeMass,
// kAllZero.
MixedStrategy NormalizeDistribution(const std::map<std::string, double>& raw,
                                    const ActionSpace& actions);

MixedStrategy InducePolicy(PolicyOracle& oracle, Player player, const InfoVector& info,
                           const PromptSpec& prompt, const std::string& worldview,
                           const ActionSpace& actions);

// Evaluates every prompt of `mindset` in order. Errors are annotated with
// the offending prompt id.
PolicySet InducedPolicySet(PolicyOracle& oracle, Player player, const Mindset& mindset,
                           const ActionSpace& actions);

// Declarative backend: answers exactly the rows of an oracle-table document
//   { "rows": [ { "player", "info", "prompt_id", "worldview", "actions",
//                 "weights" } ] }
class TableOracle : public PolicyOracle {
 public:
  int row_count() const { return static_cast<int>(rows_.size()); }

 protected:
  MixedStrategy Evaluate(const OracleQuery& query) override;

 private:
  friend std::unique_ptr<TableOracle> LoadTableOracle(const nlohmann::json& document);
  std::map<OracleKey, MixedStrategy> rows_;
};

// Throws kSchemaError (with a JSON pointer to the row/field) or
// kDuplicateKey.
std::unique_ptr<TableOracle> LoadTableOracle(const nlohmann::json& document);
std::unique_ptr<TableOracle> LoadTableOracleFile(const std::filesystem::path& path);

// Reads a JSON file; kIoError when unreadable, kSchemaError when not JSON.
nlohmann::json ReadJsonFile(const std::filesystem::path& path);

}  // namespace prompt_games

#endif  // PROMPT_GAMES_POLICY_ORACLE_H_
