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

#include "prompt_games/policy_oracle.h"

#include <cmath>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "json_util.h"
#include "prompt_games/digest.h"
#include "prompt_games/error.h"

namespace prompt_games {

using internal::Child;
using internal::SchemaFail;

std::string InfoVector::Hash() const { return DecimalVectorDigest(values); }

void Mindset::Validate() const {
  if (prompts.empty()) throw Error(ErrorCode::kValidationError, "mindset has no prompts");
  std::set<std::string> ids;
  for (const auto& p : prompts) {
    if (p.id.empty()) throw Error(ErrorCode::kValidationError, "prompt id is empty");
    if (!ids.insert(p.id).second) {
      throw Error(ErrorCode::kValidationError, fmt::format("duplicate prompt id \"{}\"", p.id));
    }
    if (p.text.empty()) {
      throw Error(ErrorCode::kValidationError, fmt::format("prompt \"{}\" has empty text", p.id));
    }
  }
  for (double v : info.values) {
    if (!std::isfinite(v)) throw Error(ErrorCode::kValidationError, "info vector is not finite");
  }
}

LabelSet Mindset::PromptSpace() const {
  std::vector<std::string> ids;
  for (const auto& p : prompts) ids.push_back(p.id);
  return LabelSet(std::move(ids));
}

const PromptSpec& Mindset::Prompt(const std::string& id) const {
  for (const auto& p : prompts) {
    if (p.id == id) return p;
  }
  throw Error(ErrorCode::kUnknownPrompt, fmt::format("no prompt \"{}\" in mindset", id));
}

OracleKey OracleQuery::Key() const {
  return {player, info.Hash(), prompt.id, worldview, actions.fingerprint()};
}

const MixedStrategy& PolicySet::at(const std::string& prompt_id) const {
  for (const auto& e : entries) {
    if (e.prompt_id == prompt_id) return e.strategy;
  }
  throw Error(ErrorCode::kUnknownPrompt, fmt::format("no policy for prompt \"{}\"", prompt_id));
}

MixedStrategy PolicyOracle::Induce(const OracleQuery& query) {
  OracleKey key = query.Key();
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (auto it = answered_.find(key); it != answered_.end()) return it->second;
  }
  std::optional<MixedStrategy> evaluated;
  try {
    evaluated.emplace(Evaluate(query));
  } catch (const Error& e) {
    if (e.from_oracle()) throw;
    throw Error(e.code(), e.detail(), true);
  }
  MixedStrategy mu = std::move(*evaluated);
  if (mu.size() != query.actions.size() || mu.label_set_id() != query.actions.fingerprint()) {
    throw Error(ErrorCode::kDimensionMismatch, "oracle answered over the wrong action space");
  }
  std::lock_guard<std::mutex> lock(mu_);
  // First answer wins if two threads raced on the same key.
  return answered_.emplace(std::move(key), std::move(mu)).first->second;
}

std::string PolicyOracle::UsageDigest() const {
  std::lock_guard<std::mutex> lock(mu_);
  Fnv1a h;
  for (const auto& [key, mu] : answered_) {
    h.Field(PlayerName(key.player))
        .Field(key.info_hash)
        .Field(key.prompt_id)
        .Field(key.worldview)
        .Field(ToHex(key.action_space_fingerprint));
    for (double w : mu.weights()) h.Field(CanonicalDecimal(w));
  }
  return h.Hex();
}

MixedStrategy NormalizeDistribution(const std::map<std::string, double>& raw,
                                    const ActionSpace& actions) {
  std::vector<double> w(actions.size(), 0.0);
  double sum = 0.0;
  for (const auto& [label, value] : raw) {
    int idx = actions.IndexOf(label);
    if (idx < 0) {
      throw Error(ErrorCode::kUnknownLabel, fmt::format("\"{}\" is not an action", label));
    }
    if (!std::isfinite(value)) {
      throw Error(ErrorCode::kBadSum, fmt::format("weight for \"{}\" is not finite", label));
    }
    if (value < 0.0) {
      throw Error(ErrorCode::kNegativeMass, fmt::format("weight {} for \"{}\"", value, label));
    }
    w[idx] = value;
    sum += value;
  }
  if (sum <= 0.0) throw Error(ErrorCode::kAllZero, "all weights are zero");
  if (sum != 1.0) {
    for (double& v : w) v /= sum;
  }
  return MakeMixed(w, actions);
}

MixedStrategy InducePolicy(PolicyOracle& oracle, Player player, const InfoVector& info,
                           const PromptSpec& prompt, const std::string& worldview,
                           const ActionSpace& actions) {
  return oracle.Induce(OracleQuery{player, info, prompt, worldview, actions});
}

PolicySet InducedPolicySet(PolicyOracle& oracle, Player player, const Mindset& mindset,
                           const ActionSpace& actions) {
  PolicySet set;
  for (const auto& prompt : mindset.prompts) {
    try {
      set.entries.push_back(
          {prompt.id, InducePolicy(oracle, player, mindset.info, prompt, mindset.worldview, actions)});
    } catch (const Error& e) {
      Annotate(e, fmt::format("player {} prompt \"{}\"", PlayerName(player), prompt.id));
    }
  }
  return set;
}

MixedStrategy TableOracle::Evaluate(const OracleQuery& query) {
  OracleKey key = query.Key();
  auto it = rows_.find(key);
  if (it == rows_.end()) {
    throw Error(ErrorCode::kMissingEntry,
                fmt::format("no table row for player {} prompt \"{}\" worldview \"{}\"",
                            PlayerName(query.player), query.prompt.id, query.worldview));
  }
  return it->second;
}

std::unique_ptr<TableOracle> LoadTableOracle(const nlohmann::json& document) {
  auto oracle = std::make_unique<TableOracle>();
  const auto& rows = internal::AsArray(internal::Field(document, "", "rows"), "/rows");
  for (size_t r = 0; r < rows.size(); ++r) {
    const std::string at = Child("/rows", r);
    const auto& row = rows[r];
    Player player = Player::kA;
    try {
      player = ParsePlayer(internal::AsString(internal::Field(row, at, "player"), Child(at, "player")));
    } catch (const Error& e) {
      SchemaFail(Child(at, "player"), e.detail());
    }
    InfoVector info{internal::AsNumbers(internal::Field(row, at, "info"), Child(at, "info")), ""};
    std::string prompt_id =
        internal::AsString(internal::Field(row, at, "prompt_id"), Child(at, "prompt_id"));
    std::string worldview =
        internal::AsString(internal::Field(row, at, "worldview"), Child(at, "worldview"));
    std::vector<std::string> labels =
        internal::AsStrings(internal::Field(row, at, "actions"), Child(at, "actions"));
    std::vector<double> weights =
        internal::AsNumbers(internal::Field(row, at, "weights"), Child(at, "weights"));
    try {
      LabelSet actions(std::move(labels));
      OracleKey key{player, info.Hash(), prompt_id, worldview, actions.fingerprint()};
      MixedStrategy mu = MakeMixed(weights, actions);
      if (!oracle->rows_.emplace(key, std::move(mu)).second) {
        throw Error(ErrorCode::kDuplicateKey,
                    fmt::format("{}: row repeats player {} prompt \"{}\" worldview \"{}\"", at,
                                PlayerName(player), prompt_id, worldview));
      }
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kDuplicateKey) throw;
      SchemaFail(at, e.what());
    }
  }
  return oracle;
}

nlohmann::json ReadJsonFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, fmt::format("cannot read {}", path.string()));
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kSchemaError, fmt::format("{}: {}", path.string(), e.what()));
  }
}

std::unique_ptr<TableOracle> LoadTableOracleFile(const std::filesystem::path& path) {
  try {
    return LoadTableOracle(ReadJsonFile(path));
  } catch (const Error& e) {
    Annotate(e, path.string());
  }
}

}  // namespace prompt_games
