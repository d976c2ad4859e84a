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

#include "prompt_games/scenario.h"

#include <set>

#include <fmt/format.h>

#include "json_util.h"
#include "prompt_games/error.h"

namespace prompt_games {

using internal::AsArray;
using internal::AsBool;
using internal::AsNumber;
using internal::AsNumbers;
using internal::AsString;
using internal::AsStrings;
using internal::Child;
using internal::Field;
using internal::SchemaFail;
using nlohmann::json;

bool Scenario::operator==(const Scenario& other) const {
  return name == other.name && game == other.game && mindset_a == other.mindset_a &&
         mindset_d == other.mindset_d && oracle == other.oracle && eps == other.eps &&
         analyses == other.analyses && reference_values == other.reference_values;
}

namespace {

[[noreturn]] void Invalid(const std::string& what) { throw Error(ErrorCode::kValidationError, what); }

Player PlayerAt(const json& v, const std::string& at) {
  std::string s = AsString(v, at);
  if (s != "A" && s != "D") SchemaFail(at, "player must be \"A\" or \"D\"");
  return ParsePlayer(s);
}

const json* Optional(const json& obj, const std::string& key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

LabelSet LabelsAt(const json& v, const std::string& at) {
  try {
    return LabelSet(AsStrings(v, at));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kSchemaError) throw;
    SchemaFail(at, e.detail());
  }
}

Matrix MatrixAt(const json& v, const std::string& at, int rows, int cols) {
  const json& arr = AsArray(v, at);
  if (static_cast<int>(arr.size()) != rows) {
    SchemaFail(at, fmt::format("expected {} rows, found {}", rows, arr.size()));
  }
  Matrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    std::vector<double> row = AsNumbers(arr[r], Child(at, r));
    if (static_cast<int>(row.size()) != cols) {
      SchemaFail(Child(at, r), fmt::format("expected {} entries, found {}", cols, row.size()));
    }
    for (int c = 0; c < cols; ++c) m(r, c) = row[c];
  }
  return m;
}

std::vector<PromptSpec> PromptsAt(const json& v, const std::string& at) {
  std::vector<PromptSpec> prompts;
  const json& arr = AsArray(v, at);
  for (size_t i = 0; i < arr.size(); ++i) {
    const std::string p = Child(at, i);
    prompts.push_back({AsString(Field(arr[i], p, "id"), Child(p, "id")),
                       AsString(Field(arr[i], p, "text"), Child(p, "text"))});
  }
  return prompts;
}

Mindset MindsetAt(const json& v, const std::string& at) {
  Mindset m;
  m.info.values = AsNumbers(Field(v, at, "info"), Child(at, "info"));
  if (const json* tag = Optional(v, "info_tag")) m.info.schema_tag = AsString(*tag, Child(at, "info_tag"));
  m.worldview = AsString(Field(v, at, "worldview"), Child(at, "worldview"));
  m.prompts = PromptsAt(Field(v, at, "prompts"), Child(at, "prompts"));
  try {
    m.Validate();
  } catch (const Error& e) {
    Invalid(fmt::format("{}: {}", at, e.detail()));
  }
  return m;
}

OpponentSpec OpponentAt(const json& v, const std::string& at) {
  OpponentSpec spec;
  if (const json* p = Optional(v, "opponent_prompt")) spec.prompt = AsString(*p, Child(at, "opponent_prompt"));
  if (const json* mu = Optional(v, "opponent_mu")) spec.mu = AsNumbers(*mu, Child(at, "opponent_mu"));
  if (spec.prompt.has_value() == spec.mu.has_value()) {
    SchemaFail(at, "exactly one of opponent_prompt / opponent_mu is required");
  }
  return spec;
}

OracleConfig OracleAt(const json& v, const std::string& at) {
  OracleConfig config;
  const std::string type = AsString(Field(v, at, "type"), Child(at, "type"));
  if (type == "table") {
    config.type = OracleConfig::Type::kTable;
    const json* path = Optional(v, "path");
    const json* rows = Optional(v, "rows");
    if ((path != nullptr) == (rows != nullptr)) SchemaFail(at, "table oracle needs exactly one of path / rows");
    if (path) config.table_path = AsString(*path, Child(at, "path"));
    if (rows) config.table = json{{"rows", AsArray(*rows, Child(at, "rows"))}};
  } else if (type == "http") {
    config.type = OracleConfig::Type::kHttp;
    if (const json* cache = Optional(v, "cache")) config.cache_path = AsString(*cache, Child(at, "cache"));
  } else {
    SchemaFail(Child(at, "type"), "oracle type must be \"table\" or \"http\"");
  }
  return config;
}

void CheckPrompt(const Scenario& s, Player p, const std::string& id, const std::string& at) {
  if (s.mindset(p).PromptSpace().IndexOf(id) < 0) {
    Invalid(fmt::format("{}: unknown prompt \"{}\" for player {}", at, id, PlayerName(p)));
  }
}

void CheckOpponent(const Scenario& s, Player player, const OpponentSpec& spec, const std::string& at) {
  const Player opp = Opponent(player);
  if (spec.prompt) CheckPrompt(s, opp, *spec.prompt, at);
  if (spec.mu) {
    try {
      MakeMixed(*spec.mu, s.game.actions(opp));
    } catch (const Error& e) {
      Invalid(fmt::format("{}: opponent_mu: {}", at, e.what()));
    }
  }
}

AnalysisRequests AnalysesAt(const json& v, const std::string& at) {
  AnalysisRequests req;
  if (!v.is_object()) SchemaFail(at, "expected an object");
  for (const auto& [key, _] : v.items()) {
    if (key != "gap" && key != "expressiveness" && key != "supported" && key != "reasoning_policy") {
      SchemaFail(Child(at, key), "unknown analysis");
    }
  }
  if (const json* gaps = Optional(v, "gap")) {
    const std::string base = Child(at, "gap");
    for (size_t i = 0; i < AsArray(*gaps, base).size(); ++i) {
      const std::string p = Child(base, i);
      req.gap.push_back({PlayerAt(Field((*gaps)[i], p, "player"), Child(p, "player")),
                         OpponentAt((*gaps)[i], p)});
    }
  }
  if (const json* ex = Optional(v, "expressiveness")) {
    const std::string base = Child(at, "expressiveness");
    for (size_t i = 0; i < AsArray(*ex, base).size(); ++i) {
      const std::string p = Child(base, i);
      const json& e = (*ex)[i];
      ExpressivenessRequest r{PlayerAt(Field(e, p, "player"), Child(p, "player")),
                              "",
                              PromptsAt(Field(e, p, "prompts"), Child(p, "prompts")),
                              "",
                              AsNumber(Field(e, p, "eps"), Child(p, "eps"))};
      if (const json* l = Optional(e, "label")) r.label = AsString(*l, Child(p, "label"));
      if (const json* w = Optional(e, "worldview")) r.worldview = AsString(*w, Child(p, "worldview"));
      req.expressiveness.push_back(std::move(r));
    }
  }
  if (const json* sup = Optional(v, "supported")) {
    const std::string base = Child(at, "supported");
    for (size_t i = 0; i < AsArray(*sup, base).size(); ++i) {
      const std::string p = Child(base, i);
      const json& e = (*sup)[i];
      req.supported.push_back({PlayerAt(Field(e, p, "player"), Child(p, "player")),
                               AsNumbers(Field(e, p, "target"), Child(p, "target")),
                               AsNumber(Field(e, p, "eps"), Child(p, "eps"))});
    }
  }
  if (const json* rp = Optional(v, "reasoning_policy")) {
    const std::string base = Child(at, "reasoning_policy");
    for (size_t i = 0; i < AsArray(*rp, base).size(); ++i) {
      const std::string p = Child(base, i);
      const json& e = (*rp)[i];
      ReasoningPolicyRequest r{PlayerAt(Field(e, p, "player"), Child(p, "player")), {},
                               OpponentAt(e, p)};
      const json& infos = AsArray(Field(e, p, "infos"), Child(p, "infos"));
      for (size_t k = 0; k < infos.size(); ++k) {
        r.infos.push_back(AsNumbers(infos[k], Child(Child(p, "infos"), k)));
      }
      req.reasoning_policy.push_back(std::move(r));
    }
  }
  return req;
}

std::vector<ReferenceValue> ReferencesAt(const json& v, const std::string& at) {
  std::vector<ReferenceValue> refs;
  for (size_t i = 0; i < AsArray(v, at).size(); ++i) {
    const std::string p = Child(at, i);
    const json& e = v[i];
    std::vector<std::string> prompts = AsStrings(Field(e, p, "prompts"), Child(p, "prompts"));
    if (prompts.size() != 2) SchemaFail(Child(p, "prompts"), "expected [prompt_a, prompt_d]");
    ReferenceValue r{PlayerAt(Field(e, p, "player"), Child(p, "player")),
                     prompts[0],
                     prompts[1],
                     AsNumber(Field(e, p, "value"), Child(p, "value")),
                     1e-6,
                     ""};
    if (const json* t = Optional(e, "tolerance")) r.tolerance = AsNumber(*t, Child(p, "tolerance"));
    if (const json* n = Optional(e, "note")) r.note = AsString(*n, Child(p, "note"));
    refs.push_back(std::move(r));
  }
  return refs;
}

void ValidateCrossReferences(const Scenario& s) {
  for (size_t i = 0; i < s.analyses.gap.size(); ++i) {
    const auto& g = s.analyses.gap[i];
    CheckOpponent(s, g.player, g.opponent, fmt::format("/analyses/gap/{}", i));
  }
  for (size_t i = 0; i < s.analyses.expressiveness.size(); ++i) {
    const auto& e = s.analyses.expressiveness[i];
    Mindset alt{s.mindset(e.player).info, e.prompts, e.worldview};
    try {
      alt.Validate();
    } catch (const Error& err) {
      Invalid(fmt::format("/analyses/expressiveness/{}: {}", i, err.detail()));
    }
  }
  for (size_t i = 0; i < s.analyses.supported.size(); ++i) {
    const auto& r = s.analyses.supported[i];
    try {
      MakeMixed(r.target, s.game.actions(r.player));
    } catch (const Error& err) {
      Invalid(fmt::format("/analyses/supported/{}/target: {}", i, err.what()));
    }
  }
  for (size_t i = 0; i < s.analyses.reasoning_policy.size(); ++i) {
    const auto& r = s.analyses.reasoning_policy[i];
    CheckOpponent(s, r.player, r.opponent, fmt::format("/analyses/reasoning_policy/{}", i));
  }
  for (size_t i = 0; i < s.reference_values.size(); ++i) {
    const auto& r = s.reference_values[i];
    const std::string at = fmt::format("/reference_values/{}", i);
    CheckPrompt(s, Player::kA, r.prompt_a, at);
    CheckPrompt(s, Player::kD, r.prompt_d, at);
  }
}

}  // namespace

Scenario ParseScenario(const json& doc, std::filesystem::path base_dir) {
  if (!doc.is_object()) SchemaFail("", "scenario must be a JSON object");
  const std::string name = AsString(Field(doc, "", "name"), "/name");

  const json& actions = Field(doc, "", "actions");
  LabelSet actions_a = LabelsAt(Field(actions, "/actions", "A"), "/actions/A");
  LabelSet actions_d = LabelsAt(Field(actions, "/actions", "D"), "/actions/D");
  const int n = actions_a.size();
  const int m = actions_d.size();

  Matrix payoff_a = MatrixAt(Field(doc, "", "payoff_a"), "/payoff_a", n, m);
  bool zero_sum = false;
  if (const json* z = Optional(doc, "zero_sum")) zero_sum = AsBool(*z, "/zero_sum");
  Matrix payoff_d;
  if (const json* pd = Optional(doc, "payoff_d")) {
    payoff_d = MatrixAt(*pd, "/payoff_d", n, m);
  } else if (zero_sum) {
    payoff_d = payoff_a.Negated();
  } else {
    SchemaFail("/payoff_d", "required unless zero_sum is true");
  }
  std::optional<Game> game;
  try {
    game.emplace(actions_a, actions_d, payoff_a, payoff_d, zero_sum);
  } catch (const Error& e) {
    Invalid(e.detail());
  }

  const json& mindsets = Field(doc, "", "mindsets");
  Scenario s{name,
             *game,
             MindsetAt(Field(mindsets, "/mindsets", "A"), "/mindsets/A"),
             MindsetAt(Field(mindsets, "/mindsets", "D"), "/mindsets/D"),
             OracleAt(Field(doc, "", "oracle"), "/oracle"),
             1e-9,
             {},
             {},
             std::move(base_dir)};
  if (const json* eps = Optional(doc, "eps")) {
    s.eps = AsNumber(*eps, "/eps");
    if (!(s.eps >= 0.0)) SchemaFail("/eps", "must be non-negative");
  }
  if (const json* a = Optional(doc, "analyses")) s.analyses = AnalysesAt(*a, "/analyses");
  if (const json* r = Optional(doc, "reference_values")) {
    s.reference_values = ReferencesAt(*r, "/reference_values");
  }
  ValidateCrossReferences(s);
  return s;
}

Scenario LoadScenario(const std::filesystem::path& path) {
  try {
    return ParseScenario(ReadJsonFile(path), path.parent_path());
  } catch (const Error& e) {
    Annotate(e, path.string());
  }
}

namespace {

json OpponentToJson(const OpponentSpec& spec, json out) {
  if (spec.prompt) out["opponent_prompt"] = *spec.prompt;
  if (spec.mu) out["opponent_mu"] = *spec.mu;
  return out;
}

json PromptsToJson(const std::vector<PromptSpec>& prompts) {
  json out = json::array();
  for (const auto& p : prompts) out.push_back({{"id", p.id}, {"text", p.text}});
  return out;
}

json MindsetToJson(const Mindset& m) {
  json out = {{"info", m.info.values}, {"worldview", m.worldview}, {"prompts", PromptsToJson(m.prompts)}};
  if (!m.info.schema_tag.empty()) out["info_tag"] = m.info.schema_tag;
  return out;
}

}  // namespace

json SerializeScenario(const Scenario& s) {
  json doc = {{"name", s.name},
              {"actions", {{"A", s.game.actions_a().labels()}, {"D", s.game.actions_d().labels()}}},
              {"payoff_a", s.game.payoff_a().ToRows()},
              {"payoff_d", s.game.payoff_d().ToRows()},
              {"zero_sum", s.game.zero_sum()},
              {"mindsets", {{"A", MindsetToJson(s.mindset_a)}, {"D", MindsetToJson(s.mindset_d)}}},
              {"eps", s.eps}};
  json oracle;
  if (s.oracle.type == OracleConfig::Type::kTable) {
    oracle["type"] = "table";
    if (s.oracle.table) {
      oracle["rows"] = s.oracle.table->at("rows");
    } else {
      oracle["path"] = s.oracle.table_path.string();
    }
  } else {
    oracle["type"] = "http";
    if (!s.oracle.cache_path.empty()) oracle["cache"] = s.oracle.cache_path.string();
  }
  doc["oracle"] = oracle;

  json analyses = json::object();
  for (const auto& g : s.analyses.gap) {
    analyses["gap"].push_back(OpponentToJson(g.opponent, {{"player", PlayerName(g.player)}}));
  }
  for (const auto& e : s.analyses.expressiveness) {
    json item = {{"player", PlayerName(e.player)}, {"prompts", PromptsToJson(e.prompts)}, {"eps", e.eps}};
    if (!e.label.empty()) item["label"] = e.label;
    if (!e.worldview.empty()) item["worldview"] = e.worldview;
    analyses["expressiveness"].push_back(item);
  }
  for (const auto& r : s.analyses.supported) {
    analyses["supported"].push_back(
        {{"player", PlayerName(r.player)}, {"target", r.target}, {"eps", r.eps}});
  }
  for (const auto& r : s.analyses.reasoning_policy) {
    analyses["reasoning_policy"].push_back(
        OpponentToJson(r.opponent, {{"player", PlayerName(r.player)}, {"infos", r.infos}}));
  }
  doc["analyses"] = analyses;

  if (!s.reference_values.empty()) {
    json refs = json::array();
    for (const auto& r : s.reference_values) {
      json item = {{"player", PlayerName(r.player)},
                   {"prompts", {r.prompt_a, r.prompt_d}},
                   {"value", r.value},
                   {"tolerance", r.tolerance}};
      if (!r.note.empty()) item["note"] = r.note;
      refs.push_back(item);
    }
    doc["reference_values"] = refs;
  }
  return doc;
}

Scenario BuiltinRpsScenario() {
  const std::vector<std::string> rps = {"Rock", "Paper", "Scissors"};
  const double third = 1.0 / 3.0;
  auto row = [&](const char* player, std::vector<double> info, const char* prompt,
                 std::vector<double> weights) {
    return json{{"player", player}, {"info", info},      {"prompt_id", prompt},
                {"worldview", "rps-case-study"}, {"actions", rps}, {"weights", weights}};
  };
  const std::vector<double> info_a = {0.2, 0.3, 0.5};
  const std::vector<double> info_d = {0.6, 0.2, 0.2};
  json doc = {
      {"name", "rps_case_study"},
      {"actions", {{"A", rps}, {"D", rps}}},
      {"payoff_a", {{0, -1, 1}, {1, 0, -1}, {-1, 1, 0}}},
      {"zero_sum", true},
      {"mindsets",
       {{"A",
         {{"info", info_a},
          {"info_tag", "empirical frequencies of D's plays (Rock, Paper, Scissors)"},
          {"worldview", "rps-case-study"},
          {"prompts",
           {{{"id", "x1"}, {"text", "Exploit opponent's bias. Respond to their most frequent move."}},
            {{"id", "x2"}, {"text", "Assume uniform play. Choose uniformly."}}}}}},
        {"D",
         {{"info", info_d},
          {"info_tag", "empirical frequencies of A's plays (Rock, Paper, Scissors)"},
          {"worldview", "rps-case-study"},
          {"prompts",
           {{{"id", "y1"}, {"text", "Randomize to avoid predictability."}},
            {{"id", "y2"}, {"text", "Exploit patterns by countering the last move."}}}}}}}},
      {"oracle",
       {{"type", "table"},
        {"rows",
         {row("A", info_a, "x1", {0.2, 0.6, 0.2}), row("A", info_a, "x2", {third, third, third}),
          row("D", info_d, "y1", {third, third, third}), row("D", info_d, "y2", {0.3, 0.4, 0.3})}}}},
      {"eps", 1e-9},
      {"analyses",
       {{"gap",
         {{{"player", "A"}, {"opponent_prompt", "y2"}}, {{"player", "D"}, {"opponent_prompt", "x1"}}}},
        {"supported",
         {{{"player", "A"}, {"target", {third, third, third}}, {"eps", 1e-9}},
          {{"player", "A"}, {"target", {1.0, 0.0, 0.0}}, {"eps", 0.1}}}},
        {"expressiveness",
         {{{"player", "A"},
           {"label", "uniform-only"},
           {"prompts", {{{"id", "x2"}, {"text", "Assume uniform play. Choose uniformly."}}}},
           {"eps", 1e-9}}}},
        {"reasoning_policy",
         {{{"player", "A"}, {"infos", {info_a}}, {"opponent_mu", {0.3, 0.4, 0.3}}}}}}},
      {"reference_values",
       {{{"player", "A"}, {"prompts", {"x1", "y2"}}, {"value", 0.075}, {"tolerance", 1e-6},
         {"note", "externally reported value"}},
        {{"player", "A"}, {"prompts", {"x2", "y2"}}, {"value", 0.015}, {"tolerance", 1e-6},
         {"note", "externally reported value"}},
        {{"player", "A"}, {"prompts", {"x1", "y1"}}, {"value", 0.0}, {"tolerance", 1e-6},
         {"note", "externally reported value"}}}}};
  return ParseScenario(doc);
}

}  // namespace prompt_games
