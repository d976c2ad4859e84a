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

#include "prompt_games/report.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <fmt/format.h>

#include "prompt_games/error.h"

namespace prompt_games {

using nlohmann::json;

std::string_view ToolVersion() { return PROMPT_GAMES_VERSION; }

std::unique_ptr<PolicyOracle> MakeOracle(const Scenario& scenario, const RunOptions& options) {
  const OracleConfig& config = scenario.oracle;
  if (config.type == OracleConfig::Type::kTable) {
    if (config.table) return LoadTableOracle(*config.table);
    std::filesystem::path path = config.table_path;
    if (path.is_relative()) path = scenario.base_dir / path;
    return LoadTableOracleFile(path);
  }
  std::filesystem::path cache_path;
  if (options.cache_path) {
    cache_path = *options.cache_path;
  } else if (!config.cache_path.empty()) {
    cache_path = config.cache_path.is_relative() ? scenario.base_dir / config.cache_path
                                                 : config.cache_path;
  }
  return std::make_unique<HttpOracle>(options.http.value_or(HttpOracleOptions::FromEnvironment()),
                                      std::make_shared<OracleCache>(cache_path));
}

MixedStrategy OpponentBehavior(const Scenario& scenario, const LiftedGame& lifted, Player player,
                               const OpponentSpec& spec) {
  const Player opp = Opponent(player);
  if (spec.prompt) {
    return (opp == Player::kA ? lifted.policies_a : lifted.policies_d).at(*spec.prompt);
  }
  return MakeMixed(*spec.mu, scenario.game.actions(opp));
}

namespace {

template <typename Fn>
auto Stage(const char* name, Fn fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    Annotate(e, fmt::format("stage {}", name));
  }
}

const PolicySet& PoliciesOf(const LiftedGame& lifted, Player p) {
  return p == Player::kA ? lifted.policies_a : lifted.policies_d;
}

}  // namespace

Report Run(const Scenario& scenario, PolicyOracle& oracle, const RunOptions& options) {
  const double eps = options.eps.value_or(scenario.eps);
  const Game& game = scenario.game;

  LiftedGame lifted =
      Stage("lift", [&] { return Lift(game, oracle, scenario.mindset_a, scenario.mindset_d); });
  std::vector<PromptProfile> pure = PureReasoningEquilibria(lifted, eps);
  ReasoningEquilibrium mixed =
      Stage("reasoning equilibrium", [&] { return MixedReasoningEquilibrium(lifted, eps); });
  Report report{scenario.name,
                std::string(ToolVersion()),
                scenario.oracle.type == OracleConfig::Type::kTable ? "table" : "http",
                "",
                eps,
                lifted,
                std::move(pure),
                std::move(mixed),
                {},
                {},
                {},
                {},
                {},
                {},
                {}};
  if (options.all_mixed) {
    report.all_mixed =
        Stage("reasoning equilibrium", [&] { return AllMixedReasoningEquilibria(lifted, eps); });
  }
  report.behavioral_nash = Stage("behavioral nash", [&] { return SolveBehavioralNash(game, eps); });

  Stage("analysis", [&] {
    for (const auto& req : scenario.analyses.gap) {
      MixedStrategy opp = OpponentBehavior(scenario, lifted, req.player, req.opponent);
      report.gaps.push_back({req, UtilityGap(game, PoliciesOf(lifted, req.player), req.player, opp)});
    }
    for (const auto& req : scenario.analyses.expressiveness) {
      const Mindset& own = scenario.mindset(req.player);
      Mindset alt{own.info, req.prompts, req.worldview.empty() ? own.worldview : req.worldview};
      PolicySet alt_set = InducedPolicySet(oracle, req.player, alt, game.actions(req.player));
      report.expressiveness.push_back(
          {req, ExpressivenessOrder(PoliciesOf(lifted, req.player), alt_set, req.eps)});
    }
    for (const auto& req : scenario.analyses.supported) {
      MixedStrategy target = MakeMixed(req.target, game.actions(req.player));
      report.supported.push_back({req, IsSupported(target, PoliciesOf(lifted, req.player), req.eps)});
    }
    for (const auto& req : scenario.analyses.reasoning_policy) {
      const Mindset& own = scenario.mindset(req.player);
      std::vector<InfoVector> infos;
      for (const auto& values : req.infos) infos.push_back({values, own.info.schema_tag});
      MixedStrategy opp = OpponentBehavior(scenario, lifted, req.player, req.opponent);
      report.reasoning_policies.push_back(
          {req, ReasoningPolicy(game, oracle, req.player, own.prompts, own.worldview, infos, opp)});
    }
    return 0;
  });

  for (const auto& ref : scenario.reference_values) {
    const int x = lifted.prompts_a.IndexOf(ref.prompt_a);
    const int y = lifted.prompts_d.IndexOf(ref.prompt_d);
    const double computed = ref.player == Player::kA ? lifted.u_a(x, y) : lifted.u_d(x, y);
    report.reference_checks.push_back({ref, computed, std::abs(computed - ref.value) > ref.tolerance});
  }
  report.oracle_digest = oracle.UsageDigest();
  return report;
}

Report Run(const Scenario& scenario, const RunOptions& options) {
  std::unique_ptr<PolicyOracle> oracle = MakeOracle(scenario, options);
  return Run(scenario, *oracle, options);
}

Format ParseFormat(std::string_view name) {
  if (name == "json") return Format::kJson;
  if (name == "table") return Format::kTable;
  throw Error(ErrorCode::kSchemaError, fmt::format("unknown format \"{}\"", name));
}

// ---------------------------------------------------------------------------
// JSON

namespace {

std::string FixedDecimal(double v, int decimals) {
  std::string s = fmt::format("{:.{}f}", v, decimals);
  // "-0.000..." prints as "0.000..."
  if (s[0] == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

bool IsScalar(const json& v) { return !v.is_object() && !v.is_array(); }

void WriteCanonical(const json& v, int indent, std::string& out) {
  const std::string pad(indent + 2, ' ');
  switch (v.type()) {
    case json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, value] : v.items()) {  // std::map: sorted keys
        if (!first) out += ",\n";
        first = false;
        out += pad + json(key).dump() + ": ";
        WriteCanonical(value, indent + 2, out);
      }
      out += "\n" + std::string(indent, ' ') + "}";
      return;
    }
    case json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      const bool flat = std::all_of(v.begin(), v.end(), IsScalar);
      out += flat ? "[" : "[\n";
      for (size_t i = 0; i < v.size(); ++i) {
        if (i > 0) out += flat ? ", " : ",\n";
        if (!flat) out += pad;
        WriteCanonical(v[i], indent + 2, out);
      }
      out += flat ? "]" : "\n" + std::string(indent, ' ') + "]";
      return;
    }
    case json::value_t::number_float:
      out += FixedDecimal(v.get<double>(), 12);
      return;
    default:
      out += v.dump();
  }
}

json StrategyJson(const MixedStrategy& mu) { return mu.weights(); }

json LiftedJson(const LiftedGame& lifted) {
  json out = {{"prompts_a", lifted.prompts_a.labels()},
              {"prompts_d", lifted.prompts_d.labels()},
              {"U_a", lifted.u_a.ToRows()},
              {"U_d", lifted.u_d.ToRows()}};
  json policies = json::object();
  for (const auto& e : lifted.policies_a.entries) policies["A"][e.prompt_id] = StrategyJson(e.strategy);
  for (const auto& e : lifted.policies_d.entries) policies["D"][e.prompt_id] = StrategyJson(e.strategy);
  out["policies"] = policies;
  return out;
}

json ProfilesJson(const std::vector<PromptProfile>& profiles) {
  json out = json::array();
  for (const auto& [x, y] : profiles) out.push_back({x, y});
  return out;
}

json ReasoningEquilibriumJson(const ReasoningEquilibrium& eq) {
  json out = {{"kind", eq.kind == ReasoningEquilibrium::Kind::kPure ? "pure" : "mixed"},
              {"pure_profiles", ProfilesJson(eq.pure_profiles)},
              {"sigma_a", StrategyJson(eq.sigma_a)},
              {"sigma_d", StrategyJson(eq.sigma_d)},
              {"values", {eq.values.first, eq.values.second}},
              {"epsilon", eq.epsilon}};
  if (eq.induced_mu_a) out["induced_mu_a"] = StrategyJson(*eq.induced_mu_a);
  if (eq.induced_mu_d) out["induced_mu_d"] = StrategyJson(*eq.induced_mu_d);
  return out;
}

json NashJson(const std::vector<EquilibriumProfile>& profiles) {
  json out = json::array();
  for (const auto& p : profiles) {
    out.push_back({{"mu_a", StrategyJson(p.strategy_a)},
                   {"mu_d", StrategyJson(p.strategy_d)},
                   {"value_a", p.value_a},
                   {"value_d", p.value_d},
                   {"epsilon", p.epsilon}});
  }
  return out;
}

json OpponentJson(const OpponentSpec& spec) {
  if (spec.prompt) return {{"prompt", *spec.prompt}};
  return {{"mu", *spec.mu}};
}

json GapJson(const GapReport& g) {
  return {{"player", PlayerName(g.player)},
          {"u_star", g.u_star},
          {"u_tilde_star", g.u_tilde_star},
          {"gap", g.gap},
          {"best_action", g.best_action},
          {"best_prompt", g.best_prompt}};
}

std::string OpponentText(const OpponentSpec& spec) {
  if (spec.prompt) return *spec.prompt;
  std::string s = "(";
  for (size_t i = 0; i < spec.mu->size(); ++i) {
    s += (i ? ", " : "") + FixedDecimal((*spec.mu)[i], 4);
  }
  return s + ")";
}

}  // namespace

std::string CanonicalJson(const json& value) {
  std::string out;
  WriteCanonical(value, 0, out);
  out += "\n";
  return out;
}

json ReportToJson(const Report& r) {
  json out = {{"scenario", r.scenario_name},
              {"tool_version", r.tool_version},
              {"oracle", {{"backend", r.oracle_backend}, {"digest", r.oracle_digest}}},
              {"eps", r.eps},
              {"lifted", LiftedJson(r.lifted)},
              {"pure_reasoning_equilibria", ProfilesJson(r.pure_equilibria)},
              {"mixed_reasoning_equilibrium", ReasoningEquilibriumJson(r.mixed_equilibrium)},
              {"behavioral_nash", NashJson(r.behavioral_nash)}};
  if (!r.all_mixed.empty()) {
    json all = json::array();
    for (const auto& eq : r.all_mixed) all.push_back(ReasoningEquilibriumJson(eq));
    out["all_mixed_reasoning_equilibria"] = all;
  }
  json analyses = json::object();
  for (const auto& g : r.gaps) {
    json item = GapJson(g.report);
    item["opponent"] = OpponentJson(g.request.opponent);
    analyses["gap"].push_back(item);
  }
  for (const auto& e : r.expressiveness) {
    json witnesses = json::array();
    for (const auto& w : e.verdict.witnesses) {
      witnesses.push_back(
          {{"missing_from", w.missing == ExpressivenessWitness::Missing::kFromA ? "mindset" : "alternative"},
           {"prompt_id", w.prompt_id},
           {"strategy", StrategyJson(w.strategy)},
           {"distance", w.distance}});
    }
    analyses["expressiveness"].push_back({{"player", PlayerName(e.request.player)},
                                          {"alternative", e.request.label},
                                          {"relation", ExpressivenessName(e.verdict.relation)},
                                          {"eps", e.verdict.epsilon},
                                          {"witnesses", witnesses}});
  }
  for (const auto& s : r.supported) {
    analyses["supported"].push_back({{"player", PlayerName(s.request.player)},
                                     {"target", s.request.target},
                                     {"eps", s.request.eps},
                                     {"supported", s.result.supported},
                                     {"witness", s.result.witness ? json(*s.result.witness) : json()}});
  }
  for (const auto& p : r.reasoning_policies) {
    json assignments = json::array();
    for (const auto& [info, prompt] : p.assignments) {
      assignments.push_back({{"info", info.values}, {"prompt", prompt}});
    }
    analyses["reasoning_policy"].push_back({{"player", PlayerName(p.request.player)},
                                            {"opponent", OpponentJson(p.request.opponent)},
                                            {"assignments", assignments}});
  }
  out["analyses"] = analyses;
  json refs = json::array();
  for (const auto& c : r.reference_checks) {
    refs.push_back({{"player", PlayerName(c.reference.player)},
                    {"prompts", {c.reference.prompt_a, c.reference.prompt_d}},
                    {"reference", c.reference.value},
                    {"computed", c.computed},
                    {"difference", c.computed - c.reference.value},
                    {"tolerance", c.reference.tolerance},
                    {"deviation", c.deviation},
                    {"note", c.reference.note}});
  }
  out["reference_checks"] = refs;
  return out;
}

// ---------------------------------------------------------------------------
// Text tables

namespace {

std::string VectorText(const std::vector<double>& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + FixedDecimal(v[i], 4);
  return s + ")";
}

std::string MatrixTable(const std::string& title, const LabelSet& rows, const LabelSet& cols,
                        const Matrix& m) {
  size_t w = 9;
  for (const auto& l : rows.labels()) w = std::max(w, l.size() + 2);
  for (const auto& l : cols.labels()) w = std::max(w, l.size() + 2);
  std::string out = title + "\n" + fmt::format("{:>{}}", "", w);
  for (const auto& l : cols.labels()) out += fmt::format("{:>{}}", l, w);
  out += "\n";
  for (int r = 0; r < m.rows(); ++r) {
    out += fmt::format("{:>{}}", rows.label(r), w);
    for (int c = 0; c < m.cols(); ++c) out += fmt::format("{:>{}}", FixedDecimal(m(r, c), 4), w);
    out += "\n";
  }
  return out;
}

std::string LiftText(const LiftedGame& lifted) {
  std::string out = MatrixTable("Lifted payoffs U_A (rows: A prompts, cols: D prompts)",
                                lifted.prompts_a, lifted.prompts_d, lifted.u_a);
  out += MatrixTable("Lifted payoffs U_D", lifted.prompts_a, lifted.prompts_d, lifted.u_d);
  if (!lifted.policies_a.entries.empty()) {
    out += "Induced policies\n";
    for (const auto& e : lifted.policies_a.entries) {
      out += fmt::format("  A {:<8} {}\n", e.prompt_id, VectorText(e.strategy.weights()));
    }
    for (const auto& e : lifted.policies_d.entries) {
      out += fmt::format("  D {:<8} {}\n", e.prompt_id, VectorText(e.strategy.weights()));
    }
  }
  return out;
}

std::string NashText(const std::vector<EquilibriumProfile>& profiles) {
  std::string out = "Behavioral Nash equilibria of the base game\n";
  for (const auto& p : profiles) {
    out += fmt::format("  mu_A = {}  mu_D = {}  values = ({}, {})\n",
                       VectorText(p.strategy_a.weights()), VectorText(p.strategy_d.weights()),
                       FixedDecimal(p.value_a, 4), FixedDecimal(p.value_d, 4));
  }
  return out;
}

std::string GapText(const GapReport& g, const std::string& opponent) {
  return fmt::format("gap({}) = {}  (u* = {} via {}, u~* = {} via {}{})\n", PlayerName(g.player),
                     FixedDecimal(g.gap, 4), FixedDecimal(g.u_star, 4), g.best_action,
                     FixedDecimal(g.u_tilde_star, 4), g.best_prompt,
                     opponent.empty() ? "" : ", opponent " + opponent);
}

std::string EquilibriumText(const ReasoningEquilibrium& eq) {
  std::string out = fmt::format("  kind = {}  sigma_A = {}  sigma_D = {}  values = ({}, {})\n",
                                eq.kind == ReasoningEquilibrium::Kind::kPure ? "pure" : "mixed",
                                VectorText(eq.sigma_a.weights()), VectorText(eq.sigma_d.weights()),
                                FixedDecimal(eq.values.first, 4), FixedDecimal(eq.values.second, 4));
  if (eq.induced_mu_a) {
    out += fmt::format("  induced mu_A = {}  induced mu_D = {}\n",
                       VectorText(eq.induced_mu_a->weights()), VectorText(eq.induced_mu_d->weights()));
  }
  return out;
}

}  // namespace

std::string Emit(const Report& r, Format format) {
  if (format == Format::kJson) return CanonicalJson(ReportToJson(r));
  std::string out = fmt::format("Scenario: {}  (prompt-games {}, oracle {} {}, eps {})\n\n",
                                r.scenario_name, r.tool_version, r.oracle_backend, r.oracle_digest,
                                r.eps);
  out += LiftText(r.lifted) + "\n";
  out += "Pure reasoning equilibria:";
  if (r.pure_equilibria.empty()) out += " none";
  for (const auto& [x, y] : r.pure_equilibria) out += fmt::format(" ({}, {})", x, y);
  out += "\n\nMixed reasoning equilibrium\n" + EquilibriumText(r.mixed_equilibrium);
  if (!r.all_mixed.empty()) {
    out += "\nAll mixed reasoning equilibria\n";
    for (const auto& eq : r.all_mixed) out += EquilibriumText(eq);
  }
  out += "\n" + NashText(r.behavioral_nash);
  if (!r.gaps.empty()) out += "\n";
  for (const auto& g : r.gaps) out += GapText(g.report, OpponentText(g.request.opponent));
  for (const auto& e : r.expressiveness) {
    out += fmt::format("expressiveness({} mindset vs {}) = {} at eps {}\n", PlayerName(e.request.player),
                       e.request.label.empty() ? "alternative" : e.request.label,
                       ExpressivenessName(e.verdict.relation), e.verdict.epsilon);
    for (const auto& w : e.verdict.witnesses) {
      out += fmt::format("  witness {} {} at L1 {}\n", w.prompt_id, VectorText(w.strategy.weights()),
                         FixedDecimal(w.distance, 4));
    }
  }
  for (const auto& s : r.supported) {
    out += fmt::format("supported({}, {}) = {}{}\n", PlayerName(s.request.player),
                       VectorText(s.request.target), s.result.supported ? "yes" : "no",
                       s.result.witness ? " via " + *s.result.witness : "");
  }
  for (const auto& p : r.reasoning_policies) {
    for (const auto& [info, prompt] : p.assignments) {
      out += fmt::format("reasoning_policy({}) {} -> {}\n", PlayerName(p.request.player),
                         VectorText(info.values), prompt);
    }
  }
  if (!r.reference_checks.empty()) out += "\nReference values\n";
  for (const auto& c : r.reference_checks) {
    out += fmt::format("  U_{}({}, {}): reference {} computed {}{}\n", PlayerName(c.reference.player),
                       c.reference.prompt_a, c.reference.prompt_d, FixedDecimal(c.reference.value, 4),
                       FixedDecimal(c.computed, 4), c.deviation ? "  DEVIATION" : "");
  }
  return out;
}

std::string EmitLift(const std::string& name, const LiftedGame& lifted, Format format) {
  if (format == Format::kJson) {
    return CanonicalJson({{"scenario", name}, {"lifted", LiftedJson(lifted)}});
  }
  return fmt::format("Scenario: {}\n\n", name) + LiftText(lifted);
}

std::string EmitNash(const std::string& name, const Game& game,
                     const std::vector<EquilibriumProfile>& profiles, Format format) {
  if (format == Format::kJson) {
    return CanonicalJson({{"scenario", name},
                          {"actions", {{"A", game.actions_a().labels()}, {"D", game.actions_d().labels()}}},
                          {"behavioral_nash", NashJson(profiles)}});
  }
  return fmt::format("Scenario: {}\n\n", name) + NashText(profiles);
}

std::string EmitGap(const std::string& name, const GapReport& gap, Format format) {
  if (format == Format::kJson) return CanonicalJson({{"scenario", name}, {"gap", GapJson(gap)}});
  return GapText(gap, "");
}

}  // namespace prompt_games
