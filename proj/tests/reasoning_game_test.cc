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

#include "prompt_games/reasoning_game.h"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "doctest.h"
#include "prompt_games/error.h"
#include "test_util.h"

namespace prompt_games {
namespace {

using nlohmann::json;
using testing::PromptMindset;

const std::vector<std::string> kRps = {"Rock", "Paper", "Scissors"};

struct CaseStudy {
  Game base = RockPaperScissors();
  std::unique_ptr<TableOracle> oracle =
      LoadTableOracleFile(std::string(PROMPT_GAMES_SCENARIO_DIR) + "/rps_case_study_oracle.json");
  Mindset a = PromptMindset("x", 2, {0.2, 0.3, 0.5}, "rps-case-study");
  Mindset d = PromptMindset("y", 2, {0.6, 0.2, 0.2}, "rps-case-study");
};

json Row(const std::string& player, std::vector<double> info, const std::string& id,
         const std::string& worldview, std::vector<double> weights) {
  return {{"player", player}, {"info", info},   {"prompt_id", id},
          {"worldview", worldview}, {"actions", kRps}, {"weights", weights}};
}

LiftedGame ZeroSumLifted(std::vector<std::vector<double>> u_a) {
  Matrix m = Matrix::FromRows(u_a);
  return LiftedGame::FromMatrices(testing::Labels("x", m.rows()), testing::Labels("y", m.cols()), m,
                                  m.Negated());
}

// Pure equilibria by explicit deviation checks over every cell.
std::set<PromptProfile> BruteForcePure(const LiftedGame& g, double eps) {
  std::set<PromptProfile> out;
  for (int i = 0; i < g.u_a.rows(); ++i) {
    for (int j = 0; j < g.u_a.cols(); ++j) {
      bool ok = true;
      for (int k = 0; k < g.u_a.rows(); ++k) ok = ok && g.u_a(k, j) <= g.u_a(i, j) + eps;
      for (int k = 0; k < g.u_a.cols(); ++k) ok = ok && g.u_d(i, k) <= g.u_d(i, j) + eps;
      if (ok) out.insert({g.prompts_a.label(i), g.prompts_d.label(j)});
    }
  }
  return out;
}

TEST_CASE("lifting the case study gives all-zero matrices") {
  CaseStudy cs;
  LiftedGame lifted = Lift(cs.base, *cs.oracle, cs.a, cs.d);
  REQUIRE(lifted.u_a.rows() == 2);
  REQUIRE(lifted.u_a.cols() == 2);
  CHECK(lifted.zero_sum);
  const auto rps = cs.base.payoff_a().ToRows();
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      // 9-term enumeration of each cell.
      double expected = testing::BruteForceUtility(rps, lifted.policies_a.entries[i].strategy.weights(),
                                                   lifted.policies_d.entries[j].strategy.weights());
      CHECK(std::abs(expected) < 1e-15);
      CHECK(std::abs(lifted.u_a(i, j)) < 1e-15);
      CHECK(std::abs(lifted.u_d(i, j)) < 1e-15);
    }
  }
}

TEST_CASE("single-prompt lifts") {
  json doc = {{"rows", {Row("A", {1}, "rock", "w", {1, 0, 0}), Row("D", {1}, "paper", "w", {0, 1, 0})}}};
  auto oracle = LoadTableOracle(doc);
  Mindset a{{{1}, ""}, {{"rock", "always rock"}}, "w"};
  Mindset d{{{1}, ""}, {{"paper", "always paper"}}, "w"};
  LiftedGame lifted = Lift(RockPaperScissors(), *oracle, a, d);
  CHECK(lifted.u_a == Matrix::FromRows({{-1}}));
  CHECK(lifted.u_d == Matrix::FromRows({{1}}));
  CHECK(PureReasoningEquilibria(lifted, 1e-9) == std::vector<PromptProfile>{{"rock", "paper"}});
  ReasoningEquilibrium eq = MixedReasoningEquilibrium(lifted, 1e-9);
  CHECK(eq.kind == ReasoningEquilibrium::Kind::kPure);
  CHECK(eq.sigma_a.weights() == std::vector<double>{1});
  CHECK(eq.sigma_d.weights() == std::vector<double>{1});
  CHECK(eq.values.first == -1);
  CHECK(OptimalPrompt(lifted, Player::kA, "paper").prompt_id == "rock");
}

TEST_CASE("lift errors carry the prompt") {
  CaseStudy cs;
  cs.d.prompts.push_back({"y3", "unlisted"});
  try {
    Lift(cs.base, *cs.oracle, cs.a, cs.d);
    FAIL("expected MissingEntry");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kMissingEntry);
    CHECK(std::string(e.what()).find("y3") != std::string::npos);
  }
}

TEST_CASE("pure reasoning equilibria examples") {
  CaseStudy cs;
  LiftedGame lifted = Lift(cs.base, *cs.oracle, cs.a, cs.d);
  auto all = PureReasoningEquilibria(lifted, 1e-9);
  CHECK(all == std::vector<PromptProfile>{{"x1", "y1"}, {"x1", "y2"}, {"x2", "y1"}, {"x2", "y2"}});

  LiftedGame g = ZeroSumLifted({{1, 0}, {0, 0}});
  auto pure = PureReasoningEquilibria(g, 1e-9);
  CHECK(pure == std::vector<PromptProfile>{{"x1", "y2"}, {"x2", "y2"}});
  CHECK(std::set<PromptProfile>(pure.begin(), pure.end()) == BruteForcePure(g, 1e-9));
}

TEST_CASE("mixed reasoning equilibrium examples") {
  LiftedGame pennies = ZeroSumLifted({{1, -1}, {-1, 1}});
  ReasoningEquilibrium eq = MixedReasoningEquilibrium(pennies, 1e-9);
  CHECK(eq.kind == ReasoningEquilibrium::Kind::kMixed);
  CHECK(eq.sigma_a[0] == doctest::Approx(0.5));
  CHECK(eq.sigma_d[0] == doctest::Approx(0.5));
  CHECK(std::abs(eq.values.first) < 1e-12);
  CHECK(!eq.induced_mu_a.has_value());

  CaseStudy cs;
  LiftedGame lifted = Lift(cs.base, *cs.oracle, cs.a, cs.d);
  ReasoningEquilibrium flat = MixedReasoningEquilibrium(lifted, 1e-9);
  CHECK(IsEpsilonNash(lifted.AsGame(), flat.sigma_a, flat.sigma_d, 1e-9));
  REQUIRE(flat.induced_mu_a.has_value());
  REQUIRE(flat.induced_mu_d.has_value());
}

TEST_CASE("optimal prompt examples") {
  CaseStudy cs;
  LiftedGame lifted = Lift(cs.base, *cs.oracle, cs.a, cs.d);
  PromptChoice c = OptimalPrompt(lifted, Player::kA, "y2");
  CHECK(c.prompt_id == "x1");
  CHECK(std::abs(c.value) < 1e-15);

  LiftedGame g = ZeroSumLifted({{1, 0}, {0, 0}});
  c = OptimalPrompt(g, Player::kA, "y1");
  CHECK(c.prompt_id == "x1");
  CHECK(c.value == 1.0);
  // D minimizes A's payoff: against x1, y2 gives D 0 versus -1.
  c = OptimalPrompt(g, Player::kD, "x1");
  CHECK(c.prompt_id == "y2");
  CHECK(c.value == 0.0);
  c = OptimalPrompt(g, Player::kA, MakeMixed({0.5, 0.5}, g.prompts_d));
  CHECK(c.prompt_id == "x1");
  CHECK(c.value == 0.5);

  try {
    OptimalPrompt(g, Player::kA, "y7");
    FAIL("expected UnknownPrompt");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kUnknownPrompt);
  }
}

TEST_CASE("reasoning policy examples") {
  CaseStudy cs;
  const LabelSet rps(kRps);
  MixedStrategy opponent = MakeMixed({0.3, 0.4, 0.3}, rps);
  auto table = ReasoningPolicy(cs.base, *cs.oracle, Player::kA, cs.a.prompts, cs.a.worldview,
                               {cs.a.info}, opponent);
  REQUIRE(table.size() == 1);
  CHECK(table[0].first == cs.a.info);
  CHECK(table[0].second == "x1");

  // Single info agrees with OptimalPrompt against the same behavior.
  LiftedGame lifted = Lift(cs.base, *cs.oracle, cs.a, cs.d);
  auto y2 = lifted.policies_d.at("y2");
  CHECK(table[0].second == OptimalPrompt(lifted, Player::kA, MakeMixed({0, 1}, lifted.prompts_d)).prompt_id);
  CHECK(y2 == opponent);

  // Against (0.3, 0.4, 0.3) the action values are (-0.1, 0, 0.1): under the
  // first info x1 plays Scissors and x2 Rock, under the second the reverse.
  const std::vector<double> i1 = {1, 0, 0}, i2 = {0, 1, 0};
  json doc = {{"rows",
               {Row("A", i1, "x1", "w", {0, 0, 1}), Row("A", i1, "x2", "w", {1, 0, 0}),
                Row("A", i2, "x1", "w", {1, 0, 0}), Row("A", i2, "x2", "w", {0, 0, 1})}}};
  auto oracle = LoadTableOracle(doc);
  std::vector<PromptSpec> prompts = {{"x1", "one"}, {"x2", "two"}};
  auto two = ReasoningPolicy(cs.base, *oracle, Player::kA, prompts, "w",
                             {InfoVector{i1, ""}, InfoVector{i2, ""}}, opponent);
  REQUIRE(two.size() == 2);
  CHECK(two[0].second == "x1");
  CHECK(two[1].second == "x2");
  // Brute force: value of each prompt's policy against the opponent.
  const auto rows = cs.base.payoff_a().ToRows();
  CHECK(testing::BruteForceUtility(rows, {0, 0, 1}, opponent.weights()) == doctest::Approx(0.1));
  CHECK(testing::BruteForceUtility(rows, {1, 0, 0}, opponent.weights()) == doctest::Approx(-0.1));

  try {
    ReasoningPolicy(cs.base, *oracle, Player::kA, prompts, "w",
                    {InfoVector{i1, ""}, InfoVector{{0, 0, 1}, ""}}, opponent);
    FAIL("expected MissingEntry");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kMissingEntry);
    CHECK(std::string(e.what()).find("info #1") != std::string::npos);
  }
}

TEST_CASE("property: lift consistency, serial agreement, zero-sum complement") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> size(1, 5);
  for (int trial = 0; trial < 200; ++trial) {
    const bool zero_sum = trial % 2 == 0;
    auto s = testing::RandomReasoningSetup(rng, size(rng), size(rng), size(rng), size(rng), zero_sum);
    LiftedGame lifted = Lift(s.base, *s.oracle, s.mindset_a, s.mindset_d);
    LiftedGame serial = LiftSerial(s.base, *s.oracle, s.mindset_a, s.mindset_d);
    CHECK(lifted.u_a == serial.u_a);
    CHECK(lifted.u_d == serial.u_d);
    const auto pa = s.base.payoff_a().ToRows();
    const auto pd = s.base.payoff_d().ToRows();
    for (int i = 0; i < lifted.u_a.rows(); ++i) {
      for (int j = 0; j < lifted.u_a.cols(); ++j) {
        const auto& mu_a = lifted.policies_a.entries[i].strategy.weights();
        const auto& mu_d = lifted.policies_d.entries[j].strategy.weights();
        CHECK(std::abs(lifted.u_a(i, j) - testing::BruteForceUtility(pa, mu_a, mu_d)) <= 1e-12);
        CHECK(std::abs(lifted.u_d(i, j) - testing::BruteForceUtility(pd, mu_a, mu_d)) <= 1e-12);
        if (zero_sum) CHECK(std::abs(lifted.u_a(i, j) + lifted.u_d(i, j)) <= 1e-12);
      }
    }
  }
}

TEST_CASE("property: existence, induced profiles, pure inside mixed") {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<int> prompts(1, 6);
  std::uniform_int_distribution<int> actions(2, 4);
  for (int trial = 0; trial < 500; ++trial) {
    auto s = testing::RandomReasoningSetup(rng, actions(rng), actions(rng), prompts(rng), prompts(rng),
                                           trial % 3 == 0);
    LiftedGame lifted = Lift(s.base, *s.oracle, s.mindset_a, s.mindset_d);
    const Game as_game = lifted.AsGame();
    ReasoningEquilibrium eq = MixedReasoningEquilibrium(lifted, kDefaultEquilibriumEps);
    CHECK(IsEpsilonNash(as_game, eq.sigma_a, eq.sigma_d, kDefaultEquilibriumEps));
    REQUIRE(eq.induced_mu_a.has_value());
    for (int k = 0; k < s.base.actions_a().size(); ++k) {
      double expected = 0;
      for (int x = 0; x < lifted.prompts_a.size(); ++x) {
        expected += eq.sigma_a[x] * lifted.policies_a.entries[x].strategy[k];
      }
      CHECK(std::abs((*eq.induced_mu_a)[k] - expected) <= 1e-12);
    }
    for (int k = 0; k < s.base.actions_d().size(); ++k) {
      double expected = 0;
      for (int y = 0; y < lifted.prompts_d.size(); ++y) {
        expected += eq.sigma_d[y] * lifted.policies_d.entries[y].strategy[k];
      }
      CHECK(std::abs((*eq.induced_mu_d)[k] - expected) <= 1e-12);
    }

    auto pure = PureReasoningEquilibria(lifted, kDefaultEquilibriumEps);
    CHECK(std::set<PromptProfile>(pure.begin(), pure.end()) ==
          BruteForcePure(lifted, kDefaultEquilibriumEps));
    for (const auto& [x, y] : pure) {
      CHECK(IsEpsilonNash(as_game, PointMass(lifted.prompts_a.IndexOf(x), lifted.prompts_a),
                          PointMass(lifted.prompts_d.IndexOf(y), lifted.prompts_d),
                          kDefaultEquilibriumEps));
    }
  }
}

TEST_CASE("property: relabeling prompts permutes the outputs") {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> size(1, 5);
  for (int trial = 0; trial < 100; ++trial) {
    auto s = testing::RandomReasoningSetup(rng, 3, 3, size(rng), size(rng), trial % 2 == 0);
    LiftedGame lifted = Lift(s.base, *s.oracle, s.mindset_a, s.mindset_d);

    Mindset a = s.mindset_a, d = s.mindset_d;
    std::shuffle(a.prompts.begin(), a.prompts.end(), rng);
    std::shuffle(d.prompts.begin(), d.prompts.end(), rng);
    LiftedGame permuted = Lift(s.base, *s.oracle, a, d);
    for (int i = 0; i < permuted.u_a.rows(); ++i) {
      for (int j = 0; j < permuted.u_a.cols(); ++j) {
        const int oi = lifted.prompts_a.IndexOf(permuted.prompts_a.label(i));
        const int oj = lifted.prompts_d.IndexOf(permuted.prompts_d.label(j));
        CHECK(permuted.u_a(i, j) == lifted.u_a(oi, oj));
        CHECK(permuted.u_d(i, j) == lifted.u_d(oi, oj));
      }
    }
    auto p1 = PureReasoningEquilibria(lifted, 1e-9);
    auto p2 = PureReasoningEquilibria(permuted, 1e-9);
    CHECK(std::set<PromptProfile>(p1.begin(), p1.end()) == std::set<PromptProfile>(p2.begin(), p2.end()));

    // Optimal prompt values are unchanged (ids may move only between ties).
    for (const auto& y : lifted.prompts_d.labels()) {
      CHECK(OptimalPrompt(lifted, Player::kA, y).value == OptimalPrompt(permuted, Player::kA, y).value);
    }
  }
}

TEST_CASE("more than twelve prompts is too large for the mixed solver") {
  std::mt19937_64 rng(3);
  LiftedGame big = LiftedGame::FromMatrices(testing::Labels("x", 13), testing::Labels("y", 2),
                                            testing::RandomMatrix(rng, 13, 2),
                                            testing::RandomMatrix(rng, 13, 2));
  try {
    MixedReasoningEquilibrium(big, 1e-9);
    FAIL("expected TooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kTooLarge);
  }
  // Pure equilibria have no size limit.
  CHECK_NOTHROW(PureReasoningEquilibria(big, 1e-9));
}

}  // namespace
}  // namespace prompt_games
