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

#include "prompt_games/nash_solver.h"

#include <random>

#include "doctest.h"
#include "prompt_games/error.h"
#include "test_util.h"

namespace prompt_games {
namespace {

bool NearVector(const MixedStrategy& mu, const std::vector<double>& expected, double tol) {
  for (int i = 0; i < mu.size(); ++i) {
    if (std::abs(mu[i] - expected[i]) > tol) return false;
  }
  return true;
}

Game MatchingPennies() {
  const LabelSet hs({"Heads", "Tails"});
  return Game::ZeroSum(hs, hs, Matrix::FromRows({{1, -1}, {-1, 1}}));
}

Game PrisonersDilemma() {
  const LabelSet cd({"Cooperate", "Defect"});
  Matrix row = Matrix::FromRows({{-1, -3}, {0, -2}});
  Matrix col = Matrix::FromRows({{-1, 0}, {-3, -2}});
  return Game(cd, cd, row, col, false);
}

// Pure equilibria by checking every unilateral pure deviation.
std::vector<std::pair<int, int>> BruteForcePureNash(const Game& g) {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < g.actions_a().size(); ++i) {
    for (int j = 0; j < g.actions_d().size(); ++j) {
      bool ok = true;
      for (int k = 0; k < g.actions_a().size(); ++k) ok = ok && g.payoff_a()(k, j) <= g.payoff_a()(i, j);
      for (int k = 0; k < g.actions_d().size(); ++k) ok = ok && g.payoff_d()(i, k) <= g.payoff_d()(i, j);
      if (ok) out.emplace_back(i, j);
    }
  }
  return out;
}

TEST_CASE("rock-paper-scissors has the uniform equilibrium only") {
  auto eqs = SolveBehavioralNash(RockPaperScissors(), 1e-9);
  REQUIRE(eqs.size() == 1);
  CHECK(NearVector(eqs[0].strategy_a, {1.0 / 3, 1.0 / 3, 1.0 / 3}, 1e-9));
  CHECK(NearVector(eqs[0].strategy_d, {1.0 / 3, 1.0 / 3, 1.0 / 3}, 1e-9));
  CHECK(std::abs(eqs[0].value_a) < 1e-9);
  CHECK(eqs[0].epsilon == 1e-9);
}

TEST_CASE("matching pennies matches the closed form") {
  // Closed form: A mixes p with p - (1-p) = -(p) + (1-p)  =>  p = 1/2.
  auto eqs = SolveBehavioralNash(MatchingPennies(), 1e-9);
  REQUIRE(eqs.size() == 1);
  CHECK(NearVector(eqs[0].strategy_a, {0.5, 0.5}, 1e-9));
  CHECK(NearVector(eqs[0].strategy_d, {0.5, 0.5}, 1e-9));
  CHECK(std::abs(eqs[0].value_a) < 1e-9);
}

TEST_CASE("prisoner's dilemma has the unique pure equilibrium (Defect, Defect)") {
  const Game pd = PrisonersDilemma();
  auto pure = BruteForcePureNash(pd);
  REQUIRE(pure.size() == 1);
  CHECK(pure[0] == std::make_pair(1, 1));
  // Defect strictly dominates for both players.
  for (int j = 0; j < 2; ++j) CHECK(pd.payoff_a()(1, j) > pd.payoff_a()(0, j));
  for (int i = 0; i < 2; ++i) CHECK(pd.payoff_d()(i, 1) > pd.payoff_d()(i, 0));

  auto eqs = SolveBehavioralNash(pd, 1e-9);
  REQUIRE(eqs.size() == 1);
  CHECK(NearVector(eqs[0].strategy_a, {0, 1}, 1e-9));
  CHECK(NearVector(eqs[0].strategy_d, {0, 1}, 1e-9));
  CHECK(eqs[0].value_a == doctest::Approx(-2.0));
}

TEST_CASE("degenerate games: constant payoffs yield the pure profiles") {
  const LabelSet two({"p", "q"});
  Game flat(two, two, Matrix(2, 2), Matrix(2, 2), false);
  auto eqs = SolveBehavioralNash(flat, 1e-9);
  CHECK(eqs.size() == 4);
  for (const auto& e : eqs) CHECK(IsEpsilonNash(flat, e.strategy_a, e.strategy_d, 1e-9));
}

TEST_CASE("too large games are rejected") {
  std::mt19937_64 rng(1);
  Game big = testing::RandomGame(rng, 13, 2);
  try {
    SolveBehavioralNash(big, 1e-9);
    FAIL("expected TooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kTooLarge);
  }
}

TEST_CASE("ZeroSumValue agrees with known values") {
  CHECK(ZeroSumValue(RockPaperScissors().payoff_a()) == doctest::Approx(0.0));
  CHECK(ZeroSumValue(MatchingPennies().payoff_a()) == doctest::Approx(0.0));
  // Saddle point at (row 1, col 0): value 2.
  CHECK(ZeroSumValue(Matrix::FromRows({{1, 0}, {2, 3}})) == doctest::Approx(2.0));
  // 2x2 without saddle: (ad - bc) / (a + d - b - c) = (3*4 - 1*2)/(3+4-1-2) = 2.5
  CHECK(ZeroSumValue(Matrix::FromRows({{3, 1}, {2, 4}})) == doctest::Approx(2.5));
}

TEST_CASE("property: soundness and serial/parallel agreement") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> size(1, 5);
  for (int trial = 0; trial < 200; ++trial) {
    Game g = testing::RandomGame(rng, size(rng), size(rng), trial % 3 == 0);
    auto parallel = SolveBehavioralNash(g, 1e-9);
    auto serial = SolveBehavioralNashSerial(g, 1e-9);
    REQUIRE(!parallel.empty());
    REQUIRE(parallel.size() == serial.size());
    for (size_t k = 0; k < parallel.size(); ++k) {
      CHECK(parallel[k].strategy_a == serial[k].strategy_a);
      CHECK(parallel[k].strategy_d == serial[k].strategy_d);
      CHECK(IsEpsilonNash(g, parallel[k].strategy_a, parallel[k].strategy_d, 1e-9));
      auto [u_a, u_d] = ExpectedUtility(g, parallel[k].strategy_a, parallel[k].strategy_d);
      CHECK(std::abs(u_a - parallel[k].value_a) <= 1e-9);
      CHECK(std::abs(u_d - parallel[k].value_d) <= 1e-9);
    }
    // Every exact pure equilibrium is among the returned profiles.
    for (const auto& [i, j] : BruteForcePureNash(g)) {
      bool found = false;
      for (const auto& p : parallel) {
        found = found || (p.strategy_a == PointMass(i, g.actions_a()) &&
                          p.strategy_d == PointMass(j, g.actions_d()));
      }
      CHECK(found);
    }
    if (g.zero_sum()) {
      CHECK(std::abs(parallel[0].value_a - ZeroSumValue(g.payoff_a())) < 1e-7);
    }
  }
}

}  // namespace
}  // namespace prompt_games
