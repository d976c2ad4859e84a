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

#ifndef PROMPT_GAMES_NASH_SOLVER_H_
#define PROMPT_GAMES_NASH_SOLVER_H_

#include <vector>

#include "prompt_games/game.h"

namespace prompt_games {

// Profiles closer than this (L1 over both strategies) are reported once.
inline constexpr double kDedupDistance = 1e-7;

struct EquilibriumProfile {
  MixedStrategy strategy_a;
  MixedStrategy strategy_d;
  double value_a;
  double value_d;
  double epsilon;  // tolerance the Nash conditions were verified at
};

// All equilibria found by support enumeration over support pairs of the
// game, in a deterministic order: support size ascending, then A's support
// in lexicographic combination order, then D's. Singular indifference
// systems are skipped. For zero-sum games every profile's value is checked
// against the minimax LP value (kInternalSolverFailure on disagreement).
//
// Support pairs are evaluated in parallel with OpenMP; the result is
// identical to SolveBehavioralNashSerial.
//
// Throws kTooLarge when either side has more than kMaxSolverActions actions.
std::vector<EquilibriumProfile> SolveBehavioralNash(const Game& game, double eps);

// Single-threaded reference for SolveBehavioralNash.
std::vector<EquilibriumProfile> SolveBehavioralNashSerial(const Game& game, double eps);

// Value of the zero-sum game with row payoffs `payoff` (row maximizes),
// computed with a dense simplex on the minimax LP.
double ZeroSumValue(const Matrix& payoff);

}  // namespace prompt_games

#endif  // PROMPT_GAMES_NASH_SOLVER_H_
