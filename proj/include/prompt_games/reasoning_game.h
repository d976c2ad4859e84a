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

#ifndef PROMPT_GAMES_REASONING_GAME_H_
#define PROMPT_GAMES_REASONING_GAME_H_

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "prompt_games/game.h"
#include "prompt_games/nash_solver.h"
#include "prompt_games/policy_oracle.h"

namespace prompt_games {

inline constexpr double kDefaultEquilibriumEps = 1e-9;

// The finite game over prompt spaces: u_a(x, y) is A's expected base-game
// payoff when A's prompt x and D's prompt y induce their policies.
struct LiftedGame {
  LabelSet prompts_a;
  LabelSet prompts_d;
  Matrix u_a;
  Matrix u_d;
  bool zero_sum = false;
  // Present when lifted from a base game; empty for matrix-only games.
  std::shared_ptr<const Game> base;
  PolicySet policies_a;
  PolicySet policies_d;

  // The lifted bimatrix as a Game whose "actions" are prompt ids.
  Game AsGame() const;
  // A matrix-only lifted game (no base game or policies attached).
  static LiftedGame FromMatrices(LabelSet prompts_a, LabelSet prompts_d, Matrix u_a, Matrix u_d);
};

// Fills both |X|x|Y| matrices exactly from the induced policies. Oracle
// queries run in prompt order on the calling thread; the cell loop is
// OpenMP-parallel and its result does not depend on scheduling.
LiftedGame Lift(const Game& base, PolicyOracle& oracle, const Mindset& mindset_a,
                const Mindset& mindset_d);
// Serial reference for Lift.
LiftedGame LiftSerial(const Game& base, PolicyOracle& oracle, const Mindset& mindset_a,
                      const Mindset& mindset_d);
// Lift from already-induced policy sets; `parallel` picks the cell kernel.
LiftedGame LiftPolicies(const Game& base, const LabelSet& prompts_a, PolicySet policies_a,
                        const LabelSet& prompts_d, PolicySet policies_d, bool parallel = true);

using PromptProfile = std::pair<std::string, std::string>;

// Every prompt pair from which neither player gains more than eps by
// switching prompts unilaterally, row-major.
std::vector<PromptProfile> PureReasoningEquilibria(const LiftedGame& lifted, double eps);

struct ReasoningEquilibrium {
  enum class Kind { kPure, kMixed };
  Kind kind;
  // For kPure, the single profile; empty for kMixed.
  std::vector<PromptProfile> pure_profiles;
  MixedStrategy sigma_a;
  MixedStrategy sigma_d;
  // sigma-weighted averages of the per-prompt policies; absent for
  // matrix-only lifted games.
  std::optional<MixedStrategy> induced_mu_a;
  std::optional<MixedStrategy> induced_mu_d;
  std::pair<double, double> values;
  double epsilon;
};

// The first equilibrium of the lifted bimatrix in the solver's order.
// Failure to find one is an internal error (kNoEquilibriumFound) whose
// message dumps the lifted matrices. kTooLarge beyond 12 prompts a side.
ReasoningEquilibrium MixedReasoningEquilibrium(const LiftedGame& lifted, double eps);
// Every equilibrium the solver finds, same order.
std::vector<ReasoningEquilibrium> AllMixedReasoningEquilibria(const LiftedGame& lifted, double eps);

// Σ_x sigma(x) * policies[x].
MixedStrategy InducedBehavior(const MixedStrategy& sigma, const PolicySet& policies,
                              const ActionSpace& actions);

struct PromptChoice {
  std::string prompt_id;
  double value;
};

// Best prompt for `player` against a fixed opponent prompt or prompt
// mixture; ties go to the earlier prompt. kUnknownPrompt for a bad id.
PromptChoice OptimalPrompt(const LiftedGame& lifted, Player player,
                           const std::string& opponent_prompt);
PromptChoice OptimalPrompt(const LiftedGame& lifted, Player player,
                           const MixedStrategy& opponent_sigma);

// Tabulates the reasoning policy info -> best prompt against a fixed
// opponent behavior, one entry per info instance.
std::vector<std::pair<InfoVector, std::string>> ReasoningPolicy(
    const Game& base, PolicyOracle& oracle, Player player, const std::vector<PromptSpec>& prompts,
    const std::string& worldview, const std::vector<InfoVector>& infos,
    const MixedStrategy& opponent_fixed);

}  // namespace prompt_games

#endif  // PROMPT_GAMES_REASONING_GAME_H_
