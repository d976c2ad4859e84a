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

#ifndef PROMPT_GAMES_ANALYSIS_H_
#define PROMPT_GAMES_ANALYSIS_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "prompt_games/game.h"
#include "prompt_games/policy_oracle.h"

namespace prompt_games {

// Unconstrained best response versus the best prompt, against a fixed
// opponent behavior. gap = u_star - u_tilde_star is never negative beyond
// round-off, since every induced policy is itself a feasible behavior.
struct GapReport {
  Player player;
  double u_star;        // max over the simplex (attained at a pure action)
  double u_tilde_star;  // max over the mindset's prompts
  double gap;
  std::string best_action;
  std::string best_prompt;
};

GapReport UtilityGap(const Game& base, PolicyOracle& oracle, const Mindset& mindset,
                     Player player, const MixedStrategy& opponent_mu);
GapReport UtilityGap(const Game& base, const PolicySet& policies, Player player,
                     const MixedStrategy& opponent_mu);

enum class Expressiveness { kMoreExpressive, kLessExpressive, kEquivalent, kIncomparable };
std::string_view ExpressivenessName(Expressiveness relation);

// A strategy of one set with no counterpart within eps in the other.
struct ExpressivenessWitness {
  enum class Missing { kFromA, kFromB };  // which set lacks a counterpart
  Missing missing;
  std::string prompt_id;  // owner of the uncovered strategy
  MixedStrategy strategy;
  double distance;        // L1 to the nearest strategy of the other set
};

struct ExpressivenessVerdict {
  Expressiveness relation;  // of A relative to B
  double epsilon;
  std::vector<ExpressivenessWitness> witnesses;  // one per failing direction
};

// Orders two induced strategy sets by eps-inclusion under L1:
// B within A and not A within B means A is more expressive.
// kActionSpaceMismatch when the sets range over different actions.
ExpressivenessVerdict ExpressivenessOrder(const PolicySet& set_a, const PolicySet& set_b,
                                          double eps);

struct SupportResult {
  bool supported;
  std::optional<std::string> witness;  // first prompt within eps of the target
};

SupportResult IsSupported(const MixedStrategy& target, const PolicySet& set, double eps);

}  // namespace prompt_games

#endif  // PROMPT_GAMES_ANALYSIS_H_
