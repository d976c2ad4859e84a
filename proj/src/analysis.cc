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

#include "prompt_games/analysis.h"

#include <algorithm>
#include <limits>

#include "prompt_games/error.h"

namespace prompt_games {

GapReport UtilityGap(const Game& base, PolicyOracle& oracle, const Mindset& mindset,
                     Player player, const MixedStrategy& opponent_mu) {
  mindset.Validate();
  return UtilityGap(base, InducedPolicySet(oracle, player, mindset, base.actions(player)), player,
                    opponent_mu);
}

GapReport UtilityGap(const Game& base, const PolicySet& policies, Player player,
                     const MixedStrategy& opponent_mu) {
  if (policies.entries.empty()) throw Error(ErrorCode::kValidationError, "empty policy set");
  BestResponseResult br = BestResponse(base, player, opponent_mu);
  int best = -1;
  double best_value = 0.0;
  for (int k = 0; k < policies.size(); ++k) {
    const MixedStrategy& mu = policies.entries[k].strategy;
    auto [u_a, u_d] = player == Player::kA ? ExpectedUtility(base, mu, opponent_mu)
                                           : ExpectedUtility(base, opponent_mu, mu);
    const double value = player == Player::kA ? u_a : u_d;
    if (best < 0 || value > best_value) {
      best = k;
      best_value = value;
    }
  }
  return {player,
          br.value,
          best_value,
          br.value - best_value,
          base.actions(player).label(br.action),
          policies.entries[best].prompt_id};
}

std::string_view ExpressivenessName(Expressiveness relation) {
  switch (relation) {
    case Expressiveness::kMoreExpressive: return "MoreExpressive";
    case Expressiveness::kLessExpressive: return "LessExpressive";
    case Expressiveness::kEquivalent: return "Equivalent";
    case Expressiveness::kIncomparable: return "Incomparable";
  }
  return "Unknown";
}

namespace {

double NearestDistance(const MixedStrategy& mu, const PolicySet& set) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& e : set.entries) best = std::min(best, L1Distance(mu, e.strategy));
  return best;
}

// First strategy of `inner` farther than eps from all of `outer`.
std::optional<ExpressivenessWitness> Uncovered(const PolicySet& inner, const PolicySet& outer,
                                               double eps, ExpressivenessWitness::Missing missing) {
  for (const auto& e : inner.entries) {
    const double d = NearestDistance(e.strategy, outer);
    if (d > eps) return ExpressivenessWitness{missing, e.prompt_id, e.strategy, d};
  }
  return std::nullopt;
}

}  // namespace

ExpressivenessVerdict ExpressivenessOrder(const PolicySet& set_a, const PolicySet& set_b,
                                          double eps) {
  if (!set_a.entries.empty() && !set_b.entries.empty() &&
      set_a.entries.front().strategy.label_set_id() != set_b.entries.front().strategy.label_set_id()) {
    throw Error(ErrorCode::kActionSpaceMismatch, "policy sets range over different action spaces");
  }
  // B's strategies missing from A, and A's missing from B.
  auto b_outside_a = Uncovered(set_b, set_a, eps, ExpressivenessWitness::Missing::kFromA);
  auto a_outside_b = Uncovered(set_a, set_b, eps, ExpressivenessWitness::Missing::kFromB);
  ExpressivenessVerdict verdict{Expressiveness::kEquivalent, eps, {}};
  if (!b_outside_a && a_outside_b) verdict.relation = Expressiveness::kMoreExpressive;
  if (b_outside_a && !a_outside_b) verdict.relation = Expressiveness::kLessExpressive;
  if (b_outside_a && a_outside_b) verdict.relation = Expressiveness::kIncomparable;
  if (b_outside_a) verdict.witnesses.push_back(std::move(*b_outside_a));
  if (a_outside_b) verdict.witnesses.push_back(std::move(*a_outside_b));
  return verdict;
}

SupportResult IsSupported(const MixedStrategy& target, const PolicySet& set, double eps) {
  for (const auto& e : set.entries) {
    if (L1Distance(target, e.strategy) <= eps) return {true, e.prompt_id};
  }
  return {false, std::nullopt};
}

}  // namespace prompt_games
