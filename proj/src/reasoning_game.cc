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
#include <sstream>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "prompt_games/error.h"

namespace prompt_games {

Game LiftedGame::AsGame() const { return Game(prompts_a, prompts_d, u_a, u_d, zero_sum); }

LiftedGame LiftedGame::FromMatrices(LabelSet prompts_a, LabelSet prompts_d, Matrix u_a,
                                    Matrix u_d) {
  bool zero_sum = u_a.rows() == u_d.rows() && u_a.cols() == u_d.cols() && u_d == u_a.Negated();
  LiftedGame lifted{std::move(prompts_a), std::move(prompts_d), std::move(u_a), std::move(u_d),
                    zero_sum, nullptr, {}, {}};
  lifted.AsGame();  // shape validation
  return lifted;
}

LiftedGame LiftPolicies(const Game& base, const LabelSet& prompts_a, PolicySet policies_a,
                        const LabelSet& prompts_d, PolicySet policies_d, bool parallel) {
  const int rows = prompts_a.size();
  const int cols = prompts_d.size();
  if (policies_a.size() != rows || policies_d.size() != cols) {
    throw Error(ErrorCode::kDimensionMismatch, "policy sets do not match the prompt spaces");
  }
  // Validate once so the cell kernel cannot throw.
  for (const auto& e : policies_a.entries) ExpectedUtility(base, e.strategy, Uniform(base.actions_d()));
  for (const auto& e : policies_d.entries) ExpectedUtility(base, Uniform(base.actions_a()), e.strategy);

  Matrix u_a(rows, cols);
  Matrix u_d(rows, cols);
  auto cell = [&](int x, int y) {
    auto [a, d] = ExpectedUtility(base, policies_a.entries[x].strategy,
                                  policies_d.entries[y].strategy);
    u_a(x, y) = a;
    u_d(x, y) = d;
  };
  if (parallel) {
#pragma omp parallel for collapse(2) schedule(static)
    for (int x = 0; x < rows; ++x) {
      for (int y = 0; y < cols; ++y) cell(x, y);
    }
  } else {
    for (int x = 0; x < rows; ++x) {
      for (int y = 0; y < cols; ++y) cell(x, y);
    }
  }
  return LiftedGame{prompts_a,
                    prompts_d,
                    std::move(u_a),
                    std::move(u_d),
                    base.zero_sum(),
                    std::make_shared<const Game>(base),
                    std::move(policies_a),
                    std::move(policies_d)};
}

namespace {

LiftedGame LiftImpl(const Game& base, PolicyOracle& oracle, const Mindset& mindset_a,
                    const Mindset& mindset_d, bool parallel) {
  mindset_a.Validate();
  mindset_d.Validate();
  PolicySet pa;
  PolicySet pd;
  try {
    pa = InducedPolicySet(oracle, Player::kA, mindset_a, base.actions_a());
    pd = InducedPolicySet(oracle, Player::kD, mindset_d, base.actions_d());
  } catch (const Error& e) {
    Annotate(e, "lift");
  }
  return LiftPolicies(base, mindset_a.PromptSpace(), std::move(pa), mindset_d.PromptSpace(),
                      std::move(pd), parallel);
}

std::string DumpMatrix(const Matrix& m) {
  std::ostringstream out;
  for (int r = 0; r < m.rows(); ++r) out << fmt::format("  {}\n", m.row(r));
  return out.str();
}

ReasoningEquilibrium FromProfile(const LiftedGame& lifted, const EquilibriumProfile& p) {
  const int ax = std::find(p.strategy_a.weights().begin(), p.strategy_a.weights().end(), 1.0) -
                 p.strategy_a.weights().begin();
  const int dy = std::find(p.strategy_d.weights().begin(), p.strategy_d.weights().end(), 1.0) -
                 p.strategy_d.weights().begin();
  const bool pure = ax < p.strategy_a.size() && dy < p.strategy_d.size();
  ReasoningEquilibrium eq{pure ? ReasoningEquilibrium::Kind::kPure : ReasoningEquilibrium::Kind::kMixed,
                          {},
                          p.strategy_a,
                          p.strategy_d,
                          std::nullopt,
                          std::nullopt,
                          {p.value_a, p.value_d},
                          p.epsilon};
  if (pure) eq.pure_profiles.emplace_back(lifted.prompts_a.label(ax), lifted.prompts_d.label(dy));
  if (lifted.base) {
    eq.induced_mu_a = InducedBehavior(p.strategy_a, lifted.policies_a, lifted.base->actions_a());
    eq.induced_mu_d = InducedBehavior(p.strategy_d, lifted.policies_d, lifted.base->actions_d());
  }
  return eq;
}

std::vector<EquilibriumProfile> SolveLifted(const LiftedGame& lifted, double eps) {
  std::vector<EquilibriumProfile> profiles = SolveBehavioralNash(lifted.AsGame(), eps);
  if (profiles.empty()) {
    throw Error(ErrorCode::kNoEquilibriumFound,
                fmt::format("support enumeration found no equilibrium of the {}x{} lifted game "
                            "(eps {}); this contradicts finite-game existence.\nprompts A: {}\n"
                            "prompts D: {}\nU_a:\n{}U_d:\n{}",
                            lifted.prompts_a.size(), lifted.prompts_d.size(), eps,
                            lifted.prompts_a.labels(), lifted.prompts_d.labels(),
                            DumpMatrix(lifted.u_a), DumpMatrix(lifted.u_d)));
  }
  return profiles;
}

}  // namespace

LiftedGame Lift(const Game& base, PolicyOracle& oracle, const Mindset& mindset_a,
                const Mindset& mindset_d) {
  return LiftImpl(base, oracle, mindset_a, mindset_d, true);
}

LiftedGame LiftSerial(const Game& base, PolicyOracle& oracle, const Mindset& mindset_a,
                      const Mindset& mindset_d) {
  return LiftImpl(base, oracle, mindset_a, mindset_d, false);
}

std::vector<PromptProfile> PureReasoningEquilibria(const LiftedGame& lifted, double eps) {
  std::vector<PromptProfile> out;
  const int rows = lifted.u_a.rows();
  const int cols = lifted.u_a.cols();
  for (int x = 0; x < rows; ++x) {
    for (int y = 0; y < cols; ++y) {
      bool stable = true;
      for (int xp = 0; xp < rows && stable; ++xp) {
        stable = lifted.u_a(x, y) >= lifted.u_a(xp, y) - eps;
      }
      for (int yp = 0; yp < cols && stable; ++yp) {
        stable = lifted.u_d(x, y) >= lifted.u_d(x, yp) - eps;
      }
      if (stable) out.emplace_back(lifted.prompts_a.label(x), lifted.prompts_d.label(y));
    }
  }
  return out;
}

ReasoningEquilibrium MixedReasoningEquilibrium(const LiftedGame& lifted, double eps) {
  return FromProfile(lifted, SolveLifted(lifted, eps).front());
}

std::vector<ReasoningEquilibrium> AllMixedReasoningEquilibria(const LiftedGame& lifted,
                                                              double eps) {
  std::vector<ReasoningEquilibrium> out;
  for (const auto& p : SolveLifted(lifted, eps)) out.push_back(FromProfile(lifted, p));
  return out;
}

MixedStrategy InducedBehavior(const MixedStrategy& sigma, const PolicySet& policies,
                              const ActionSpace& actions) {
  if (sigma.size() != policies.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "prompt mixture and policy set differ in length");
  }
  std::vector<double> mu(actions.size(), 0.0);
  for (int x = 0; x < sigma.size(); ++x) {
    const MixedStrategy& px = policies.entries[x].strategy;
    if (px.size() != actions.size()) {
      throw Error(ErrorCode::kDimensionMismatch, "policy does not range over the action space");
    }
    for (int a = 0; a < actions.size(); ++a) mu[a] += sigma[x] * px[a];
  }
  return MakeMixed(mu, actions);
}

namespace {

PromptChoice ArgMaxPrompt(const LabelSet& prompts, const std::vector<double>& values) {
  int best = 0;
  for (int k = 1; k < static_cast<int>(values.size()); ++k) {
    if (values[k] > values[best]) best = k;
  }
  return {prompts.label(best), values[best]};
}

}  // namespace

PromptChoice OptimalPrompt(const LiftedGame& lifted, Player player,
                           const std::string& opponent_prompt) {
  const LabelSet& opp = player == Player::kA ? lifted.prompts_d : lifted.prompts_a;
  const int idx = opp.IndexOf(opponent_prompt);
  if (idx < 0) {
    throw Error(ErrorCode::kUnknownPrompt,
                fmt::format("no prompt \"{}\" for player {}", opponent_prompt,
                            PlayerName(Opponent(player))));
  }
  return OptimalPrompt(lifted, player, PointMass(idx, opp));
}

PromptChoice OptimalPrompt(const LiftedGame& lifted, Player player,
                           const MixedStrategy& opponent_sigma) {
  Game game = lifted.AsGame();
  return ArgMaxPrompt(player == Player::kA ? lifted.prompts_a : lifted.prompts_d,
                      ActionValues(game, player, opponent_sigma));
}

std::vector<std::pair<InfoVector, std::string>> ReasoningPolicy(
    const Game& base, PolicyOracle& oracle, Player player, const std::vector<PromptSpec>& prompts,
    const std::string& worldview, const std::vector<InfoVector>& infos,
    const MixedStrategy& opponent_fixed) {
  const ActionSpace& actions = base.actions(player);
  std::vector<std::pair<InfoVector, std::string>> table;
  for (size_t k = 0; k < infos.size(); ++k) {
    Mindset mindset{infos[k], prompts, worldview};
    mindset.Validate();
    std::vector<double> values;
    try {
      for (const auto& prompt : prompts) {
        MixedStrategy mu = InducePolicy(oracle, player, infos[k], prompt, worldview, actions);
        auto [u_a, u_d] = player == Player::kA ? ExpectedUtility(base, mu, opponent_fixed)
                                               : ExpectedUtility(base, opponent_fixed, mu);
        values.push_back(player == Player::kA ? u_a : u_d);
      }
    } catch (const Error& e) {
      Annotate(e, fmt::format("info #{}", k));
    }
    table.emplace_back(infos[k], ArgMaxPrompt(mindset.PromptSpace(), values).prompt_id);
  }
  return table;
}

}  // namespace prompt_games
