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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <utility>

#include <Eigen/Dense>
#include <fmt/format.h>

#include "prompt_games/error.h"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace prompt_games {
namespace {

// Solutions of the indifference system may come out slightly negative from
// round-off; anything above this is clamped to zero.
constexpr double kSupportClampTolerance = 1e-9;
constexpr double kResidualTolerance = 1e-9;

using Support = std::vector<int>;

// All size-k subsets of {0..n-1}, lexicographic.
std::vector<Support> Combinations(int n, int k) {
  std::vector<Support> out;
  Support current(k);
  for (int i = 0; i < k; ++i) current[i] = i;
  while (true) {
    out.push_back(current);
    int i = k - 1;
    while (i >= 0 && current[i] == n - k + i) --i;
    if (i < 0) break;
    ++current[i];
    for (int j = i + 1; j < k; ++j) current[j] = current[j - 1] + 1;
  }
  return out;
}

// Finds weights on `mixer` (the columns' owner) that make the other player
// indifferent across `indifferent`. `payoff(r, c)` is the indifferent
// player's payoff with r ranging over `indifferent` and c over `mixer`.
// Returns nullopt on a rank-deficient or inconsistent system.
template <typename PayoffFn>
std::optional<std::vector<double>> SolveIndifference(const Support& indifferent,
                                                     const Support& mixer, PayoffFn payoff) {
  const int equations = static_cast<int>(indifferent.size()) + 1;
  const int unknowns = static_cast<int>(mixer.size()) + 1;
  Eigen::MatrixXd lhs = Eigen::MatrixXd::Zero(equations, unknowns);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(equations);
  for (int r = 0; r < equations - 1; ++r) {
    for (int c = 0; c < unknowns - 1; ++c) lhs(r, c) = payoff(indifferent[r], mixer[c]);
    lhs(r, unknowns - 1) = -1.0;
  }
  for (int c = 0; c < unknowns - 1; ++c) lhs(equations - 1, c) = 1.0;
  rhs(equations - 1) = 1.0;

  Eigen::FullPivLU<Eigen::MatrixXd> lu(lhs);
  if (lu.rank() < unknowns) return std::nullopt;  // DegenerateSystem: skip
  Eigen::VectorXd sol = lu.solve(rhs);
  if ((lhs * sol - rhs).lpNorm<Eigen::Infinity>() > kResidualTolerance * (1.0 + lhs.lpNorm<Eigen::Infinity>())) {
    return std::nullopt;
  }
  std::vector<double> weights(mixer.size());
  for (size_t c = 0; c < mixer.size(); ++c) {
    if (!(sol(c) >= -kSupportClampTolerance)) return std::nullopt;
    weights[c] = std::max(0.0, sol(c));
  }
  return weights;
}

std::optional<MixedStrategy> Embed(const std::vector<double>& weights, const Support& support,
                                   const LabelSet& labels) {
  std::vector<double> full(labels.size(), 0.0);
  double sum = 0.0;
  for (size_t k = 0; k < support.size(); ++k) {
    full[support[k]] = weights[k];
    sum += weights[k];
  }
  if (std::abs(sum - 1.0) > kInputSumTolerance) return std::nullopt;
  return MakeMixed(full, labels);
}

std::optional<EquilibriumProfile> TrySupportPair(const Game& game, const Support& rows,
                                                 const Support& cols, double eps) {
  const Matrix& pa = game.payoff_a();
  const Matrix& pd = game.payoff_d();
  // D mixes over cols so that A is indifferent across rows, and vice versa.
  auto y = SolveIndifference(rows, cols, [&](int i, int j) { return pa(i, j); });
  if (!y) return std::nullopt;
  auto x = SolveIndifference(cols, rows, [&](int j, int i) { return pd(i, j); });
  if (!x) return std::nullopt;
  auto mu_a = Embed(*x, rows, game.actions_a());
  auto mu_d = Embed(*y, cols, game.actions_d());
  if (!mu_a || !mu_d) return std::nullopt;
  if (!IsEpsilonNash(game, *mu_a, *mu_d, eps)) return std::nullopt;
  auto [u_a, u_d] = ExpectedUtility(game, *mu_a, *mu_d);
  return EquilibriumProfile{std::move(*mu_a), std::move(*mu_d), u_a, u_d, eps};
}

struct SizeClass {
  std::vector<Support> rows;
  std::vector<Support> cols;
  std::int64_t pairs() const { return static_cast<std::int64_t>(rows.size()) * cols.size(); }
};

// Support size classes in enumeration order. The first pass pairs equal
// sizes; the fallback pass covers the remaining (k, l) with k != l.
std::vector<SizeClass> SizeClasses(int n, int m, bool equal_sizes) {
  std::vector<SizeClass> classes;
  for (int k = 1; k <= n; ++k) {
    for (int l = 1; l <= m; ++l) {
      if ((k == l) != equal_sizes) continue;
      classes.push_back({Combinations(n, k), Combinations(m, l)});
    }
  }
  return classes;
}

void AppendDistinct(std::vector<EquilibriumProfile>& out, EquilibriumProfile profile) {
  for (const auto& existing : out) {
    if (L1Distance(existing.strategy_a, profile.strategy_a) +
            L1Distance(existing.strategy_d, profile.strategy_d) <
        kDedupDistance) {
      return;
    }
  }
  out.push_back(std::move(profile));
}

std::vector<EquilibriumProfile> EnumerateSerial(const Game& game, double eps, bool equal_sizes) {
  std::vector<EquilibriumProfile> found;
  for (const SizeClass& sc : SizeClasses(game.actions_a().size(), game.actions_d().size(),
                                         equal_sizes)) {
    for (const Support& rows : sc.rows) {
      for (const Support& cols : sc.cols) {
        if (auto p = TrySupportPair(game, rows, cols, eps)) AppendDistinct(found, std::move(*p));
      }
    }
  }
  return found;
}

std::vector<EquilibriumProfile> EnumerateParallel(const Game& game, double eps, bool equal_sizes) {
  std::vector<EquilibriumProfile> found;
  for (const SizeClass& sc : SizeClasses(game.actions_a().size(), game.actions_d().size(),
                                         equal_sizes)) {
    const std::int64_t total = sc.pairs();
    const std::int64_t ncols = static_cast<std::int64_t>(sc.cols.size());
    std::vector<std::pair<std::int64_t, EquilibriumProfile>> hits;
#pragma omp parallel
    {
      std::vector<std::pair<std::int64_t, EquilibriumProfile>> local;
#pragma omp for schedule(dynamic, 64) nowait
      for (std::int64_t p = 0; p < total; ++p) {
        if (auto eq = TrySupportPair(game, sc.rows[p / ncols], sc.cols[p % ncols], eps)) {
          local.emplace_back(p, std::move(*eq));
        }
      }
#pragma omp critical(prompt_games_support_hits)
      for (auto& h : local) hits.push_back(std::move(h));
    }
    std::sort(hits.begin(), hits.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& h : hits) AppendDistinct(found, std::move(h.second));
  }
  return found;
}

void CheckSize(const Game& game) {
  if (game.actions_a().size() > kMaxSolverActions || game.actions_d().size() > kMaxSolverActions) {
    throw Error(ErrorCode::kTooLarge,
                fmt::format("{}x{} game exceeds the {}-action support-enumeration limit",
                            game.actions_a().size(), game.actions_d().size(), kMaxSolverActions));
  }
}

void VerifyZeroSumValues(const Game& game, const std::vector<EquilibriumProfile>& profiles,
                         double eps) {
  if (!game.zero_sum() || profiles.empty()) return;
  const double value = ZeroSumValue(game.payoff_a());
  const double tol = eps + 1e-7 * (1.0 + game.PayoffRange());
  for (const auto& p : profiles) {
    if (std::abs(p.value_a - value) > tol) {
      throw Error(ErrorCode::kInternalSolverFailure,
                  fmt::format("equilibrium value {} disagrees with minimax LP value {}", p.value_a,
                              value));
    }
  }
}

template <typename Enumerate>
std::vector<EquilibriumProfile> Solve(const Game& game, double eps, Enumerate enumerate) {
  CheckSize(game);
  std::vector<EquilibriumProfile> found = enumerate(game, eps, true);
  if (found.empty()) found = enumerate(game, eps, false);
  VerifyZeroSumValues(game, found, eps);
  return found;
}

}  // namespace

std::vector<EquilibriumProfile> SolveBehavioralNash(const Game& game, double eps) {
  return Solve(game, eps, EnumerateParallel);
}

std::vector<EquilibriumProfile> SolveBehavioralNashSerial(const Game& game, double eps) {
  return Solve(game, eps, EnumerateSerial);
}

double ZeroSumValue(const Matrix& payoff) {
  // Column player's LP on the shifted matrix M' = M + shift (entries >= 1):
  //   max 1'z  s.t.  M'z <= 1, z >= 0,   value(M') = 1 / max.
  // The slack basis is feasible, so one phase suffices. Bland's rule.
  const int n = payoff.rows();
  const int m = payoff.cols();
  const double shift = 1.0 - payoff.MinEntry();
  const int width = m + n + 1;  // z, slacks, rhs
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(n + 1, width);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) t(i, j) = payoff(i, j) + shift;
    t(i, m + i) = 1.0;
    t(i, width - 1) = 1.0;
  }
  for (int j = 0; j < m; ++j) t(n, j) = -1.0;
  std::vector<int> basis(n);
  for (int i = 0; i < n; ++i) basis[i] = m + i;

  constexpr double kPivotTol = 1e-12;
  for (int iter = 0; iter < 10000; ++iter) {
    int enter = -1;
    for (int j = 0; j < width - 1; ++j) {
      if (t(n, j) < -kPivotTol) {
        enter = j;
        break;
      }
    }
    if (enter < 0) {
      return 1.0 / t(n, width - 1) - shift;
    }
    int leave = -1;
    double best_ratio = 0.0;
    for (int i = 0; i < n; ++i) {
      if (t(i, enter) <= kPivotTol) continue;
      double ratio = t(i, width - 1) / t(i, enter);
      if (leave < 0 || ratio < best_ratio - kPivotTol ||
          (std::abs(ratio - best_ratio) <= kPivotTol && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave < 0) break;  // unbounded; impossible with positive M'
    t.row(leave) /= t(leave, enter);
    for (int i = 0; i <= n; ++i) {
      if (i != leave && t(i, enter) != 0.0) t.row(i) -= t(i, enter) * t.row(leave);
    }
    basis[leave] = enter;
  }
  throw Error(ErrorCode::kInternalSolverFailure, "minimax LP did not terminate");
}

}  // namespace prompt_games
