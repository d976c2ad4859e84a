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

#ifndef PROMPT_GAMES_GAME_H_
#define PROMPT_GAMES_GAME_H_

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace prompt_games {

// Simplex tolerances. Fixed so golden outputs are reproducible.
inline constexpr double kInputSumTolerance = 1e-6;
inline constexpr double kSimplexTolerance = 1e-9;
inline constexpr double kNegativeMassTolerance = 1e-12;
// Largest action (or prompt) count the support-enumeration solver accepts.
inline constexpr int kMaxSolverActions = 12;

enum class Player { kA, kD };

std::string_view PlayerName(Player player);
// Parses "A" or "D"; throws kSchemaError otherwise.
Player ParsePlayer(std::string_view name);
inline Player Opponent(Player p) { return p == Player::kA ? Player::kD : Player::kA; }

// An ordered list of distinct labels: an action space or a prompt space.
// The order is canonical; all tie-breaking uses the index into it.
class LabelSet {
 public:
  LabelSet() = default;
  // Throws kValidationError when empty or when labels repeat.
  explicit LabelSet(std::vector<std::string> labels);

  int size() const { return static_cast<int>(labels_.size()); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(int index) const { return labels_.at(index); }
  // Index of `label`, or -1.
  int IndexOf(std::string_view label) const;
  // Digest of the ordered labels; two sets with equal labels in equal order
  // have equal fingerprints.
  std::uint64_t fingerprint() const { return fingerprint_; }

  bool operator==(const LabelSet& other) const { return labels_ == other.labels_; }

 private:
  std::vector<std::string> labels_;
  std::uint64_t fingerprint_ = 0;
};

using ActionSpace = LabelSet;

// Row-major dense matrix of payoffs; rows index player A, columns player D.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, fill) {}
  // Throws kLengthMismatch on ragged input.
  static Matrix FromRows(const std::vector<std::vector<double>>& rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double operator()(int r, int c) const { return data_[static_cast<size_t>(r) * cols_ + c]; }
  double& operator()(int r, int c) { return data_[static_cast<size_t>(r) * cols_ + c]; }
  std::span<const double> row(int r) const {
    return {data_.data() + static_cast<size_t>(r) * cols_, static_cast<size_t>(cols_)};
  }
  std::vector<std::vector<double>> ToRows() const;
  Matrix Negated() const;
  double MinEntry() const;
  double MaxEntry() const;

  bool operator==(const Matrix& other) const = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

// A probability vector over a LabelSet. Only constructible through
// MakeMixed / PointMass / Uniform, so every instance satisfies the simplex
// invariants: weights >= 0 and sum within kSimplexTolerance of 1.
class MixedStrategy {
 public:
  const std::vector<double>& weights() const { return weights_; }
  double operator[](int i) const { return weights_[i]; }
  int size() const { return static_cast<int>(weights_.size()); }
  std::uint64_t label_set_id() const { return label_set_id_; }

  bool operator==(const MixedStrategy& other) const = default;

 private:
  friend MixedStrategy MakeMixed(std::span<const double>, const LabelSet&);
  MixedStrategy(std::vector<double> weights, std::uint64_t label_set_id)
      : weights_(std::move(weights)), label_set_id_(label_set_id) {}

  std::vector<double> weights_;
  std::uint64_t label_set_id_ = 0;
};

// Validates `raw` as a simplex element over `labels`. Entries in
// [-1e-12, 0) are clamped to 0; a sum within 1e-6 of 1 is renormalized to 1.
// Throws kLengthMismatch, kNegativeMass or kBadSum.
MixedStrategy MakeMixed(std::span<const double> raw, const LabelSet& labels);
inline MixedStrategy MakeMixed(std::initializer_list<double> raw, const LabelSet& labels) {
  return MakeMixed(std::span<const double>(raw.begin(), raw.size()), labels);
}
MixedStrategy PointMass(int index, const LabelSet& labels);
MixedStrategy Uniform(const LabelSet& labels);

// L1 distance between two strategies over the same label set.
double L1Distance(const MixedStrategy& a, const MixedStrategy& b);

// The base two-player game (A, D, u_A, u_D).
class Game {
 public:
  // Throws kValidationError when matrix shapes disagree with the action
  // spaces, or when `zero_sum` is set and payoff_d != -payoff_a exactly.
  Game(ActionSpace actions_a, ActionSpace actions_d, Matrix payoff_a, Matrix payoff_d,
       bool zero_sum);
  // Zero-sum convenience: payoff_d = -payoff_a.
  static Game ZeroSum(ActionSpace actions_a, ActionSpace actions_d, Matrix payoff_a);

  const ActionSpace& actions(Player p) const { return p == Player::kA ? actions_a_ : actions_d_; }
  const ActionSpace& actions_a() const { return actions_a_; }
  const ActionSpace& actions_d() const { return actions_d_; }
  const Matrix& payoff(Player p) const { return p == Player::kA ? payoff_a_ : payoff_d_; }
  const Matrix& payoff_a() const { return payoff_a_; }
  const Matrix& payoff_d() const { return payoff_d_; }
  bool zero_sum() const { return zero_sum_; }
  // max - min over both payoff matrices.
  double PayoffRange() const;

  bool operator==(const Game& other) const = default;

 private:
  ActionSpace actions_a_;
  ActionSpace actions_d_;
  Matrix payoff_a_;
  Matrix payoff_d_;
  bool zero_sum_ = false;
};

// Standard rock-paper-scissors: +1 win, -1 loss, 0 tie for A; zero-sum.
Game RockPaperScissors();

// Exact bilinear expected utilities (u_A, u_D). Throws kDimensionMismatch.
std::pair<double, double> ExpectedUtility(const Game& game, const MixedStrategy& mu_a,
                                          const MixedStrategy& mu_d);

// Expected payoff of each of `player`'s pure actions against `opponent`.
std::vector<double> ActionValues(const Game& game, Player player, const MixedStrategy& opponent);

struct BestResponseResult {
  double value;
  int action;  // lowest index among maximizers
  MixedStrategy strategy;
};

BestResponseResult BestResponse(const Game& game, Player player, const MixedStrategy& opponent);

// True iff neither player gains more than eps by a unilateral deviation.
bool IsEpsilonNash(const Game& game, const MixedStrategy& mu_a, const MixedStrategy& mu_d,
                   double eps);

}  // namespace prompt_games

#endif  // PROMPT_GAMES_GAME_H_
