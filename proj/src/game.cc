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

#include "prompt_games/game.h"

#include <algorithm>
#include <cmath>
#include <set>

#include <fmt/format.h>

#include "prompt_games/digest.h"
#include "prompt_games/error.h"

namespace prompt_games {

std::string_view PlayerName(Player player) { return player == Player::kA ? "A" : "D"; }

Player ParsePlayer(std::string_view name) {
  if (name == "A") return Player::kA;
  if (name == "D") return Player::kD;
  throw Error(ErrorCode::kSchemaError, fmt::format("player must be \"A\" or \"D\", got \"{}\"", name));
}

LabelSet::LabelSet(std::vector<std::string> labels) : labels_(std::move(labels)) {
  if (labels_.empty()) throw Error(ErrorCode::kValidationError, "label set is empty");
  std::set<std::string_view> seen;
  Fnv1a h;
  for (const auto& l : labels_) {
    if (!seen.insert(l).second) {
      throw Error(ErrorCode::kValidationError, fmt::format("duplicate label \"{}\"", l));
    }
    h.Field(l);
  }
  fingerprint_ = h.value();
}

int LabelSet::IndexOf(std::string_view label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  return it == labels_.end() ? -1 : static_cast<int>(it - labels_.begin());
}

Matrix Matrix::FromRows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) return Matrix();
  Matrix m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
  for (int r = 0; r < m.rows(); ++r) {
    if (static_cast<int>(rows[r].size()) != m.cols()) {
      throw Error(ErrorCode::kLengthMismatch,
                  fmt::format("row {} has {} entries, expected {}", r, rows[r].size(), m.cols()));
    }
    for (int c = 0; c < m.cols(); ++c) m(r, c) = rows[r][c];
  }
  return m;
}

std::vector<std::vector<double>> Matrix::ToRows() const {
  std::vector<std::vector<double>> out(rows_);
  for (int r = 0; r < rows_; ++r) out[r].assign(row(r).begin(), row(r).end());
  return out;
}

Matrix Matrix::Negated() const {
  Matrix m = *this;
  for (double& v : m.data_) v = -v;
  return m;
}

double Matrix::MinEntry() const { return *std::min_element(data_.begin(), data_.end()); }
double Matrix::MaxEntry() const { return *std::max_element(data_.begin(), data_.end()); }

MixedStrategy MakeMixed(std::span<const double> raw, const LabelSet& labels) {
  if (static_cast<int>(raw.size()) != labels.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                fmt::format("{} weights for {} labels", raw.size(), labels.size()));
  }
  std::vector<double> w(raw.begin(), raw.end());
  double sum = 0.0;
  for (size_t i = 0; i < w.size(); ++i) {
    if (!std::isfinite(w[i])) {
      throw Error(ErrorCode::kBadSum, fmt::format("weight for \"{}\" is not finite", labels.label(i)));
    }
    if (w[i] < -kNegativeMassTolerance) {
      throw Error(ErrorCode::kNegativeMass,
                  fmt::format("weight {} for \"{}\" is negative", w[i], labels.label(i)));
    }
    if (w[i] < 0.0) w[i] = 0.0;
    sum += w[i];
  }
  if (std::abs(sum - 1.0) > kInputSumTolerance) {
    throw Error(ErrorCode::kBadSum, fmt::format("weights sum to {}", sum));
  }
  if (sum != 1.0) {
    for (double& v : w) v /= sum;
  }
  return MixedStrategy(std::move(w), labels.fingerprint());
}

MixedStrategy PointMass(int index, const LabelSet& labels) {
  std::vector<double> w(labels.size(), 0.0);
  w.at(index) = 1.0;
  return MakeMixed(w, labels);
}

MixedStrategy Uniform(const LabelSet& labels) {
  std::vector<double> w(labels.size(), 1.0 / labels.size());
  return MakeMixed(w, labels);
}

double L1Distance(const MixedStrategy& a, const MixedStrategy& b) {
  if (a.label_set_id() != b.label_set_id() || a.size() != b.size()) {
    throw Error(ErrorCode::kActionSpaceMismatch, "strategies range over different label sets");
  }
  double d = 0.0;
  for (int i = 0; i < a.size(); ++i) d += std::abs(a[i] - b[i]);
  return d;
}

Game::Game(ActionSpace actions_a, ActionSpace actions_d, Matrix payoff_a, Matrix payoff_d,
           bool zero_sum)
    : actions_a_(std::move(actions_a)),
      actions_d_(std::move(actions_d)),
      payoff_a_(std::move(payoff_a)),
      payoff_d_(std::move(payoff_d)),
      zero_sum_(zero_sum) {
  for (const Matrix* m : {&payoff_a_, &payoff_d_}) {
    if (m->rows() != actions_a_.size() || m->cols() != actions_d_.size()) {
      throw Error(ErrorCode::kValidationError,
                  fmt::format("payoff matrix is {}x{}, action spaces are {}x{}", m->rows(),
                              m->cols(), actions_a_.size(), actions_d_.size()));
    }
  }
  for (int r = 0; r < payoff_a_.rows(); ++r) {
    for (int c = 0; c < payoff_a_.cols(); ++c) {
      if (!std::isfinite(payoff_a_(r, c)) || !std::isfinite(payoff_d_(r, c))) {
        throw Error(ErrorCode::kValidationError, fmt::format("payoff ({}, {}) is not finite", r, c));
      }
      if (zero_sum_ && payoff_d_(r, c) != -payoff_a_(r, c)) {
        throw Error(ErrorCode::kValidationError,
                    fmt::format("zero_sum set but payoff_d[{}][{}] != -payoff_a[{}][{}]", r, c, r, c));
      }
    }
  }
}

Game Game::ZeroSum(ActionSpace actions_a, ActionSpace actions_d, Matrix payoff_a) {
  Matrix payoff_d = payoff_a.Negated();
  return Game(std::move(actions_a), std::move(actions_d), std::move(payoff_a), std::move(payoff_d),
              true);
}

double Game::PayoffRange() const {
  return std::max(payoff_a_.MaxEntry(), payoff_d_.MaxEntry()) -
         std::min(payoff_a_.MinEntry(), payoff_d_.MinEntry());
}

Game RockPaperScissors() {
  ActionSpace rps({"Rock", "Paper", "Scissors"});
  return Game::ZeroSum(rps, rps, Matrix::FromRows({{0, -1, 1}, {1, 0, -1}, {-1, 1, 0}}));
}

namespace {

void CheckOver(const MixedStrategy& mu, const LabelSet& labels, std::string_view what) {
  if (mu.size() != labels.size() || mu.label_set_id() != labels.fingerprint()) {
    throw Error(ErrorCode::kDimensionMismatch,
                fmt::format("{} has {} weights and does not range over the expected {} actions",
                            what, mu.size(), labels.size()));
  }
}

double Bilinear(const Matrix& m, const MixedStrategy& mu_a, const MixedStrategy& mu_d) {
  double total = 0.0;
  for (int i = 0; i < m.rows(); ++i) {
    if (mu_a[i] == 0.0) continue;
    double row = 0.0;
    for (int j = 0; j < m.cols(); ++j) row += m(i, j) * mu_d[j];
    total += mu_a[i] * row;
  }
  return total;
}

}  // namespace

std::pair<double, double> ExpectedUtility(const Game& game, const MixedStrategy& mu_a,
                                          const MixedStrategy& mu_d) {
  CheckOver(mu_a, game.actions_a(), "mu_A");
  CheckOver(mu_d, game.actions_d(), "mu_D");
  return {Bilinear(game.payoff_a(), mu_a, mu_d), Bilinear(game.payoff_d(), mu_a, mu_d)};
}

std::vector<double> ActionValues(const Game& game, Player player, const MixedStrategy& opponent) {
  CheckOver(opponent, game.actions(Opponent(player)), "opponent strategy");
  const Matrix& m = game.payoff(player);
  std::vector<double> values;
  if (player == Player::kA) {
    values.assign(m.rows(), 0.0);
    for (int i = 0; i < m.rows(); ++i) {
      for (int j = 0; j < m.cols(); ++j) values[i] += m(i, j) * opponent[j];
    }
  } else {
    values.assign(m.cols(), 0.0);
    for (int j = 0; j < m.cols(); ++j) {
      for (int i = 0; i < m.rows(); ++i) values[j] += m(i, j) * opponent[i];
    }
  }
  return values;
}

BestResponseResult BestResponse(const Game& game, Player player, const MixedStrategy& opponent) {
  std::vector<double> values = ActionValues(game, player, opponent);
  int best = 0;
  for (int k = 1; k < static_cast<int>(values.size()); ++k) {
    if (values[k] > values[best]) best = k;
  }
  return {values[best], best, PointMass(best, game.actions(player))};
}

bool IsEpsilonNash(const Game& game, const MixedStrategy& mu_a, const MixedStrategy& mu_d,
                   double eps) {
  auto [u_a, u_d] = ExpectedUtility(game, mu_a, mu_d);
  return BestResponse(game, Player::kA, mu_d).value - u_a <= eps &&
         BestResponse(game, Player::kD, mu_a).value - u_d <= eps;
}

}  // namespace prompt_games
