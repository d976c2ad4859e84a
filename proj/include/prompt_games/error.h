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

#ifndef PROMPT_GAMES_ERROR_H_
#define PROMPT_GAMES_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace prompt_games {

enum class ErrorCode {
  // Simplex construction.
  kNegativeMass,
  kBadSum,
  kAllZero,
  kLengthMismatch,
  kDimensionMismatch,
  kUnknownLabel,
  kActionSpaceMismatch,
  // Solvers.
  kDegenerateSystem,
  kTooLarge,
  kNoEquilibriumFound,
  kInternalSolverFailure,
  // Oracles.
  kMissingEntry,
  kUpstreamError,
  kUnparseableResponse,
  kDuplicateKey,
  kUnknownPrompt,
  // Scenario files.
  kSchemaError,
  kValidationError,
  kIoError,
};

std::string_view ErrorCodeName(ErrorCode code);

class Error;
// Process exit status for an error: 2 schema/validation, 3 oracle failure,
// 4 internal solver failure.
int ExitCodeFor(const Error& error);

// Every failure raised by the library. The code is the stable part; the
// message carries location details (prompt id, JSON pointer, cell, ...).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, bool from_oracle = false)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code),
        detail_(message),
        from_oracle_(from_oracle) {}

  ErrorCode code() const { return code_; }
  const std::string& detail() const { return detail_; }
  // Raised while a policy oracle was producing a distribution (including
  // normalization of its answer).
  bool from_oracle() const { return from_oracle_; }

 private:
  ErrorCode code_;
  std::string detail_;
  bool from_oracle_;
};

// Rethrows `error` with `context` prepended to the message, keeping the code
// and origin.
[[noreturn]] void Annotate(const Error& error, const std::string& context);

}  // namespace prompt_games

#endif  // PROMPT_GAMES_ERROR_H_
