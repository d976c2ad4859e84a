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

#include "prompt_games/error.h"

namespace prompt_games {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNegativeMass: return "NegativeMass";
    case ErrorCode::kBadSum: return "BadSum";
    case ErrorCode::kAllZero: return "AllZero";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kUnknownLabel: return "UnknownLabel";
    case ErrorCode::kActionSpaceMismatch: return "ActionSpaceMismatch";
    case ErrorCode::kDegenerateSystem: return "DegenerateSystem";
    case ErrorCode::kTooLarge: return "TooLarge";
    case ErrorCode::kNoEquilibriumFound: return "NoEquilibriumFound";
    case ErrorCode::kInternalSolverFailure: return "InternalSolverFailure";
    case ErrorCode::kMissingEntry: return "MissingEntry";
    case ErrorCode::kUpstreamError: return "UpstreamError";
    case ErrorCode::kUnparseableResponse: return "UnparseableResponse";
    case ErrorCode::kDuplicateKey: return "DuplicateKey";
    case ErrorCode::kUnknownPrompt: return "UnknownPrompt";
    case ErrorCode::kSchemaError: return "SchemaError";
    case ErrorCode::kValidationError: return "ValidationError";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

void Annotate(const Error& error, const std::string& context) {
  throw Error(error.code(), context + ": " + error.detail(), error.from_oracle());
}

int ExitCodeFor(const Error& error) {
  if (error.from_oracle()) return 3;
  switch (error.code()) {
    case ErrorCode::kMissingEntry:
    case ErrorCode::kUpstreamError:
    case ErrorCode::kUnparseableResponse:
      return 3;
    case ErrorCode::kDegenerateSystem:
    case ErrorCode::kNoEquilibriumFound:
    case ErrorCode::kInternalSolverFailure:
      return 4;
    default:
      return 2;
  }
}

}  // namespace prompt_games
