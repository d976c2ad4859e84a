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

#ifndef PROMPT_GAMES_DIGEST_H_
#define PROMPT_GAMES_DIGEST_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace prompt_games {

// Incremental FNV-1a (64-bit). Stable across platforms and runs, which
// std::hash is not.
class Fnv1a {
 public:
  Fnv1a& Update(std::string_view bytes);
  // Appends a field separator so ("ab","c") and ("a","bc") differ.
  Fnv1a& Field(std::string_view bytes) { return Update(bytes).Update("\x1f"); }
  std::uint64_t value() const { return state_; }
  std::string Hex() const;

 private:
  std::uint64_t state_ = 14695981039346656037ull;
};

std::string ToHex(std::uint64_t value);

// Shortest decimal text that round-trips to `value` ("0.2", "1", "-3.5e-07").
// Non-finite values are rejected by callers before reaching here.
std::string CanonicalDecimal(double value);

// Digest of a real vector over its canonical decimal text.
std::string DecimalVectorDigest(std::span<const double> values);

}  // namespace prompt_games

#endif  // PROMPT_GAMES_DIGEST_H_
