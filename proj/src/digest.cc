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

#include "prompt_games/digest.h"

#include <charconv>

#include <fmt/format.h>

namespace prompt_games {

Fnv1a& Fnv1a::Update(std::string_view bytes) {
  for (unsigned char c : bytes) {
    state_ ^= c;
    state_ *= 1099511628211ull;
  }
  return *this;
}

std::string Fnv1a::Hex() const { return ToHex(state_); }

std::string ToHex(std::uint64_t value) { return fmt::format("{:016x}", value); }

std::string CanonicalDecimal(double value) {
  if (value == 0.0) return "0";  // folds -0
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, end);
}

std::string DecimalVectorDigest(std::span<const double> values) {
  Fnv1a h;
  for (double v : values) h.Field(CanonicalDecimal(v));
  return h.Hex();
}

}  // namespace prompt_games
