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

#ifndef PROMPT_GAMES_SRC_JSON_UTIL_H_
#define PROMPT_GAMES_SRC_JSON_UTIL_H_

// Schema checking helpers shared by the file loaders. Every failure is a
// kSchemaError naming the JSON pointer of the offending value.

#include <string>
#include <vector>

#include <fmt/format.h>

#include "json.hpp"
#include "prompt_games/error.h"

namespace prompt_games::internal {

using nlohmann::json;

inline std::string Child(const std::string& pointer, const std::string& key) {
  return pointer + "/" + key;
}
inline std::string Child(const std::string& pointer, size_t index) {
  return pointer + "/" + std::to_string(index);
}

[[noreturn]] inline void SchemaFail(const std::string& pointer, const std::string& what) {
  throw Error(ErrorCode::kSchemaError, fmt::format("{}: {}", pointer.empty() ? "/" : pointer, what));
}

inline const json& Field(const json& obj, const std::string& pointer, const std::string& key) {
  if (!obj.is_object()) SchemaFail(pointer, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) SchemaFail(Child(pointer, key), "missing required field");
  return *it;
}

inline std::string AsString(const json& v, const std::string& pointer) {
  if (!v.is_string()) SchemaFail(pointer, "expected a string");
  return v.get<std::string>();
}

inline double AsNumber(const json& v, const std::string& pointer) {
  if (!v.is_number()) SchemaFail(pointer, "expected a number");
  return v.get<double>();
}

inline bool AsBool(const json& v, const std::string& pointer) {
  if (!v.is_boolean()) SchemaFail(pointer, "expected a boolean");
  return v.get<bool>();
}

inline const json& AsArray(const json& v, const std::string& pointer) {
  if (!v.is_array()) SchemaFail(pointer, "expected an array");
  return v;
}

inline std::vector<double> AsNumbers(const json& v, const std::string& pointer) {
  std::vector<double> out;
  for (size_t i = 0; i < AsArray(v, pointer).size(); ++i) {
    out.push_back(AsNumber(v[i], Child(pointer, i)));
  }
  return out;
}

inline std::vector<std::string> AsStrings(const json& v, const std::string& pointer) {
  std::vector<std::string> out;
  for (size_t i = 0; i < AsArray(v, pointer).size(); ++i) {
    out.push_back(AsString(v[i], Child(pointer, i)));
  }
  return out;
}

}  // namespace prompt_games::internal

#endif  // PROMPT_GAMES_SRC_JSON_UTIL_H_
