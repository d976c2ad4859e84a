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

#ifndef PROMPT_GAMES_HTTP_ORACLE_H_
#define PROMPT_GAMES_HTTP_ORACLE_H_

#include <atomic>
#include <chrono>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "prompt_games/policy_oracle.h"

namespace prompt_games {

inline constexpr char kLlmUrlEnv[] = "PROMPT_GAMES_LLM_URL";
inline constexpr char kLlmTokenEnv[] = "PROMPT_GAMES_LLM_TOKEN";

// Append-only JSON-lines store of oracle answers. One record per key:
//   {"player","info_hash","prompt_id","worldview","actions_fingerprint",
//    "actions","weights","created_at"}
// When a file holds several records for one key the first is authoritative.
// Single writer, many readers.
class OracleCache {
 public:
  // An empty path keeps the cache in memory only. A missing file is an
  // empty cache; a corrupt line is a kSchemaError naming the line.
  explicit OracleCache(std::filesystem::path path);

  std::optional<std::vector<double>> Lookup(const OracleKey& key) const;
  // Stores `weights` unless the key is already present.
  void Append(const OracleKey& key, const ActionSpace& actions, const std::vector<double>& weights);

  size_t size() const;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  mutable std::mutex mu_;
  std::map<OracleKey, std::vector<double>> records_;
};

struct HttpOracleOptions {
  std::string url;    // full endpoint, e.g. http://127.0.0.1:8080/v1/policy
  std::string token;  // sent as a bearer token when non-empty
  int max_attempts = 3;
  std::chrono::milliseconds initial_backoff{500};
  std::chrono::seconds timeout{60};

  // Reads PROMPT_GAMES_LLM_URL and PROMPT_GAMES_LLM_TOKEN.
  static HttpOracleOptions FromEnvironment();
};

// Live backend. Consults the cache first; on a miss issues one POST
//   {"prompt", "info", "actions", "deterministic": true}
// expecting {"weights": {label: score}}, normalizes the scores, records the
// answer in the cache and returns it.
//
// Transport failures and non-200 statuses are retried (exponential backoff)
// and end in kUpstreamError; a 200 with an unusable body fails immediately
// with kUnparseableResponse, kUnknownLabel, kNegativeMass or kAllZero.
class HttpOracle : public PolicyOracle {
 public:
  HttpOracle(HttpOracleOptions options, std::shared_ptr<OracleCache> cache);

  // Network requests sent so far (retries included).
  int requests_issued() const { return requests_; }
  const OracleCache& cache() const { return *cache_; }

 protected:
  MixedStrategy Evaluate(const OracleQuery& query) override;

 private:
  std::string Fetch(const std::string& body);

  HttpOracleOptions options_;
  std::shared_ptr<OracleCache> cache_;
  std::atomic<int> requests_{0};
};

// Parses a response body into a distribution over `actions`.
MixedStrategy ParsePolicyResponse(const std::string& body, const ActionSpace& actions);

}  // namespace prompt_games

#endif  // PROMPT_GAMES_HTTP_ORACLE_H_
