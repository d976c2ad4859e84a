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

#include "prompt_games/http_oracle.h"

#include <cstdlib>
#include <ctime>
#include <fstream>
#include <regex>
#include <thread>

#include <fmt/format.h>

#include "httplib.h"
#include "json.hpp"
#include "prompt_games/digest.h"
#include "prompt_games/error.h"

namespace prompt_games {

using nlohmann::json;

namespace {

std::string UtcNow() {
  std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

OracleKey KeyFromRecord(const json& rec) {
  return {ParsePlayer(rec.at("player").get<std::string>()), rec.at("info_hash").get<std::string>(),
          rec.at("prompt_id").get<std::string>(), rec.at("worldview").get<std::string>(),
          std::stoull(rec.at("actions_fingerprint").get<std::string>(), nullptr, 16)};
}

}  // namespace

OracleCache::OracleCache(std::filesystem::path path) : path_(std::move(path)) {
  if (path_.empty() || !std::filesystem::exists(path_)) return;
  std::ifstream in(path_);
  if (!in) throw Error(ErrorCode::kIoError, fmt::format("cannot read cache {}", path_.string()));
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      json rec = json::parse(line);
      records_.emplace(KeyFromRecord(rec), rec.at("weights").get<std::vector<double>>());
    } catch (const std::exception& e) {
      throw Error(ErrorCode::kSchemaError,
                  fmt::format("{}:{}: bad cache record: {}", path_.string(), lineno, e.what()));
    }
  }
}

std::optional<std::vector<double>> OracleCache::Lookup(const OracleKey& key) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = records_.find(key);
  if (it == records_.end()) return std::nullopt;
  return it->second;
}

void OracleCache::Append(const OracleKey& key, const ActionSpace& actions,
                         const std::vector<double>& weights) {
  std::lock_guard<std::mutex> lock(mu_);
  if (!records_.emplace(key, weights).second) return;
  if (path_.empty()) return;
  json rec = {{"player", PlayerName(key.player)},
              {"info_hash", key.info_hash},
              {"prompt_id", key.prompt_id},
              {"worldview", key.worldview},
              {"actions_fingerprint", ToHex(key.action_space_fingerprint)},
              {"actions", actions.labels()},
              {"weights", weights},
              {"created_at", UtcNow()}};
  std::ofstream out(path_, std::ios::app);
  if (!out) throw Error(ErrorCode::kIoError, fmt::format("cannot append to {}", path_.string()));
  out << rec.dump() << '\n';
}

size_t OracleCache::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return records_.size();
}

HttpOracleOptions HttpOracleOptions::FromEnvironment() {
  HttpOracleOptions options;
  if (const char* url = std::getenv(kLlmUrlEnv)) options.url = url;
  if (const char* token = std::getenv(kLlmTokenEnv)) options.token = token;
  return options;
}

HttpOracle::HttpOracle(HttpOracleOptions options, std::shared_ptr<OracleCache> cache)
    : options_(std::move(options)), cache_(std::move(cache)) {
  if (!cache_) cache_ = std::make_shared<OracleCache>(std::filesystem::path());
}

MixedStrategy ParsePolicyResponse(const std::string& body, const ActionSpace& actions) {
  json doc;
  try {
    doc = json::parse(body);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kUnparseableResponse, fmt::format("response is not JSON: {}", e.what()));
  }
  if (!doc.is_object() || !doc.contains("weights") || !doc["weights"].is_object()) {
    throw Error(ErrorCode::kUnparseableResponse, "response has no \"weights\" object");
  }
  std::map<std::string, double> raw;
  for (const auto& [label, value] : doc["weights"].items()) {
    if (!value.is_number()) {
      throw Error(ErrorCode::kUnparseableResponse,
                  fmt::format("weight for \"{}\" is not a number", label));
    }
    raw[label] = value.get<double>();
  }
  return NormalizeDistribution(raw, actions);
}

std::string HttpOracle::Fetch(const std::string& body) {
  static const std::regex kUrl(R"(^(https?://[^/]+)(/.*)?$)");
  std::smatch m;
  if (!std::regex_match(options_.url, m, kUrl)) {
    throw Error(ErrorCode::kUpstreamError,
                options_.url.empty() ? fmt::format("{} is not set", kLlmUrlEnv)
                                     : fmt::format("malformed endpoint URL \"{}\"", options_.url));
  }
  const std::string base = m[1];
  const std::string path = m[2].matched ? std::string(m[2]) : "/";

  httplib::Client client(base);
  client.set_connection_timeout(options_.timeout);
  client.set_read_timeout(options_.timeout);
  httplib::Headers headers;
  if (!options_.token.empty()) headers.emplace("Authorization", "Bearer " + options_.token);

  std::string last_failure;
  auto backoff = options_.initial_backoff;
  for (int attempt = 1; attempt <= options_.max_attempts; ++attempt) {
    ++requests_;
    auto res = client.Post(path, headers, body, "application/json");
    if (res && res->status == 200) return res->body;
    last_failure = res ? fmt::format("HTTP {}", res->status) : httplib::to_string(res.error());
    if (attempt < options_.max_attempts) {
      std::this_thread::sleep_for(backoff);
      backoff *= 2;
    }
  }
  throw Error(ErrorCode::kUpstreamError, fmt::format("{} failed after {} attempts: {}",
                                                     options_.url, options_.max_attempts,
                                                     last_failure));
}

MixedStrategy HttpOracle::Evaluate(const OracleQuery& query) {
  OracleKey key = query.Key();
  if (auto cached = cache_->Lookup(key)) return MakeMixed(*cached, query.actions);

  json request = {{"prompt", query.prompt.text},
                  {"info", query.info.values},
                  {"actions", query.actions.labels()},
                  {"deterministic", true}};
  MixedStrategy mu = ParsePolicyResponse(Fetch(request.dump()), query.actions);
  cache_->Append(key, query.actions, mu.weights());
  // Same construction as the warm path so cold and warm runs agree bit-for-bit.
  return MakeMixed(mu.weights(), query.actions);
}

}  // namespace prompt_games
