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

#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include <fmt/format.h>

#include "doctest.h"
#include "prompt_games/error.h"
#include "mock_llm_server.h"

namespace prompt_games {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

const LabelSet& Rps() {
  static const LabelSet rps({"Rock", "Paper", "Scissors"});
  return rps;
}

fs::path TempFile(const std::string& name) {
  static std::mt19937_64 rng(std::random_device{}());
  fs::path dir = fs::temp_directory_path() / fmt::format("pg_http_{:x}", rng());
  fs::create_directories(dir);
  return dir / name;
}

std::map<std::string, MockResponse> Responses() {
  return MockLlmServer::ParseConfig(json::parse(R"({
    "responses": {
      "play x1": {"weights": {"Rock": 2, "Paper": 6, "Scissors": 2}},
      "play x2": {"weights": {"Rock": 1, "Paper": 1, "Scissors": 1}},
      "thirds":  {"weights": {"Rock": 1, "Paper": 1, "Scissors": 1.0000000001}},
      "down":    {"status": 503, "body": "busy"},
      "garbage": {"status": 200, "body": "certainly! here is my answer"},
      "no weights": {"status": 200, "body": {"probs": {"Rock": 1}}},
      "text weight": {"status": 200, "body": {"weights": {"Rock": "high"}}},
      "lizard":  {"weights": {"Rock": 1, "Lizard": 1}},
      "negative": {"weights": {"Rock": -1, "Paper": 2}},
      "zeros":   {"weights": {"Rock": 0, "Paper": 0, "Scissors": 0}}
    }
  })"));
}

HttpOracleOptions FastOptions(const std::string& url) {
  HttpOracleOptions options;
  options.url = url;
  options.initial_backoff = std::chrono::milliseconds(1);
  options.timeout = std::chrono::seconds(5);
  return options;
}

struct Query {
  Player player = Player::kA;
  InfoVector info{{0.2, 0.3, 0.5}, ""};
  PromptSpec prompt;
  std::string worldview = "mock";

  MixedStrategy Run(PolicyOracle& oracle) const {
    return InducePolicy(oracle, player, info, prompt, worldview, Rps());
  }
};

Error Failure(PolicyOracle& oracle, const std::string& text) {
  try {
    Query{.prompt = {"p", text}}.Run(oracle);
  } catch (const Error& e) {
    return e;
  }
  FAIL("expected an Error");
  return Error(ErrorCode::kIoError, "");
}

TEST_CASE("cold run fills the cache, warm run replays it without requests") {
  MockLlmServer server(Responses());
  server.Start();
  const fs::path cache_path = TempFile("cache.jsonl");

  std::vector<MixedStrategy> cold;
  {
    HttpOracle oracle(FastOptions(server.url()), std::make_shared<OracleCache>(cache_path));
    cold.push_back(Query{.prompt = {"x1", "play x1"}}.Run(oracle));
    cold.push_back(Query{.prompt = {"x2", "play x2"}}.Run(oracle));
    cold.push_back(Query{.prompt = {"t", "thirds"}}.Run(oracle));
    // Memoized: the repeat does not reach the server.
    cold.push_back(Query{.prompt = {"x1", "play x1"}}.Run(oracle));
    CHECK(oracle.requests_issued() == 3);
    CHECK(server.request_count() == 3);
  }
  CHECK(cold[0].weights() == std::vector<double>{0.2, 0.6, 0.2});
  CHECK(cold[3] == cold[0]);

  server.ResetCount();
  HttpOracle warm(FastOptions(server.url()), std::make_shared<OracleCache>(cache_path));
  CHECK(warm.cache().size() == 3);
  CHECK(Query{.prompt = {"x1", "play x1"}}.Run(warm) == cold[0]);
  CHECK(Query{.prompt = {"x2", "play x2"}}.Run(warm) == cold[1]);
  CHECK(Query{.prompt = {"t", "thirds"}}.Run(warm) == cold[2]);
  CHECK(warm.requests_issued() == 0);
  CHECK(server.request_count() == 0);

  // The replay needs no server at all.
  server.Stop();
  HttpOracle offline(FastOptions("http://127.0.0.1:1/v1/policy"),
                     std::make_shared<OracleCache>(cache_path));
  CHECK(Query{.prompt = {"t", "thirds"}}.Run(offline) == cold[2]);
  fs::remove_all(cache_path.parent_path());
}

TEST_CASE("cache records are keyed by the full oracle key") {
  MockLlmServer server(Responses());
  server.Start();
  HttpOracle oracle(FastOptions(server.url()), std::make_shared<OracleCache>(""));
  Query q{.prompt = {"x1", "play x1"}};
  q.Run(oracle);
  Query other_info = q;
  other_info.info.values[0] = 0.25;
  other_info.Run(oracle);
  Query other_worldview = q;
  other_worldview.worldview = "mock-2";
  other_worldview.Run(oracle);
  Query other_player = q;
  other_player.player = Player::kD;
  other_player.Run(oracle);
  CHECK(server.request_count() == 4);
  CHECK(oracle.cache().size() == 4);
}

TEST_CASE("non-200 answers are retried, then fail upstream") {
  MockLlmServer server(Responses());
  server.Start();
  HttpOracle oracle(FastOptions(server.url()), std::make_shared<OracleCache>(""));
  Error e = Failure(oracle, "down");
  CHECK(e.code() == ErrorCode::kUpstreamError);
  CHECK(e.from_oracle());
  CHECK(ExitCodeFor(e) == 3);
  CHECK(server.request_count() == 3);
  CHECK(oracle.cache().size() == 0);

  // Unknown prompt text: the mock answers 404, also retried.
  server.ResetCount();
  CHECK(Failure(oracle, "never configured").code() == ErrorCode::kUpstreamError);
  CHECK(server.request_count() == 3);
}

TEST_CASE("unreachable endpoint fails upstream after the configured attempts") {
  HttpOracleOptions options = FastOptions("http://127.0.0.1:1/v1/policy");
  options.max_attempts = 2;
  HttpOracle oracle(options, std::make_shared<OracleCache>(""));
  Error e = Failure(oracle, "play x1");
  CHECK(e.code() == ErrorCode::kUpstreamError);
  CHECK(oracle.requests_issued() == 2);
}

TEST_CASE("malformed 200 bodies fail at once with a specific code") {
  MockLlmServer server(Responses());
  server.Start();
  HttpOracle oracle(FastOptions(server.url()), std::make_shared<OracleCache>(""));
  const std::vector<std::pair<std::string, ErrorCode>> cases = {
      {"garbage", ErrorCode::kUnparseableResponse},
      {"no weights", ErrorCode::kUnparseableResponse},
      {"text weight", ErrorCode::kUnparseableResponse},
      {"lizard", ErrorCode::kUnknownLabel},
      {"negative", ErrorCode::kNegativeMass},
      {"zeros", ErrorCode::kAllZero},
  };
  for (const auto& [text, code] : cases) {
    CAPTURE(text);
    server.ResetCount();
    Error e = Failure(oracle, text);
    CHECK(e.code() == code);
    CHECK(e.from_oracle());
    CHECK(ExitCodeFor(e) == 3);
    CHECK(server.request_count() == 1);
  }
  CHECK(oracle.cache().size() == 0);
}

TEST_CASE("ParsePolicyResponse") {
  auto mu = ParsePolicyResponse(R"({"weights": {"Paper": 3, "Scissors": 1}})", Rps());
  CHECK(mu.weights() == std::vector<double>{0, 0.75, 0.25});
  try {
    ParsePolicyResponse("[1, 2, 3]", Rps());
    FAIL("expected UnparseableResponse");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kUnparseableResponse);
  }
}

TEST_CASE("cache file format") {
  const fs::path path = TempFile("records.jsonl");
  OracleKey key{Player::kD, "abc", "y1", "w", Rps().fingerprint()};
  {
    OracleCache cache(path);
    CHECK(cache.size() == 0);
    cache.Append(key, Rps(), {0.1, 0.2, 0.7});
    cache.Append(key, Rps(), {0.7, 0.2, 0.1});  // ignored: first record wins
  }
  std::ifstream in(path);
  std::string line;
  std::vector<json> records;
  while (std::getline(in, line)) records.push_back(json::parse(line));
  REQUIRE(records.size() == 1);
  CHECK(records[0]["player"] == "D");
  CHECK(records[0]["prompt_id"] == "y1");
  CHECK(records[0]["actions"] == json({"Rock", "Paper", "Scissors"}));
  CHECK(records[0].contains("created_at"));

  // A second record for the same key appended by hand does not override.
  {
    json extra = records[0];
    extra["weights"] = {1, 0, 0};
    std::ofstream out(path, std::ios::app);
    out << extra.dump() << "\n";
  }
  OracleCache reread(path);
  CHECK(reread.size() == 1);
  CHECK(*reread.Lookup(key) == std::vector<double>{0.1, 0.2, 0.7});

  {
    std::ofstream out(path, std::ios::app);
    out << "{not json\n";
  }
  try {
    OracleCache broken(path);
    FAIL("expected SchemaError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kSchemaError);
    CHECK(std::string(e.what()).find(":3:") != std::string::npos);
  }
  fs::remove_all(path.parent_path());
}

TEST_CASE("options come from the environment") {
  setenv(kLlmUrlEnv, "http://example.invalid/v1/policy", 1);
  setenv(kLlmTokenEnv, "secret", 1);
  HttpOracleOptions options = HttpOracleOptions::FromEnvironment();
  CHECK(options.url == "http://example.invalid/v1/policy");
  CHECK(options.token == "secret");
  CHECK(options.max_attempts == 3);
  CHECK(options.initial_backoff == std::chrono::milliseconds(500));
  unsetenv(kLlmUrlEnv);
  unsetenv(kLlmTokenEnv);
}

}  // namespace
}  // namespace prompt_games
