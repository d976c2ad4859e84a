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

#ifndef PROMPT_GAMES_TOOLS_MOCK_LLM_SERVER_H_
#define PROMPT_GAMES_TOOLS_MOCK_LLM_SERVER_H_

// A local stand-in for a policy endpoint. Answers POSTs on /v1/policy by
// looking up the request's "prompt" text in a fixed response table, and
// counts every request it receives.

#include <atomic>
#include <map>
#include <memory>
#include <string>
#include <thread>

#include "json.hpp"

namespace httplib {
class Server;
}

namespace prompt_games {

struct MockResponse {
  int status = 200;
  std::string body;
};

class MockLlmServer {
 public:
  // Config document: {"responses": {"<prompt text>": {"status": 200,
  //                   "body": <json>} | {"weights": {...}}}}
  static std::map<std::string, MockResponse> ParseConfig(const nlohmann::json& config);

  explicit MockLlmServer(std::map<std::string, MockResponse> responses);
  ~MockLlmServer();
  MockLlmServer(const MockLlmServer&) = delete;
  MockLlmServer& operator=(const MockLlmServer&) = delete;

  // Binds 127.0.0.1 (port 0 picks a free one) and serves on a background
  // thread. Returns the bound port.
  int Start(int port = 0);
  // Blocks serving on the calling thread.
  void Listen(int port);
  void Stop();

  std::string url() const;
  int request_count() const { return requests_; }
  void ResetCount() { requests_ = 0; }

 private:
  void Install();

  std::map<std::string, MockResponse> responses_;
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
  std::atomic<int> requests_{0};
  int port_ = 0;
};

}  // namespace prompt_games

#endif  // PROMPT_GAMES_TOOLS_MOCK_LLM_SERVER_H_
