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

// Serves a mock policy endpoint from a response-table file:
//   mock-llm-server --config scenarios/mock_llm_rps.json --port 8765

#include <iostream>

#include "CLI11.hpp"
#include "mock_llm_server.h"
#include "prompt_games/policy_oracle.h"

int main(int argc, char** argv) {
  CLI::App app{"Local mock of a policy endpoint"};
  std::string config;
  int port = 8765;
  app.add_option("--config", config, "response table (JSON)")->required();
  app.add_option("--port", port, "port on 127.0.0.1");
  CLI11_PARSE(app, argc, argv);

  try {
    prompt_games::MockLlmServer server(
        prompt_games::MockLlmServer::ParseConfig(prompt_games::ReadJsonFile(config)));
    std::cerr << "listening on http://127.0.0.1:" << port << "/v1/policy\n";
    server.Listen(port);
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  return 0;
}
