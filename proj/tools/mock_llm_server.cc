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

#include "mock_llm_server.h"

#include <chrono>
#include <stdexcept>

#include <fmt/format.h>

#include "httplib.h"

namespace prompt_games {

using nlohmann::json;

std::map<std::string, MockResponse> MockLlmServer::ParseConfig(const json& config) {
  std::map<std::string, MockResponse> responses;
  for (const auto& [prompt, spec] : config.at("responses").items()) {
    MockResponse r;
    if (spec.contains("weights")) {
      r.body = json{{"weights", spec.at("weights")}}.dump();
    } else {
      r.status = spec.value("status", 200);
      const json& body = spec.at("body");
      r.body = body.is_string() ? body.get<std::string>() : body.dump();
    }
    responses.emplace(prompt, std::move(r));
  }
  return responses;
}

MockLlmServer::MockLlmServer(std::map<std::string, MockResponse> responses)
    : responses_(std::move(responses)), server_(std::make_unique<httplib::Server>()) {
  Install();
}

MockLlmServer::~MockLlmServer() { Stop(); }

void MockLlmServer::Install() {
  server_->Post("/v1/policy", [this](const httplib::Request& req, httplib::Response& res) {
    ++requests_;
    json body = json::parse(req.body, nullptr, false);
    if (body.is_discarded() || !body.contains("prompt") || !body.contains("actions") ||
        body.value("deterministic", false) != true) {
      res.status = 400;
      res.set_content(R"({"error":"bad request"})", "application/json");
      return;
    }
    auto it = responses_.find(body["prompt"].get<std::string>());
    if (it == responses_.end()) {
      res.status = 404;
      res.set_content(R"({"error":"unknown prompt"})", "application/json");
      return;
    }
    res.status = it->second.status;
    res.set_content(it->second.body, "application/json");
  });
}

int MockLlmServer::Start(int port) {
  port_ = port == 0 ? server_->bind_to_any_port("127.0.0.1") : port;
  if (port != 0 && !server_->bind_to_port("127.0.0.1", port)) port_ = -1;
  if (port_ < 0) throw std::runtime_error("mock server could not bind");
  thread_ = std::thread([this] { server_->listen_after_bind(); });
  while (!server_->is_running()) std::this_thread::sleep_for(std::chrono::milliseconds(1));
  return port_;
}

void MockLlmServer::Listen(int port) {
  port_ = port;
  if (!server_->listen("127.0.0.1", port)) throw std::runtime_error("mock server could not bind");
}

void MockLlmServer::Stop() {
  if (server_) server_->stop();
  if (thread_.joinable()) thread_.join();
}

std::string MockLlmServer::url() const { return fmt::format("http://127.0.0.1:{}/v1/policy", port_); }

}  // namespace prompt_games
