// Copyright 2026 The SmartSwitch Authors
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

#include "smartswitch/mock_server.hpp"

#include <httplib.h>

#include "smartswitch/errors.hpp"

namespace smartswitch {

using nlohmann::json;

MockBackendServer::MockBackendServer(LlmClient& llm, PrmClient& prm)
    : llm_(llm), prm_(prm), server_(std::make_unique<httplib::Server>()) {
  server_->Post("/generate", [this](const httplib::Request& req, httplib::Response& res) {
    CompletionRequest request;
    try {
      request = CompletionRequest::from_json(json::parse(req.body));
    } catch (const std::exception& e) {
      res.status = 400;
      res.set_content(e.what(), "text/plain");
      return;
    }
    {
      std::lock_guard lock(mu_);
      prompts_.push_back(request.prompt);
    }
    // Collect up front; a backend failure mid-stream becomes a truncated
    // body, which the client reports as a stream without a finished chunk.
    auto chunks = std::make_shared<std::vector<std::string>>();
    bool failed_before_output = false;
    try {
      llm_.stream(request, [&](const StreamChunk& c) {
        chunks->push_back(c.to_json().dump() + "\n");
        return true;
      });
    } catch (const Error& e) {
      if (chunks->empty()) failed_before_output = true;
    }
    if (failed_before_output) {
      res.status = 500;
      res.set_content("backend failure", "text/plain");
      return;
    }
    res.set_chunked_content_provider(
        "application/x-ndjson", [chunks, i = std::size_t{0}](std::size_t, httplib::DataSink& sink) mutable {
          if (i < chunks->size()) {
            const auto& line = (*chunks)[i++];
            return sink.write(line.data(), line.size());
          }
          sink.done();
          return true;
        });
  });

  server_->Post("/score", [this](const httplib::Request& req, httplib::Response& res) {
    try {
      auto request = PrmRequest::from_json(json::parse(req.body));
      auto scores = prm_.score(request);
      res.set_content(json{{"scores", scores}}.dump(), "application/json");
    } catch (const ScoringError& e) {
      res.status = 503;
      res.set_content(e.what(), "text/plain");
    } catch (const std::exception& e) {
      res.status = 400;
      res.set_content(e.what(), "text/plain");
    }
  });
}

MockBackendServer::~MockBackendServer() { stop(); }

int MockBackendServer::start(const std::string& host, int port) {
  int bound = port;
  if (port == 0) bound = server_->bind_to_any_port(host);
  else if (!server_->bind_to_port(host, port)) bound = -1;
  if (bound < 0) throw Error("mock server cannot bind " + host + ":" + std::to_string(port));
  thread_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
  return bound;
}

bool MockBackendServer::listen(const std::string& host, int port) {
  return server_->listen(host, port);
}

void MockBackendServer::stop() {
  if (server_) server_->stop();
  if (thread_.joinable()) thread_.join();
}

std::vector<std::string> MockBackendServer::received_prompts() const {
  std::lock_guard lock(mu_);
  return prompts_;
}

}  // namespace smartswitch
