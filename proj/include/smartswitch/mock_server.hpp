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

#pragma once

#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "smartswitch/llm_client.hpp"
#include "smartswitch/prm_client.hpp"

namespace httplib {
class Server;
}

namespace smartswitch {

/// Serves any LlmClient / PrmClient pair over the HTTP wire protocols:
///   POST /generate  CompletionRequest JSON -> NDJSON StreamChunk lines
///   POST /score     PrmRequest JSON -> {"scores": [...]}
/// Used for end-to-end tests and for local smoke runs of the CLI.
class MockBackendServer {
 public:
  MockBackendServer(LlmClient& llm, PrmClient& prm);
  ~MockBackendServer();
  MockBackendServer(const MockBackendServer&) = delete;
  MockBackendServer& operator=(const MockBackendServer&) = delete;

  /// Binds and serves on a background thread. Port 0 picks a free port.
  /// Returns the bound port.
  int start(const std::string& host = "127.0.0.1", int port = 0);

  /// Binds and serves on the calling thread until stop().
  bool listen(const std::string& host, int port);
  void stop();

  /// Prompts received on /generate, in arrival order.
  std::vector<std::string> received_prompts() const;

 private:
  LlmClient& llm_;
  PrmClient& prm_;
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
  mutable std::mutex mu_;
  std::vector<std::string> prompts_;
};

}  // namespace smartswitch
