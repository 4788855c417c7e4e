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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace smartswitch {

/// Base for every error raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid EngineConfig, manifest, or flag combination.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file. `line()` is 1-based, 0 when not line oriented.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// PRM transport failure. Retryable; the engine degrades to "no intervention"
/// once retries are exhausted.
class ScoringError : public Error {
 public:
  using Error::Error;
};

/// A backend (LLM or PRM) answered with something that violates the wire
/// contract.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

/// LLM stream failure (connection lost, non-2xx status, scripted failure).
class BackendError : public Error {
 public:
  using Error::Error;
};

/// Session state would be corrupted by the requested operation.
class InvariantError : public Error {
 public:
  using Error::Error;
};

}  // namespace smartswitch
