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

#include <string>
#include <string_view>

#include "smartswitch/errors.hpp"

namespace smartswitch::detail {

struct Endpoint {
  std::string base;  // scheme://host[:port]
  std::string path;  // starts with '/'
};

// Splits "http://host:port/path" into the part httplib::Client wants and
// the request path. Only plain http is supported.
inline Endpoint parse_endpoint(std::string_view url, std::string_view default_path) {
  constexpr std::string_view kScheme = "http://";
  if (url.substr(0, kScheme.size()) != kScheme)
    throw ConfigError("endpoint must start with http://: " + std::string(url));
  auto slash = url.find('/', kScheme.size());
  Endpoint ep;
  ep.base = std::string(url.substr(0, slash));
  ep.path = slash == std::string_view::npos ? std::string(default_path)
                                            : std::string(url.substr(slash));
  if (ep.base.size() == kScheme.size()) throw ConfigError("endpoint has no host: " + std::string(url));
  return ep;
}

}  // namespace smartswitch::detail
