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

#include "smartswitch/answers.hpp"
#include "smartswitch/bench.hpp"
#include "smartswitch/config.hpp"
#include "smartswitch/cues.hpp"
#include "smartswitch/engine.hpp"
#include "smartswitch/errors.hpp"
#include "smartswitch/llm_client.hpp"
#include "smartswitch/metrics.hpp"
#include "smartswitch/prm_client.hpp"
#include "smartswitch/prompts.hpp"
#include "smartswitch/records.hpp"
#include "smartswitch/scanner.hpp"
#include "smartswitch/scoring.hpp"
#include "smartswitch/segmentation.hpp"
#include "smartswitch/session.hpp"
#include "smartswitch/tokens.hpp"
#include "smartswitch/trace.hpp"
