# Copyright 2026 The SmartSwitch Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Python bindings for the SmartSwitch core.

Structured values (configs, scripts, traces, results) are plain dicts.
"""

import json as _json

from . import _smartswitch as _core
from ._smartswitch import (
    BackendError,
    ConfigError,
    ParseError,
    ProtocolError,
    ScoringError,
    SmartSwitchError,
    StreamScanner,
    answers_equivalent,
    approx_token_count,
    cue_table,
    deepen_prompt,
    extract_answer,
    map_scores,
    pass_at_1,
    render_universal_prm_prompt,
    scan_text,
    segment,
    switch_count,
    universal_prm_template,
)

__all__ = [
    "BackendError",
    "ConfigError",
    "ParseError",
    "ProtocolError",
    "ScoringError",
    "SmartSwitchError",
    "StreamScanner",
    "answers_equivalent",
    "approx_token_count",
    "bench",
    "cue_table",
    "deepen_prompt",
    "default_config",
    "extract_answer",
    "generate",
    "map_scores",
    "pass_at_1",
    "render_universal_prm_prompt",
    "scan_text",
    "segment",
    "segment_trace",
    "switch_count",
    "underthinking_frequency",
    "universal_prm_template",
    "validate_config",
]


def _dump(value):
    if value is None:
        return ""
    return value if isinstance(value, str) else _json.dumps(value)


def default_config():
    """The default engine configuration."""
    return _json.loads(_core.default_config())


def validate_config(config):
    """Validates a partial config and returns it with defaults filled in."""
    return _json.loads(_core.validate_config(_dump(config)))


def segment_trace(full_text, question=""):
    """Splits generated text into thoughts at switch cues."""
    return _json.loads(_core.segment_trace(full_text, question))


def underthinking_frequency(trace, L):
    """Number of thoughts shorter than L tokens; `trace` is a dict or text."""
    if isinstance(trace, str):
        trace = segment_trace(trace)
    return _core.underthinking_frequency(_dump(trace), L)


def generate(question, config=None, script=None, llm_endpoint="", prm_endpoint="", seed=None):
    """Runs one monitored generation against a scripted or HTTP backend."""
    return _json.loads(
        _core.generate(question, _dump(config), _dump(script), llm_endpoint, prm_endpoint, seed)
    )


def bench(dataset_path, config=None, script=None, llm_endpoint="", prm_endpoint="",
          compare_with_vanilla=True):
    """Runs a benchmark and returns its summary."""
    return _json.loads(
        _core.bench(str(dataset_path), _dump(config), _dump(script), llm_endpoint, prm_endpoint,
                    compare_with_vanilla)
    )
