#
# Copyright 2026 The Anonkit Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
#
"""Tabular anonymization, worst-case reidentification risk and utility metrics."""

from anonkit._anonkit import (
    CapExceededError,
    Dataset,
    anonymize,
    assess,
    closeness_bounds,
    coarsening_intervals,
    default_config_json,
    generate,
    is_unique,
)

__all__ = [
    "CapExceededError",
    "Dataset",
    "anonymize",
    "assess",
    "closeness_bounds",
    "coarsening_intervals",
    "default_config_json",
    "generate",
    "is_unique",
]
