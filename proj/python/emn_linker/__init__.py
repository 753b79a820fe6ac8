# Copyright 2026 The EMN Linker Authors.
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

"""Implicit entity linking in tweets with an Entity Model Network."""

from emn_linker._core import (
    ConfigError,
    EmnError,
    Graph,
    Linker,
    Ranker,
    clean,
    decompose_tag,
    run_cli,
)

__all__ = [
    "ConfigError",
    "EmnError",
    "Graph",
    "Linker",
    "Ranker",
    "clean",
    "decompose_tag",
    "run_cli",
]
