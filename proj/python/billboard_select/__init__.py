# Copyright 2026 The Authors.
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

"""Context-dependent billboard slot and tag selection."""

from billboard_select._core import (
    BASELINES,
    BillboardError,
    CapExceededError,
    InfeasibleError,
    Instance,
    ParseError,
    SolveResult,
    ValidationError,
    baseline,
    exhaustive,
    generate_synthetic,
    greedy,
    influence,
    load_instance,
    save_instance,
    solve,
    stochastic_greedy,
    validate_selection,
)

__all__ = [
    "BASELINES",
    "BillboardError",
    "CapExceededError",
    "InfeasibleError",
    "Instance",
    "ParseError",
    "SolveResult",
    "ValidationError",
    "baseline",
    "exhaustive",
    "generate_synthetic",
    "greedy",
    "influence",
    "load_instance",
    "save_instance",
    "solve",
    "stochastic_greedy",
    "validate_selection",
]
