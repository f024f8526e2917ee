# Copyright 2026 The Heraldix Authors
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

"""Exact few-photon simulation of a heralded linear-optical CNOT gate."""

from ._heraldix import (
    ConfigError,
    HeraldixError,
    bell_pattern_map,
    demux_schedule,
    efficiency_budget,
    eta_h_closed_form,
    herald_budget,
    pnrd_response,
    psi_minus_fidelity,
    reproduce_paper,
    simulate_table,
    table_fidelities,
)

__all__ = [
    "ConfigError",
    "HeraldixError",
    "bell_pattern_map",
    "demux_schedule",
    "efficiency_budget",
    "eta_h_closed_form",
    "herald_budget",
    "pnrd_response",
    "psi_minus_fidelity",
    "reproduce_paper",
    "simulate_table",
    "table_fidelities",
]
