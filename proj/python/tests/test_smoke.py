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

import math
import os
import pathlib

import pytest

import heraldix

GOLDEN = pathlib.Path(
    os.environ.get(
        "HERALDIX_GOLDEN_DIR",
        pathlib.Path(__file__).resolve().parents[2] / "data" / "golden",
    )
)


def test_pseudo_pnrd_two_photons():
    p = heraldix.pnrd_response(2, "pseudo_pnrd", 0.8, 4)
    assert p[:3] == pytest.approx([0.08, 0.44, 0.48], abs=1e-15)


def test_eta_h_printed_values():
    for kind, printed in (("ide", 0.00915), ("pse", 0.00875), ("sta", 0.00857)):
        assert abs(heraldix.eta_h_closed_form(kind, 0.175) - printed) <= 5e-5


def test_brute_force_matches_coherent_closed_form():
    r = 1 / math.sqrt(2)
    bf = heraldix.herald_budget(r, r, 0.6, 0.8j, 0.4)
    cf = heraldix.herald_budget(r, r, 0.6, 0.8j, 0.4, closed_form=True, form="coherent")
    for name, value in bf["p2_terms"].items():
        assert value == pytest.approx(cf["p2_terms"][name], abs=1e-12)


def test_ideal_truth_table():
    cells = heraldix.simulate_table("f1")
    want = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]
    for row, expected in zip(cells, want):
        assert row == pytest.approx(expected, abs=1e-10)


def test_golden_fidelities():
    a, b, c = (
        (GOLDEN / f"table_s1_{w}.csv").read_text() for w in "abc"
    )
    f = heraldix.table_fidelities(a, b, c)
    assert f["F1"] == pytest.approx(0.8775, abs=5e-4)
    assert f["F2"] == pytest.approx(0.8860, abs=5e-4)
    assert f["F3"] == pytest.approx(0.8677, abs=5e-4)
    assert f["entangling"] and f["parallelism"]


def test_bell_and_demux():
    assert heraldix.psi_minus_fidelity(0.8729, -0.8039, -0.7875) == pytest.approx(0.83425, abs=1e-4)
    counts = [heraldix.demux_schedule(100).count(c) for c in (1, 2, 3, 4)]
    assert counts == [25, 25, 25, 25]
    assert heraldix.efficiency_budget(0.263, 0.83, 0.80) == pytest.approx(0.174632)


def test_pattern_map():
    m = heraldix.bell_pattern_map()
    assert m["D_H1&D_H2"] == "Phi+"
    assert heraldix.bell_pattern_map(False)["D_H1&D_V2"] == "Psi+"


def test_errors_are_python_exceptions():
    with pytest.raises(heraldix.HeraldixError, match="no heralds"):
        heraldix.simulate_table("f1", eta_s=0.0)
    with pytest.raises(ValueError):
        heraldix.pnrd_response(2, "spad")
    with pytest.raises(heraldix.ConfigError):
        heraldix.reproduce_paper(str(GOLDEN / "missing"))
