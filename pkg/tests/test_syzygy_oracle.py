import json
from pathlib import Path

import numpy as np
from syzygy_oracle import betti_numbers

from ruledsyz.models import elliptic_normal_model, elliptic_points, rnc_model

FIXTURES = json.loads((Path(__file__).parent / "fixtures" / "known_betti.json").read_text())


def test_fixtures_hold_the_classical_values():
    t = {k: v["betti"] for k, v in FIXTURES["tables"].items()}
    assert t["twisted_cubic"] == {"0,0": 1, "1,2": 3, "2,3": 2}
    assert t["elliptic_quartic"] == {"0,0": 1, "1,2": 2, "2,4": 1}
    assert t["elliptic_quintic"] == {"0,0": 1, "1,2": 5, "2,3": 5, "3,5": 1}
    assert len(set(FIXTURES["primes"])) == 2 and min(FIXTURES["primes"]) >= 10007


def test_oracle_reproduces_small_fixtures():
    p = FIXTURES["primes"][0]
    cubic = betti_numbers(rnc_model(3, p).sections[:, :200], p, 3, 5)
    assert {f"{i},{j}": v for (i, j), v in cubic.items()} == FIXTURES["tables"]["twisted_cubic"]["betti"]
    quartic = betti_numbers(elliptic_normal_model(elliptic_points(2, 3, p), 4).sections[:, :200], p, 3, 5)
    assert {f"{i},{j}": v for (i, j), v in quartic.items()} == FIXTURES["tables"]["elliptic_quartic"]["betti"]


def test_oracle_on_plane_conic():
    # a conic: one quadric, no syzygies
    u = np.arange(50)
    vals = np.vstack([np.ones(50, dtype=np.int64), u, u * u])
    assert betti_numbers(vals, 10007, 2, 4) == {(0, 0): 1, (1, 2): 1}
