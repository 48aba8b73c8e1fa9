"""Freeze known Betti tables from the brute-force resolution oracle.

Runs tests/syzygy_oracle.py on the twisted cubic, the elliptic quartic and
the elliptic quintic at two primes, checks the tables agree, and writes
tests/fixtures/known_betti.json.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "tests"))

from syzygy_oracle import betti_numbers  # noqa: E402

from ruledsyz.models import elliptic_normal_model, elliptic_points, rnc_model  # noqa: E402
from ruledsyz.verify import DEFAULT_CURVE  # noqa: E402

CASES = {
    "twisted_cubic": ("rnc", 3),
    "elliptic_quartic": ("elliptic", 4),
    "elliptic_quintic": ("elliptic", 5),
}


def oracle_table(kind: str, d: int, prime: int, n_points: int, p_max: int, j_max: int) -> dict:
    if kind == "rnc":
        model = rnc_model(d, prime)
    else:
        model = elliptic_normal_model(elliptic_points(*DEFAULT_CURVE, prime), d)
    betti = betti_numbers(model.sections[:, :n_points], prime, p_max, j_max)
    return {f"{i},{j}": v for (i, j), v in sorted(betti.items())}


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--primes", type=int, nargs=2, default=[10007, 10009])
    ap.add_argument("--points", type=int, default=200)
    ap.add_argument("--pmax", type=int, default=3)
    ap.add_argument("--jmax", type=int, default=5)
    ap.add_argument("--out", type=Path, default=ROOT / "tests" / "fixtures" / "known_betti.json")
    args = ap.parse_args()

    out = {
        "curve": {"A": DEFAULT_CURVE[0], "B": DEFAULT_CURVE[1]},
        "primes": args.primes,
        "p_max": args.pmax,
        "j_max": args.jmax,
        "sample_points": args.points,
        "tables": {},
    }
    for name, (kind, d) in CASES.items():
        tables = []
        for prime in args.primes:
            t = time.perf_counter()
            tables.append(oracle_table(kind, d, prime, args.points, args.pmax, args.jmax))
            print(f"{name} prime={prime}: {tables[-1]} ({time.perf_counter() - t:.1f}s)")
        if tables[0] != tables[1]:
            raise SystemExit(f"{name}: tables differ between primes")
        out["tables"][name] = {"kind": kind, "d": d, "betti": tables[0]}
    args.out.write_text(json.dumps(out, indent=2) + "\n")
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
