"""Write N_p verdict grids (the data behind region plots) as CSV files.

One file per (e, p) under --out, same schema as ``ruledsyz scan``, plus a
compact text rendering of the proven / conjectured regions on stdout.
"""
from __future__ import annotations

import argparse
import csv
from dataclasses import dataclass
from pathlib import Path

from ruledsyz.numeric import scan

GLYPH = {"proven_yes": "#", "conjectured_yes": "+", "proven_no": ".", "conjectured_no": " ", "unknown": "?"}


@dataclass
class ScanConfig:
    e_values: tuple[int, ...] = (-1, 0, 1)
    p_values: tuple[int, ...] = (0, 1, 2, 3)
    a_range: tuple[int, int] = (0, 10)
    b_range: tuple[int, int] = (-5, 15)
    out: Path = Path("scan_out")


def render(rows, a_range, b_range) -> str:
    cell = {(a, b): GLYPH[st.verdict.value] for a, b, st in rows}
    lines = []
    for b in range(b_range[1], b_range[0] - 1, -1):
        lines.append(f"{b:4d} " + "".join(cell[(a, b)] for a in range(a_range[0], a_range[1] + 1)))
    lines.append("     " + "".join(str(a % 10) for a in range(a_range[0], a_range[1] + 1)) + "  (a)")
    return "\n".join(lines)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--e", type=int, nargs="+", default=list(ScanConfig.e_values))
    ap.add_argument("--p", type=int, nargs="+", default=list(ScanConfig.p_values))
    ap.add_argument("--amin", type=int, default=ScanConfig.a_range[0])
    ap.add_argument("--amax", type=int, default=ScanConfig.a_range[1])
    ap.add_argument("--bmin", type=int, default=ScanConfig.b_range[0])
    ap.add_argument("--bmax", type=int, default=ScanConfig.b_range[1])
    ap.add_argument("--out", type=Path, default=ScanConfig.out)
    args = ap.parse_args()
    cfg = ScanConfig(tuple(args.e), tuple(args.p), (args.amin, args.amax), (args.bmin, args.bmax), args.out)

    cfg.out.mkdir(parents=True, exist_ok=True)
    for e in cfg.e_values:
        for p in cfg.p_values:
            rows = scan(e, p, range(cfg.a_range[0], cfg.a_range[1] + 1), range(cfg.b_range[0], cfg.b_range[1] + 1))
            path = cfg.out / f"scan_e{e}_p{p}.csv"
            with path.open("w", newline="") as fh:
                w = csv.writer(fh, lineterminator="\n")
                w.writerow(["a", "b", "e", "p", "verdict", "source"])
                for a, b, st in rows:
                    w.writerow([a, b, e, p, st.verdict.value, st.source])
            print(f"e={e} p={p}  ('#' proven, '+' conjectured, '.' proven no) -> {path}")
            print(render(rows, cfg.a_range, cfg.b_range))
            print()


if __name__ == "__main__":
    main()
