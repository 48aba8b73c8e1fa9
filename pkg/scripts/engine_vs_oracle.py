"""Compare numeric-oracle N_p verdicts with Koszul-engine computations on
explicit decomposable ruled surfaces (e >= 0).

Prints one JSON record per (e, class, p): oracle verdict, engine decision
(or the budget error), Hilbert function and timing.
"""
from __future__ import annotations

import argparse
import json
import time
from dataclasses import asdict, dataclass, field

from ruledsyz.errors import BudgetExceeded, NotNormallyGenerated, OracleObstruction
from ruledsyz.koszul import DEFAULT_BUDGET, build_ring, decide_np
from ruledsyz.models import default_prime, elliptic_points, ruled_surface_model
from ruledsyz.numeric import NumClass, np_status


@dataclass
class RunConfig:
    classes: list[tuple[int, int, int]] = field(
        default_factory=lambda: [(0, 2, 4), (0, 2, 5), (0, 3, 6), (1, 2, 6), (1, 2, 7), (1, 3, 9)]
    )
    p_values: tuple[int, ...] = (1,)
    q_max: int = 2
    prime: int = 0
    budget: int = DEFAULT_BUDGET
    curve: tuple[int, int] = (2, 3)
    seed: int = 0


def parse_class(text: str) -> tuple[int, int, int]:
    e, a, b = (int(x) for x in text.split(","))
    return e, a, b


def run(cfg: RunConfig):
    prime = cfg.prime or default_prime()
    curve = elliptic_points(*cfg.curve, prime)
    for e, a, b in cfg.classes:
        L = NumClass(a, b)
        try:
            model = ruled_surface_model(curve, e, L, q_max=cfg.q_max)
        except OracleObstruction as exc:
            yield {"e": e, "a": a, "b": b, "error": f"OracleObstruction: {exc}"}
            continue
        t = time.perf_counter()
        ring = build_ring(model, cfg.q_max + 1)
        for p in cfg.p_values:
            rec = {
                "e": e, "a": a, "b": b, "p": p, "prime": prime, "seed": cfg.seed,
                "hilbert": ring.hilbert_actual,
                "oracle": np_status(L, e, p).to_dict(),
            }
            try:
                rec["engine"] = decide_np(ring, p, q_max=cfg.q_max, budget=cfg.budget, seed=cfg.seed).to_dict()
            except (BudgetExceeded, NotNormallyGenerated) as exc:
                rec["engine"] = {"error": f"{type(exc).__name__}: {exc}"}
            rec["seconds"] = round(time.perf_counter() - t, 2)
            yield rec


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--class", dest="classes", type=parse_class, nargs="+", metavar="E,A,B")
    ap.add_argument("--p", type=int, nargs="+", default=[1])
    ap.add_argument("--qmax", type=int, default=RunConfig.q_max)
    ap.add_argument("--prime", type=int, default=0)
    ap.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    cfg = RunConfig(p_values=tuple(args.p), q_max=args.qmax, prime=args.prime, budget=args.budget, seed=args.seed)
    if args.classes:
        cfg.classes = args.classes
    print(json.dumps({"config": asdict(cfg) | {"prime": cfg.prime or default_prime()}}))
    for rec in run(cfg):
        print(json.dumps(rec), flush=True)


if __name__ == "__main__":
    main()
