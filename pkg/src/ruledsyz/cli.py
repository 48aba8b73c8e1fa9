"""Command-line interface: ``python -m ruledsyz <subcommand> ...``.

Exit codes: 0 success, 1 domain error (message names the error class),
2 usage error.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
from typing import Sequence

from .errors import RuledSyzError
from .koszul import DEFAULT_BUDGET, betti_table, build_ring, decide_np_from_table
from .models import (
    DEFAULT_Q_MAX,
    PRIME_ENV,
    default_prime,
    elliptic_normal_model,
    elliptic_points,
    rnc_model,
    ruled_surface_model,
)
from .numeric import (
    NumClass,
    TableUnknown,
    codimension,
    cohomology_dims,
    decompose_for_np,
    effectivity_status,
    np_status,
    positivity,
    scan,
)
from .verify import DEFAULT_CURVE, run_suite


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2, sort_keys=False))


def cmd_oracle(args) -> int:
    L = NumClass(args.a, args.b)
    out = {
        "class": L.to_dict(),
        "e": args.e,
        "p": args.p,
        "cohomology": cohomology_dims(L, args.e).to_dict(),
        "positivity": positivity(L, args.e).to_dict(),
        "effectivity": effectivity_status(L, args.e).to_dict(),
        "np_status": np_status(L, args.e, args.p).to_dict(),
    }
    try:
        out["codimension"] = codimension(L, args.e)
    except TableUnknown:
        out["codimension"] = None
    _emit(out)
    return 0


def cmd_scan(args) -> int:
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["a", "b", "e", "p", "verdict", "source"])
    rows = scan(args.e, args.p, range(args.amin, args.amax + 1), range(args.bmin, args.bmax + 1))
    for a, b, st in rows:
        w.writerow([a, b, args.e, args.p, st.verdict.value, st.source])
    return 0


def cmd_decompose(args) -> int:
    L = NumClass(args.a, args.b)
    ks = [args.k] if args.k is not None else list(range(1, args.p + 1))
    out = {"class": L.to_dict(), "e": args.e, "p": args.p, "witnesses": []}
    for k in ks:
        wit = decompose_for_np(L, args.e, args.p, k)
        out["witnesses"].append({"k": k, "witness": wit.to_dict() if wit is not None else None})
    _emit(out)
    return 0


def _build_model(args, q_max: int):
    prime = args.prime if args.prime is not None else default_prime()
    if args.model == "rnc":
        return rnc_model(args.d, prime, q_max=q_max)
    curve = elliptic_points(args.A, args.B, prime)
    if args.model == "elliptic":
        return elliptic_normal_model(curve, args.d, q_max=q_max)
    if args.e is None or args.a is None or args.b is None:
        raise argparse.ArgumentTypeError("ruled models need -e, -a and -b")
    return ruled_surface_model(curve, args.e, NumClass(args.a, args.b), q_max=q_max)


def cmd_betti(args) -> int:
    q_model = max(args.qmax, 1)
    model = _build_model(args, q_model)
    ring = build_ring(model, args.qmax + 1)
    table = betti_table(ring, args.pmax, args.qmax, budget=args.budget, seed=args.seed)
    print(f"# model={model.label} prime={model.prime} seed={args.seed} hilbert={ring.hilbert_actual}")
    sys.stdout.write(table.to_csv())
    if args.qmax >= 2:
        decisions = [
            decide_np_from_table(table, p, args.qmax, model.certified).to_dict()
            for p in range(1, args.pmax + 1)
        ]
        _emit({"decide_np": decisions})
    return 0


def cmd_verify(args) -> int:
    prime = args.prime if args.prime is not None else default_prime()
    print(f"# verify prime={prime} budget={args.budget}")
    results = run_suite(budget=args.budget, prime=prime)
    for r in results:
        print(r.line())
    ok = all(r.passed for r in results)
    print(f"{sum(r.passed for r in results)}/{len(results)} checks passed")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="ruledsyz",
        description=f"N_p workbench for elliptic ruled surfaces (default prime from ${PRIME_ENV}).",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("oracle", help="cohomology, positivity, effectivity and N_p status of a class")
    p.add_argument("-e", type=int, required=True)
    p.add_argument("-a", type=int, required=True)
    p.add_argument("-b", type=int, required=True)
    p.add_argument("-p", type=int, default=1)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("scan", help="N_p verdicts over a window of classes, as CSV")
    p.add_argument("-e", type=int, required=True)
    p.add_argument("-p", type=int, required=True)
    p.add_argument("--amin", type=int, required=True)
    p.add_argument("--amax", type=int, required=True)
    p.add_argument("--bmin", type=int, required=True)
    p.add_argument("--bmax", type=int, required=True)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("decompose", help="factor decomposition witnesses for N_p")
    p.add_argument("-e", type=int, required=True)
    p.add_argument("-a", type=int, required=True)
    p.add_argument("-b", type=int, required=True)
    p.add_argument("-p", type=int, required=True)
    p.add_argument("-k", type=int, default=None, help="single k in [1, p] (default: all)")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("betti", help="Betti table of an explicit model")
    p.add_argument("--model", choices=["rnc", "elliptic", "ruled"], required=True)
    p.add_argument("-d", type=int, default=4, help="degree (rnc, elliptic)")
    p.add_argument("-e", type=int, default=None, help="surface invariant (ruled)")
    p.add_argument("-a", type=int, default=None, help="C0 coefficient (ruled)")
    p.add_argument("-b", type=int, default=None, help="fiber coefficient (ruled)")
    p.add_argument("-A", type=int, default=DEFAULT_CURVE[0], help="Weierstrass A")
    p.add_argument("-B", type=int, default=DEFAULT_CURVE[1], help="Weierstrass B")
    p.add_argument("--pmax", type=int, default=2)
    p.add_argument("--qmax", type=int, default=DEFAULT_Q_MAX - 1)
    p.add_argument("--prime", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.set_defaults(func=cmd_betti)

    p = sub.add_parser("verify", help="cross-module agreement suite")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--prime", type=int, default=None)
    p.set_defaults(func=cmd_verify)
    return ap


def run(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except argparse.ArgumentTypeError as exc:
        ap.error(str(exc))
    except (RuledSyzError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    return 0


def main() -> None:
    sys.exit(run())
