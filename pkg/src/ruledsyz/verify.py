"""Cross-module agreement checks: oracle tables vs. explicit computations."""
from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import product
from typing import Callable

from .curves import (
    EllipticMBundleSpec,
    SectionSpace,
    mb_tensor_cohomology_p1,
    mb_tensor_h0_p1_explicit,
    mb_tensor_h1_elliptic,
    slope_criterion_elliptic,
)
from .errors import BudgetExceeded
from .koszul import DEFAULT_BUDGET, betti_table, build_ring, decide_np, normal_generation_check
from .models import default_prime, elliptic_normal_model, elliptic_points, rnc_model, ruled_surface_model
from .numeric import NumClass, cohomology_dims, euler_characteristic, np_status

DEFAULT_CURVE = (2, 3)


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} {self.name} ({self.seconds:.1f}s): {self.detail}"


def _table_chi() -> tuple[bool, str]:
    bad = checked = 0
    for e in range(-1, 4):
        for a, b in product(range(-20, 21), repeat=2):
            t = cohomology_dims(NumClass(a, b), e)
            if t.all_known():
                checked += 1
                h0, h1, h2 = (c.value for c in (t.h0, t.h1, t.h2))
                bad += h0 - h1 + h2 != euler_characteristic(NumClass(a, b), e)
    return bad == 0, f"{checked} fully known cells, {bad} violations"


def _p1_closed_form() -> tuple[bool, str]:
    bad = n = 0
    for k in (1, 2):
        for bs in product(range(1, 4), repeat=k):
            for l in range(-3, 4):
                n += 1
                bad += mb_tensor_h0_p1_explicit(bs, l)[1] != mb_tensor_cohomology_p1(bs, l)
    return bad == 0, f"{n} instances, {bad} mismatches"


def _slope_sufficiency(prime: int) -> tuple[bool, str]:
    curve = elliptic_points(*DEFAULT_CURVE, prime)
    bad = n = 0
    for fd in product(range(3, 5), repeat=2):
        for l in range(3, 7):
            if slope_criterion_elliptic(EllipticMBundleSpec(fd, l)).applies:
                n += 1
                bad += mb_tensor_h1_elliptic(curve, [SectionSpace(d) for d in fd], SectionSpace(l)) != 0
    sharp = mb_tensor_h1_elliptic(curve, [SectionSpace(2)], SectionSpace(2))
    return bad == 0 and sharp == 1, f"{n} instances with slope > 0, {bad} with h1 != 0; self-twist h1 = {sharp}"


def _known_tables(prime: int, budget: int) -> tuple[bool, str]:
    curve = elliptic_points(*DEFAULT_CURVE, prime)
    cases = [
        (rnc_model(3, prime), 2, {(0, 0): 1, (1, 2): 3, (2, 3): 2}),
        (elliptic_normal_model(curve, 4), 3, {(0, 0): 1, (1, 2): 2, (2, 4): 1}),
        (elliptic_normal_model(curve, 5), 3, {(0, 0): 1, (1, 2): 5, (2, 3): 5, (3, 5): 1}),
    ]
    for model, p_max, want in cases:
        got = betti_table(build_ring(model, 4), p_max, 3, budget=budget).nonzero()
        if got != want:
            return False, f"{model.label}: {got} != {want}"
    return True, "twisted cubic, elliptic quartic, elliptic quintic"


def _ruled_agreement(prime: int, budget: int) -> tuple[bool, str]:
    curve = elliptic_points(*DEFAULT_CURVE, prime)
    notes = []
    for e, L in ((0, NumClass(2, 4)), (1, NumClass(2, 6))):
        model = ruled_surface_model(curve, e, L, q_max=2)
        ring = build_ring(model, 3)
        if not normal_generation_check(ring):
            return False, f"e={e} {L}: Hilbert {ring.hilbert_actual} != oracle"
        oracle = np_status(L, e, 1).proven_yes
        try:
            holds = decide_np(ring, 1, q_max=2, budget=budget).holds
        except BudgetExceeded as exc:
            notes.append(f"e={e} {L}: budget exceeded ({exc})")
            continue
        if holds != oracle:
            return False, f"e={e} {L}: engine {holds}, oracle {oracle}"
        notes.append(f"e={e} ({L.a},{L.b}) N_1 agrees")
    return True, "; ".join(notes)


def run_suite(budget: int = DEFAULT_BUDGET, prime: int | None = None) -> list[CheckResult]:
    prime = default_prime() if prime is None else prime
    checks: list[tuple[str, Callable[[], tuple[bool, str]]]] = [
        ("table_chi_consistency", _table_chi),
        ("p1_closed_form_vs_kernels", _p1_closed_form),
        ("slope_criterion_vs_elliptic_model", lambda: _slope_sufficiency(prime)),
        ("known_betti_tables", lambda: _known_tables(prime, budget)),
        ("ruled_oracle_vs_engine", lambda: _ruled_agreement(prime, budget)),
    ]
    out = []
    for name, fn in checks:
        t = time.perf_counter()
        try:
            ok, detail = fn()
        except Exception as exc:  # reported as a failed check, not a crash
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        out.append(CheckResult(name, ok, detail, time.perf_counter() - t))
    return out
