"""Point-evaluation models of projectively embedded varieties over F_p.

A model is a finite set of sample points plus a basis of H^0(L) given as
value vectors at those points.  Multiplying sections is pointwise
multiplication of vectors, so the homogeneous coordinate ring can be built
by linear algebra alone (see ``koszul.build_ring``).

Supported models:

* rational normal curves (monomials ``1, u, ..., u^d`` on the affine line);
* elliptic normal curves, with all divisors supported at the point at
  infinity of a Weierstrass cubic so that Riemann-Roch bases are monomials
  ``x^i y^eps``;
* decomposable elliptic ruled surfaces ``P(O + O(-e*inf))`` with ``e >= 0``,
  sections ``f(x, y) * u^j`` in the fiber chart ``u``.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import (
    InsufficientPoints,
    OracleObstruction,
    PrimeTooSmall,
    SingularCurve,
)
from .linalg import check_prime, rank_mod_p
from .numeric import NumClass, SurfaceInvariant, cohomology_dims, euler_characteristic

DEFAULT_PRIME = 10007
PRIME_ENV = "RULEDSYZ_PRIME"
DEFAULT_Q_MAX = 4


def default_prime() -> int:
    return int(os.environ.get(PRIME_ENV, DEFAULT_PRIME))


# ---------------------------------------------------------------------------
# elliptic curves


def sqrt_mod(a: int, p: int) -> int | None:
    """A square root of ``a`` mod the odd prime ``p`` (Tonelli-Shanks), or None."""
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return r


@dataclass(frozen=True)
class EllipticCurveModel:
    """Affine points of ``y^2 = x^3 + Ax + B`` over F_p (point at infinity implicit)."""

    prime: int
    A: int
    B: int
    points: tuple[tuple[int, int], ...]

    @property
    def xs(self) -> np.ndarray:
        return np.array([P[0] for P in self.points], dtype=np.int64)

    @property
    def ys(self) -> np.ndarray:
        return np.array([P[1] for P in self.points], dtype=np.int64)

    def contains(self, x: int, y: int) -> bool:
        p = self.prime
        return (y * y - (x ** 3 + self.A * x + self.B)) % p == 0


def elliptic_points(A: int, B: int, prime: int) -> EllipticCurveModel:
    if prime < 5:
        raise PrimeTooSmall("Weierstrass models need characteristic >= 5")
    check_prime(prime)
    A %= prime
    B %= prime
    if (4 * A ** 3 + 27 * B ** 2) % prime == 0:
        raise SingularCurve(f"y^2 = x^3 + {A}x + {B} is singular mod {prime}")
    pts: list[tuple[int, int]] = []
    for x in range(prime):
        r = sqrt_mod(x ** 3 + A * x + B, prime)
        if r is None:
            continue
        if r == 0:
            pts.append((x, 0))
        else:
            pts.extend(sorted([(x, r), (x, prime - r)]))
    return EllipticCurveModel(prime, A, B, tuple(pts))


def rr_basis(curve: EllipticCurveModel | None, d: int) -> list[tuple[int, int]]:
    """Monomials ``x^i y^eps`` spanning L(d * inf), ordered by pole order.

    Pole orders are ``2i + 3eps``: 0, 2, 3, 4, ..., d.
    """
    if d < 0:
        return []
    out = [(0, 0)]
    for n in range(2, d + 1):
        out.append((n // 2, 0) if n % 2 == 0 else ((n - 3) // 2, 1))
    return out


def eval_monomials(monos, xs: np.ndarray, ys: np.ndarray, p: int) -> np.ndarray:
    """Values of ``x^i y^eps`` at the given points, one row per monomial."""
    xs = np.asarray(xs, dtype=np.int64) % p
    ys = np.asarray(ys, dtype=np.int64) % p
    top = max((i for i, _ in monos), default=0)
    powers = [np.ones_like(xs)]
    for _ in range(top):
        powers.append(powers[-1] * xs % p)
    rows = [powers[i] * (ys if eps else 1) % p for i, eps in monos]
    return np.array(rows, dtype=np.float64).reshape(len(monos), xs.size)


# ---------------------------------------------------------------------------
# embedded models


@dataclass(frozen=True)
class EmbeddedModel:
    prime: int
    sample_points: np.ndarray = field(repr=False)
    sections: np.ndarray = field(repr=False)
    hilbert: Callable[[int], int] = field(repr=False, compare=False)
    label: str
    q_max: int = DEFAULT_Q_MAX
    weights: tuple[int, ...] | None = None
    # h^1 = h^2 = 0 for all positive multiples certified by the numeric oracle
    certified: bool = False

    def __post_init__(self):
        n = self.sections.shape[0]
        if n != self.hilbert(1):
            raise ValueError(f"{n} sections but expected h^0 = {self.hilbert(1)}")
        if self.weights is not None and len(self.weights) != n:
            raise ValueError("one weight per section required")
        if self.n_points < 2 * self.hilbert(self.q_max + 1):
            raise InsufficientPoints(
                f"{self.n_points} sample points < 2 * h({self.q_max + 1}) = {2 * self.hilbert(self.q_max + 1)}"
            )
        if rank_mod_p(self.sections, self.prime) != n:
            raise InsufficientPoints("section value vectors are linearly dependent")

    @property
    def n_points(self) -> int:
        return self.sections.shape[1]

    @property
    def n_sections(self) -> int:
        return self.sections.shape[0]

    def expected_hilbert(self, m: int) -> int:
        return self.hilbert(m)

    def section_weights(self) -> tuple[int, ...]:
        return self.weights if self.weights is not None else (0,) * self.n_sections

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "prime": self.prime,
            "q_max": self.q_max,
            "certified": self.certified,
            "weights": list(self.weights) if self.weights is not None else None,
            "expected_hilbert": [self.hilbert(m) for m in range(self.q_max + 2)],
            "sample_points": np.asarray(self.sample_points, dtype=np.int64).tolist(),
            "sections": self.sections.astype(np.int64).tolist(),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, data: dict) -> "EmbeddedModel":
        table = list(data["expected_hilbert"])

        def hilbert(m: int) -> int:
            if m >= len(table):
                raise ValueError(f"expected Hilbert function recorded only through degree {len(table) - 1}")
            return table[m]

        w = data.get("weights")
        return cls(
            prime=int(data["prime"]),
            sample_points=np.array(data["sample_points"], dtype=np.int64),
            sections=np.array(data["sections"], dtype=np.float64),
            hilbert=hilbert,
            label=data["label"],
            q_max=int(data["q_max"]),
            weights=tuple(w) if w is not None else None,
            certified=bool(data.get("certified", False)),
        )


def rnc_model(d: int, prime: int | None = None, q_max: int = DEFAULT_Q_MAX) -> EmbeddedModel:
    """Rational normal curve of degree d: monomials of degree <= d in u."""
    prime = default_prime() if prime is None else prime
    if d < 1:
        raise ValueError("degree must be >= 1")
    check_prime(prime)
    if prime < 2 * (d * (q_max + 1) + 1):
        raise PrimeTooSmall(f"F_{prime} has too few points for degree {d} through q_max={q_max}")
    u = np.arange(prime, dtype=np.int64)
    rows = [np.ones(prime, dtype=np.int64)]
    for _ in range(d):
        rows.append(rows[-1] * u % prime)
    return EmbeddedModel(
        prime=prime,
        sample_points=u.reshape(-1, 1),
        sections=np.array(rows, dtype=np.float64),
        hilbert=lambda m: m * d + 1,
        label=f"rnc(d={d})",
        q_max=q_max,
    )


def elliptic_normal_model(curve: EllipticCurveModel, d: int, q_max: int = DEFAULT_Q_MAX) -> EmbeddedModel:
    """Degree-d embedding of the curve by L(d * inf)."""
    if d < 3:
        raise ValueError("an elliptic normal curve needs degree >= 3")
    if len(curve.points) < 2 * d * (q_max + 1):
        raise InsufficientPoints(f"{len(curve.points)} affine points; need {2 * d * (q_max + 1)}")
    p = curve.prime
    sections = eval_monomials(rr_basis(curve, d), curve.xs, curve.ys, p)
    return EmbeddedModel(
        prime=p,
        sample_points=np.array(curve.points, dtype=np.int64),
        sections=sections,
        hilbert=lambda m: 1 if m == 0 else m * d,
        label=f"elliptic(A={curve.A},B={curve.B},d={d})",
        q_max=q_max,
    )


def ruled_grid(a: int, b: int, q_max: int, hilbert_top: int) -> tuple[int, int]:
    """Sizes (curve points, fiber values) of a faithful sample grid.

    A section of mL is sum_j g_j(P) u^j with deg_u <= m*a and pole order of
    each g_j at most m*b, so a grid with more than m*b curve points and more
    than m*a fiber values detects every nonzero section.
    """
    top = q_max + 1
    n_curve = 2 * top * b + 1
    n_fiber = top * a + 1
    while n_curve * n_fiber < 2 * hilbert_top:
        n_fiber += 1
    return n_curve, n_fiber


def ruled_surface_model(
    curve: EllipticCurveModel,
    e: int,
    L: NumClass,
    q_max: int = DEFAULT_Q_MAX,
) -> EmbeddedModel:
    """Embedding of P(O + O(-e*inf)) by a line bundle in the class L = aC0 + bf."""
    s = SurfaceInvariant(e)
    if e < 0:
        raise ValueError("explicit ruled models exist only for e >= 0")
    a, b = L.a, L.b
    if a < 0 or b - a * e < 1:
        raise OracleObstruction(f"class {L} on e={e} lies outside the split model's range")
    for m in range(1, q_max + 2):
        cells = cohomology_dims(m * L, s)
        if not (cells.h1.is_zero() and cells.h2.is_zero()):
            raise OracleObstruction(f"vanishing of h^1, h^2 not certified for {m}L")

    def hilbert(m: int) -> int:
        return 1 if m == 0 else euler_characteristic(m * L, s)

    p = curve.prime
    n_curve, n_fiber = ruled_grid(a, b, q_max, hilbert(q_max + 1))
    if n_curve > len(curve.points):
        raise InsufficientPoints(f"need {n_curve} curve points, have {len(curve.points)}")
    if n_fiber > p:
        raise InsufficientPoints(f"need {n_fiber} fiber values in F_{p}")
    pts = curve.points[:n_curve]
    xs = np.repeat([P[0] for P in pts], n_fiber)
    ys = np.repeat([P[1] for P in pts], n_fiber)
    us = np.tile(np.arange(n_fiber, dtype=np.int64), n_curve)
    rows, weights = [], []
    for j in range(a + 1):
        upow = np.ones_like(us)
        for _ in range(j):
            upow = upow * us % p
        vals = eval_monomials(rr_basis(curve, b - j * e), xs, ys, p)
        rows.append(vals * upow % p)
        weights += [j] * vals.shape[0]
    sample = np.stack([xs, ys, us], axis=1)
    return EmbeddedModel(
        prime=p,
        sample_points=sample,
        sections=np.vstack(rows),
        hilbert=hilbert,
        label=f"ruled(A={curve.A},B={curve.B},e={e},a={a},b={b})",
        q_max=q_max,
        weights=tuple(weights),
        certified=True,
    )
