"""Integer calculus on the numerical lattice of an elliptic ruled surface.

A class ``aC0 + bf`` lives on ``X = P(E)`` over an elliptic curve with
invariant ``e >= -1``.  Generators pair as ``C0.C0 = -e``, ``C0.f = 1``,
``f.f = 0``.  Everything here is exact integer arithmetic.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import FactorPositivityMismatch, InvalidSurface, TableUnknown


@dataclass(frozen=True)
class SurfaceInvariant:
    e: int

    def __post_init__(self):
        if not isinstance(self.e, int) or self.e < -1:
            raise InvalidSurface(f"invariant e={self.e!r}; elliptic ruled surfaces have e >= -1")


def _surface(s) -> SurfaceInvariant:
    return s if isinstance(s, SurfaceInvariant) else SurfaceInvariant(int(s))


@dataclass(frozen=True, order=True)
class NumClass:
    a: int
    b: int

    def __add__(self, other: "NumClass") -> "NumClass":
        return NumClass(self.a + other.a, self.b + other.b)

    def __sub__(self, other: "NumClass") -> "NumClass":
        return NumClass(self.a - other.a, self.b - other.b)

    def __neg__(self) -> "NumClass":
        return NumClass(-self.a, -self.b)

    def __mul__(self, n: int) -> "NumClass":
        return NumClass(n * self.a, n * self.b)

    __rmul__ = __mul__

    def to_dict(self) -> dict:
        return {"a": self.a, "b": self.b}


ZERO = NumClass(0, 0)
C0 = NumClass(1, 0)
FIBER = NumClass(0, 1)


class Entry(enum.Enum):
    KNOWN = "known"
    POSITIVE = "positive"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Dim:
    """One cohomology cell: a known value, 'known nonzero', or unknown."""

    kind: Entry
    value: int | None = None

    @classmethod
    def known(cls, n: int) -> "Dim":
        return cls(Entry.KNOWN, int(n))

    def is_zero(self) -> bool:
        return self.kind is Entry.KNOWN and self.value == 0

    def is_nonzero(self) -> bool:
        return self.kind is Entry.POSITIVE or (self.kind is Entry.KNOWN and self.value > 0)

    def to_json(self):
        return self.value if self.kind is Entry.KNOWN else self.kind.value

    def __str__(self) -> str:
        return str(self.to_json())


POSITIVE = Dim(Entry.POSITIVE)
UNKNOWN = Dim(Entry.UNKNOWN)
Z = Dim.known(0)


@dataclass(frozen=True)
class CohomTriple:
    h0: Dim
    h1: Dim
    h2: Dim

    def all_known(self) -> bool:
        return all(d.kind is Entry.KNOWN for d in (self.h0, self.h1, self.h2))

    def to_dict(self) -> dict:
        return {"h0": self.h0.to_json(), "h1": self.h1.to_json(), "h2": self.h2.to_json()}


class Effectivity(enum.Enum):
    ALL = "all_representatives_effective"
    SOME = "some_representatives_effective"
    NONE = "no_representative_effective"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class EffectivityStatus:
    verdict: Effectivity
    detail: str | None = None
    count: int | None = None

    def to_dict(self) -> dict:
        return {"verdict": self.verdict.value, "detail": self.detail, "count": self.count}


class Verdict(enum.Enum):
    PROVEN_YES = "proven_yes"
    PROVEN_NO = "proven_no"
    CONJECTURED_YES = "conjectured_yes"
    CONJECTURED_NO = "conjectured_no"
    UNKNOWN = "unknown"


# citation tags reported with every verdict
SRC_MAIN_NEG = "thm6.1.1"
SRC_MAIN_NONNEG = "thm6.1.2"
SRC_HOMMA = "homma_n0"
SRC_GP = "gp_n1"
SRC_CONJ = "conj7.3"
SRC_ADJOINT = "cor6.2"
SRC_BPF_PRODUCT = "cor6.3"
SRC_AMPLE_PRODUCT = "cor6.4"


@dataclass(frozen=True)
class NpStatus:
    verdict: Verdict
    source: str
    p: int

    @property
    def proven_yes(self) -> bool:
        return self.verdict is Verdict.PROVEN_YES

    def to_dict(self) -> dict:
        return {"verdict": self.verdict.value, "source": self.source, "p": self.p}


class Route(enum.Enum):
    MIXED = "mixed_factors"
    ALL_TWO_C0 = "all_two_c0"
    STANDARD_E = "standard_e"


@dataclass(frozen=True)
class DecompositionWitness:
    factors: tuple[NumClass, ...]
    remainder: NumClass
    route: Route

    def total(self) -> NumClass:
        out = self.remainder
        for f in self.factors:
            out = out + f
        return out

    def to_dict(self) -> dict:
        return {
            "factors": [f.to_dict() for f in self.factors],
            "remainder": self.remainder.to_dict(),
            "route": self.route.value,
        }


class Bpf(enum.Enum):
    YES = "yes"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Positivity:
    ample: bool
    bpf: Bpf
    ample_and_bpf: bool

    def to_dict(self) -> dict:
        return {"ample": self.ample, "bpf": self.bpf.value, "ample_and_bpf": self.ample_and_bpf}


class FactorKind(enum.Enum):
    AMPLE = "ample"
    AMPLE_AND_BPF = "ample_and_bpf"


# ---------------------------------------------------------------------------
# intersection theory


def intersection_form(l1: NumClass, l2: NumClass, s) -> int:
    e = _surface(s).e
    return l1.a * l2.b + l2.a * l1.b - e * l1.a * l2.a


def canonical_class(s) -> NumClass:
    return NumClass(-2, -_surface(s).e)


def euler_characteristic(l: NumClass, s) -> int:
    """chi(L) = L.(L - K)/2, using chi(O_X) = 0 for an elliptic base."""
    e = _surface(s).e
    a, b = l.a, l.b
    return a * b + b - e * a * (a + 1) // 2


# ---------------------------------------------------------------------------
# cohomology tables


def _table_neg(a: int, b: int) -> CohomTriple:
    # compare b with -a/2 via 2b + a
    t = 2 * b + a
    if a >= 0:
        if t > 0:
            return CohomTriple(POSITIVE, Z, Z)
        if t == 0:
            return CohomTriple(UNKNOWN, UNKNOWN, Z)
        return CohomTriple(Z, POSITIVE, Z)
    if a == -1:
        return CohomTriple(Z, Z, Z)
    if t > 0:
        return CohomTriple(Z, POSITIVE, Z)
    if t == 0:
        return CohomTriple(Z, UNKNOWN, UNKNOWN)
    return CohomTriple(Z, Z, POSITIVE)


def _sign_cell(x: int, pos: Dim, zero: Dim, neg: Dim) -> Dim:
    return pos if x > 0 else zero if x == 0 else neg


def _table_nonneg(a: int, b: int, e: int) -> CohomTriple:
    if a == -1:
        return CohomTriple(Z, Z, Z)
    if a >= 0:
        h0 = _sign_cell(b, POSITIVE, UNKNOWN, Z)
        h2 = Z
        h1 = _sign_cell(b - a * e, Z, UNKNOWN, POSITIVE)
    else:
        h0 = Z
        h2 = _sign_cell(b + e, Z, UNKNOWN, POSITIVE)
        # h1 vanishes below the line b = e(a+1), as forced by Serre duality
        h1 = _sign_cell(b - e * (a + 1), POSITIVE, UNKNOWN, Z)
    return CohomTriple(h0, h1, h2)


def cohomology_dims(l: NumClass, s) -> CohomTriple:
    s = _surface(s)
    cells = _table_neg(l.a, l.b) if s.e == -1 else _table_nonneg(l.a, l.b, s.e)
    if cells.h0.kind is Entry.POSITIVE and cells.h1.is_zero() and cells.h2.is_zero():
        cells = CohomTriple(Dim.known(euler_characteristic(l, s)), Z, Z)
    return cells


def _anticanonical_multiple(l: NumClass) -> int | None:
    """n if l == n(2C0 - f) with n >= 0, else None."""
    if l.a >= 0 and l.a % 2 == 0 and l.b == -(l.a // 2):
        return l.a // 2
    return None


def effectivity_status(l: NumClass, s) -> EffectivityStatus:
    s = _surface(s)
    if s.e == -1:
        n = _anticanonical_multiple(l)
        if n is not None:
            if n == 0:
                return EffectivityStatus(Effectivity.SOME, "exactly 1 effective bundle (the trivial one)", 1)
            if n == 1:
                return EffectivityStatus(Effectivity.SOME, "exactly 3 effective bundles", 3)
            return EffectivityStatus(Effectivity.SOME, "exactly 4 effective bundles", 4)
    h0 = cohomology_dims(l, s).h0
    if h0.is_nonzero():
        return EffectivityStatus(Effectivity.ALL)
    if h0.is_zero():
        return EffectivityStatus(Effectivity.NONE)
    return EffectivityStatus(Effectivity.UNKNOWN)


def is_effective_class(l: NumClass, s) -> bool:
    """Some line bundle in the class is effective."""
    return effectivity_status(l, s).verdict in (Effectivity.ALL, Effectivity.SOME)


# ---------------------------------------------------------------------------
# positivity


def positivity(l: NumClass, s) -> Positivity:
    s = _surface(s)
    a, b, e = l.a, l.b, s.e
    if e == -1:
        ample = a > 0 and 2 * b > -a
        bpf_sufficient = a >= 0 and a + b >= 2 and a + 2 * b >= 2
        both = a >= 1 and a + b >= 2 and a + 2 * b >= 2
    else:
        ample = a > 0 and b > a * e
        bpf_sufficient = a >= 0 and b - a * e >= 2
        both = a >= 1 and b - a * e >= 2
    bpf = Bpf.YES if (bpf_sufficient or both) else Bpf.UNKNOWN
    return Positivity(ample=ample, bpf=bpf, ample_and_bpf=both)


# ---------------------------------------------------------------------------
# N_p criteria


def in_main_region(l: NumClass, s, p: int) -> bool:
    """Proven sufficient region for N_p (p >= 1)."""
    e = _surface(s).e
    a, b = l.a, l.b
    if p < 1:
        return False
    if e == -1:
        return a >= p + 1 and a + b >= 2 * p + 2 and a + 2 * b >= 2 * p + 2
    return a >= p + 1 and b - a * e >= 2 * p + 2


def in_conjectured_region(l: NumClass, s, p: int) -> bool:
    e = _surface(s).e
    a, b = l.a, l.b
    if e == -1:
        return a >= 1 and a + b >= p + 3 and a + 2 * b >= p + 3
    return a >= 1 and b - a * e >= p + 3


def homma_n0(l: NumClass) -> bool:
    a, b = l.a, l.b
    return a >= 1 and a + b >= 3 and a + 2 * b >= 3


def gp_n1(l: NumClass) -> bool:
    a, b = l.a, l.b
    return a >= 1 and a + b >= 4 and a + 2 * b >= 4


def np_status(l: NumClass, s, p: int) -> NpStatus:
    s = _surface(s)
    if p < 0:
        raise ValueError("p must be nonnegative")
    # the sufficient region is cited whenever it applies; the iff results decide the rest
    if p >= 1 and in_main_region(l, s, p):
        return NpStatus(Verdict.PROVEN_YES, SRC_MAIN_NEG if s.e == -1 else SRC_MAIN_NONNEG, p)
    if s.e == -1 and p == 0:
        return NpStatus(Verdict.PROVEN_YES if homma_n0(l) else Verdict.PROVEN_NO, SRC_HOMMA, p)
    if s.e == -1 and p == 1:
        return NpStatus(Verdict.PROVEN_YES if gp_n1(l) else Verdict.PROVEN_NO, SRC_GP, p)
    conj = in_conjectured_region(l, s, p)
    return NpStatus(Verdict.CONJECTURED_YES if conj else Verdict.CONJECTURED_NO, SRC_CONJ, p)


def combination_np(
    s,
    factors: Sequence[tuple[NumClass, FactorKind]],
    adjoint: bool,
    p: int,
) -> NpStatus:
    """N_p for a product of ample (or ample and bpf) factors, optionally adjoint."""
    s = _surface(s)
    if p < 1:
        raise ValueError("p must be positive")
    for cls, kind in factors:
        pos = positivity(cls, s)
        ok = pos.ample_and_bpf if kind is FactorKind.AMPLE_AND_BPF else pos.ample
        if not ok:
            raise FactorPositivityMismatch(f"factor {cls} is not {kind.value} on e={s.e}")
    q = len(factors)
    total = sum((c for c, _ in factors), ZERO)
    if adjoint:
        total = total + canonical_class(s)
        count_ok = q >= 2 * p + 2 - min(s.e, p - 1)
        source = SRC_ADJOINT
    elif all(kind is FactorKind.AMPLE_AND_BPF for _, kind in factors):
        count_ok = q >= p + 1
        source = SRC_BPF_PRODUCT
    else:
        count_ok = q >= 2 * p + 2
        source = SRC_AMPLE_PRODUCT
    status = np_status(total, s, p)
    if count_ok and status.proven_yes:
        return NpStatus(Verdict.PROVEN_YES, source, p)
    return status


def decompose_for_np(l: NumClass, s, p: int, k: int) -> DecompositionWitness | None:
    """Write L as k+1 ample bpf factors times an effective remainder.

    Returns None only when no witness exists, which inside the proven N_p region
    would be a defect.
    """
    s = _surface(s)
    if not 1 <= k <= p:
        raise ValueError(f"k={k} outside [1, {p}]")
    n = k + 1
    if s.e >= 0:
        factor = NumClass(1, s.e + 2)
        rem = l - n * factor
        if rem.a >= 0 and rem.b - rem.a * s.e >= 0:
            return DecompositionWitness((factor,) * n, rem, Route.STANDARD_E)
        return None
    two_c0, c0_f = NumClass(2, 0), NumClass(1, 1)
    for y in range(min(n, l.b), -1, -1):
        x = n - y
        if 2 * x + y > l.a:
            continue
        rem = l - x * two_c0 - y * c0_f
        if rem.a >= 0 and rem.b >= 0:
            return DecompositionWitness((two_c0,) * x + (c0_f,) * y, rem, Route.MIXED)
    rem = l - n * two_c0
    if is_effective_class(rem, s):
        return DecompositionWitness((two_c0,) * n, rem, Route.ALL_TWO_C0)
    return None


def codimension(l: NumClass, s) -> int:
    """Codimension of X in P(H^0(L)) when h^1 = h^2 = 0."""
    s = _surface(s)
    cells = cohomology_dims(l, s)
    if not (cells.h1.is_zero() and cells.h2.is_zero()):
        raise TableUnknown(f"class {l} on e={s.e}: higher cohomology not known to vanish")
    return euler_characteristic(l, s) - 3


def codim_at_least_p(l: NumClass, s, p: int) -> bool:
    return codimension(l, s) >= p


def scan(s, p: int, a_range: Iterable[int], b_range: Sequence[int]) -> list[tuple[int, int, NpStatus]]:
    s = _surface(s)
    b_vals = list(b_range)
    return [(a, b, np_status(NumClass(a, b), s, p)) for a in a_range for b in b_vals]
