"""Cohomology of twisted tensor products of kernel bundles M_B on curves.

For a globally generated line bundle B, M_B is the kernel of the evaluation
map H^0(B) (x) O -> B.  Global sections of M_{B_1} (x) ... (x) M_{B_k} (x) L
are computed as nested kernels of multiplication maps, starting from
H^0(L) and adding one factor at a time:

    H^0(M_{B_j} (x) F (x) L) = ker( H^0(B_j) (x) H^0(F (x) L) -> H^0(F (x) L (x) B_j) ),

where the map multiplies the L-slot only.  Elements are stored as
tensors in H^0(B_j) (x) ... (x) H^0(B_1) (x) H^0(L) with the L-slot last.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import prod
from typing import Callable, Sequence

import numpy as np

from .errors import DegreeTooSmall, ModelInsufficientPoints
from .linalg import RowSpace, fmod_p, left_nullspace, matmul_mod
from .models import EllipticCurveModel, eval_monomials, rr_basis


# ---------------------------------------------------------------------------
# P^1


def split_cohomology(degrees: Sequence[int]) -> tuple[int, int]:
    """(h^0, h^1) of the split bundle sum O(d_i) on P^1."""
    h0 = sum(max(0, d + 1) for d in degrees)
    h1 = sum(max(0, -d - 1) for d in degrees)
    return h0, h1


def mb_tensor_cohomology_p1(b: Sequence[int], l: int) -> int:
    """h^1 of M_{O(b_1)} (x) ... (x) M_{O(b_{p+1})} (x) O(l) on P^1.

    Each M_{O(b)} is O(-1)^b, so the product is O(l - p - 1)^{prod b}.
    """
    if any(bi < 1 for bi in b):
        raise ValueError("factor degrees must be >= 1")
    p = len(b) - 1
    return split_cohomology([l - p - 1] * prod(b))[1]


def _nested_kernel_dim(
    factor_dims: Sequence[int],
    twist_dim: int,
    product_dims: Sequence[int],
    mult: Callable[[int, int], np.ndarray],
    prime: int,
) -> int:
    """Dimension of H^0(M_{B_1} (x) ... (x) M_{B_k} (x) L).

    ``mult(j, alpha)`` is the (twist_dim x product_dims[j]) matrix of
    multiplication by the alpha-th section of B_j, H^0(L) -> H^0(L B_j).
    """
    kernel = np.eye(twist_dim)
    outer = 1
    for j, bdim in enumerate(factor_dims):
        r = kernel.shape[0]
        if r == 0:
            return 0
        tgt = product_dims[j]
        blocks = kernel.reshape(r, outer, twist_dim)
        rows = np.empty((bdim, r, outer * tgt))
        for alpha in range(bdim):
            m = mult(j, alpha)
            rows[alpha] = matmul_mod(blocks.reshape(r * outer, twist_dim), m, prime).reshape(r, outer * tgt)
        coeffs = left_nullspace(rows.reshape(bdim * r, outer * tgt), prime)
        if coeffs.shape[0] == 0:
            return 0
        # sum_alpha e_alpha (x) sum_kappa c[alpha, kappa] kernel[kappa]
        c = coeffs.reshape(-1, bdim, r)
        kernel = matmul_mod(c.reshape(-1, r), kernel, prime).reshape(coeffs.shape[0], bdim * outer * twist_dim)
        outer *= bdim
    return kernel.shape[0]


def mb_tensor_h0_p1_explicit(b: Sequence[int], l: int, prime: int = 10007) -> tuple[int, int]:
    """(h^0, h^1) of the P^1 product by nested kernels on monomial bases.

    Independent of the splitting type: h^0 comes from linear algebra on
    monomials u^i, and h^1 = h^0 - chi with chi = rank * (deg/rank + 1).
    """
    if any(bi < 1 for bi in b):
        raise ValueError("factor degrees must be >= 1")
    n = len(b)
    rank = prod(b)
    chi = rank * (l - n + 1)
    if l < 0:
        return 0, -chi

    def mult(j: int, alpha: int) -> np.ndarray:
        m = np.zeros((l + 1, l + b[j] + 1))
        m[np.arange(l + 1), np.arange(l + 1) + alpha] = 1.0
        return m

    h0 = _nested_kernel_dim([bi + 1 for bi in b], l + 1, [l + bi + 1 for bi in b], mult, prime)
    return h0, h0 - chi


# ---------------------------------------------------------------------------
# elliptic curves


@dataclass(frozen=True)
class EllipticMBundleSpec:
    factor_degrees: tuple[int, ...]
    twist_degree: int

    @property
    def rank(self) -> int:
        return prod(b - 1 for b in self.factor_degrees)

    @property
    def degree(self) -> int:
        r = [b - 1 for b in self.factor_degrees]
        total = self.twist_degree * prod(r)
        for i, b in enumerate(self.factor_degrees):
            total -= b * prod(r[:i] + r[i + 1:])
        return total


@dataclass(frozen=True)
class SlopeCriterion:
    applies: bool
    slope: Fraction
    corollary_applies: bool

    def to_dict(self) -> dict:
        return {
            "applies": self.applies,
            "slope": {"numerator": self.slope.numerator, "denominator": self.slope.denominator},
            "corollary_applies": self.corollary_applies,
        }


def slope_criterion_elliptic(spec: EllipticMBundleSpec) -> SlopeCriterion:
    if any(b <= 1 for b in spec.factor_degrees):
        raise DegreeTooSmall("factor degrees must be >= 2")
    s = sum(Fraction(b, b - 1) for b in spec.factor_degrees)
    slope = spec.twist_degree - s
    p = len(spec.factor_degrees) - 1
    cor = all(b >= p + 3 for b in spec.factor_degrees) and spec.twist_degree >= p + 2
    return SlopeCriterion(applies=slope > 0, slope=slope, corollary_applies=cor)


@dataclass(frozen=True)
class SectionSpace:
    """H^0 of O(n * inf + k * P0) on an elliptic curve, 0 <= k <= n.

    Basis: Riemann-Roch monomials of L(n * inf) followed by g, g^2, ..., g^k
    with g = (y + y0) / (x - x0), which has simple poles at inf and P0.
    """

    n_inf: int
    k_p0: int = 0
    p0: tuple[int, int] | None = None

    def __post_init__(self):
        if self.n_inf < 1 or not 0 <= self.k_p0 <= self.n_inf:
            raise ValueError("need n_inf >= 1 and 0 <= k_p0 <= n_inf")
        if self.k_p0 and self.p0 is None:
            raise ValueError("a point P0 is required when k_p0 > 0")
        if self.p0 is not None and self.p0[1] == 0:
            raise ValueError("P0 must not be 2-torsion")

    @property
    def degree(self) -> int:
        return self.n_inf + self.k_p0

    @property
    def dim(self) -> int:
        return self.degree

    def __mul__(self, other: "SectionSpace") -> "SectionSpace":
        p0 = self.p0 if self.k_p0 else other.p0
        if self.k_p0 and other.k_p0 and self.p0 != other.p0:
            raise ValueError("products need a common P0")
        return SectionSpace(self.n_inf + other.n_inf, self.k_p0 + other.k_p0, p0)

    def evaluate(self, xs: np.ndarray, ys: np.ndarray, prime: int) -> np.ndarray:
        rows = eval_monomials(rr_basis(None, self.n_inf), xs, ys, prime)
        if not self.k_p0:
            return rows
        x0, y0 = self.p0
        den = (np.asarray(xs, dtype=np.int64) - x0) % prime
        if not den.all():
            raise ModelInsufficientPoints("evaluation point on the fiber of P0")
        inv = np.array([pow(int(v), -1, prime) for v in den], dtype=np.int64)
        g = (np.asarray(ys, dtype=np.int64) + y0) % prime * inv % prime
        extra = [g]
        for _ in range(self.k_p0 - 1):
            extra.append(extra[-1] * g % prime)
        return np.vstack([rows, np.array(extra, dtype=np.float64)])


def _sample(curve: EllipticCurveModel, spaces: Sequence[SectionSpace], count: int) -> tuple[np.ndarray, np.ndarray]:
    bad = {s.p0[0] for s in spaces if s.k_p0}
    pts = [P for P in curve.points if P[0] not in bad][:count]
    if len(pts) < count:
        raise ModelInsufficientPoints(f"curve has fewer than {count} usable points")
    return np.array([P[0] for P in pts]), np.array([P[1] for P in pts])


def mb_tensor_h1_elliptic(
    curve: EllipticCurveModel,
    factor_bundles: Sequence[SectionSpace],
    twist: SectionSpace,
) -> int:
    """h^1 of M_{B_1} (x) ... (x) M_{B_k} (x) L on an elliptic curve, as h^0 - chi."""
    if not 1 <= len(factor_bundles) <= 3:
        raise ValueError("between one and three factors supported")
    if any(B.degree < 2 for B in factor_bundles):
        raise DegreeTooSmall("factor degrees must be >= 2")
    p = curve.prime
    products = [twist * B for B in factor_bundles]
    # a nonzero section of degree D vanishes at <= D points
    count = 2 * max(P.degree for P in products) + 1
    xs, ys = _sample(curve, [twist, *factor_bundles], count)

    def certified(space: SectionSpace) -> tuple[np.ndarray, RowSpace]:
        vals = space.evaluate(xs, ys, p)
        rs = RowSpace(count, p)
        rs.add(vals)
        if rs.rank != space.dim:
            raise ModelInsufficientPoints(f"basis of degree-{space.degree} sections not independent on samples")
        return vals, rs

    lv, _ = certified(twist)
    fvals = [certified(B)[0] for B in factor_bundles]
    pspaces = [certified(P)[1] for P in products]

    def mult(j: int, alpha: int) -> np.ndarray:
        prodv = fmod_p(lv * fvals[j][alpha], p)
        if not pspaces[j].contains(prodv):
            raise ModelInsufficientPoints("product section outside the expected space")
        # coordinates w.r.t. the echelon basis, a fixed basis of H^0(L B_j)
        return pspaces[j].coordinates(prodv)

    h0 = _nested_kernel_dim(
        [B.dim for B in factor_bundles], twist.dim, [P.dim for P in products], mult, p
    )
    spec = EllipticMBundleSpec(tuple(B.degree for B in factor_bundles), twist.degree)
    h1 = h0 - spec.degree
    if h1 < 0:
        raise ModelInsufficientPoints(f"h^0 = {h0} below chi = {spec.degree}")
    return h1

