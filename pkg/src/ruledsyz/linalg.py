"""Exact dense linear algebra over a prime field F_p.

Matrices are float64 arrays holding integers in ``[0, p)``.  Products go
through BLAS and are reduced with ``fmod_p``; this is exact as long as
every accumulated dot product stays below 2**53, which ``matmul_mod`` enforces
by splitting the inner dimension.
"""
from __future__ import annotations

from typing import Iterable, Iterator

import numpy as np

MAX_PRIME = 1 << 26
_EXACT = float(1 << 53)


def fmod_p(x: np.ndarray, p: int) -> np.ndarray:
    """Reduce an integer-valued float array into ``[0, p)``.

    Several times faster than ``np.remainder`` on floats; exact for
    ``|x| < 2**53`` since the floored quotient is off by at most one.
    """
    x = np.asarray(x, dtype=np.float64)
    q = x * (1.0 / p)
    np.floor(q, out=q)
    q *= p
    np.subtract(x, q, out=q)
    np.add(q, p, out=q, where=q < 0)
    np.subtract(q, p, out=q, where=q >= p)
    return q


def check_prime(p: int) -> None:
    if p < 2 or p >= MAX_PRIME:
        raise ValueError(f"prime {p} outside supported range [2, 2**26)")


def as_field(a, p: int) -> np.ndarray:
    """Return ``a`` reduced mod ``p`` as a float64 array."""
    arr = np.asarray(a)
    if arr.dtype.kind in "iu":
        arr = np.remainder(arr, p)
    return fmod_p(arr, p)


def matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    k = a.shape[1]
    if k == 0:
        return np.zeros((a.shape[0], b.shape[1]))
    step = max(1, int(_EXACT // float((p - 1) ** 2)) - 1)
    if k <= step:
        return fmod_p(a @ b, p)
    out = np.zeros((a.shape[0], b.shape[1]))
    for s in range(0, k, step):
        out += fmod_p(a[:, s:s + step] @ b[s:s + step], p)
    return fmod_p(out, p)


def rref(m: np.ndarray, p: int) -> tuple[np.ndarray, np.ndarray]:
    """Reduced row echelon form of ``m`` over F_p.

    Returns the nonzero rows and their pivot columns.  Pivoting picks the
    first column with a nonzero entry and, within it, the first such row.
    """
    a = np.array(m, dtype=np.float64, copy=True)
    rows, cols = a.shape
    pivots: list[int] = []
    # entries are reduced lazily; each update adds at most p**2 in magnitude
    sq = float(p - 1) ** 2
    budget = int(_EXACT // sq) - 2
    pending = 0
    # trailing rows may hold unreduced entries
    dirty = True
    r = 0
    c = 0
    while r < rows and c < cols:
        col = fmod_p(a[r:, c], p)
        nz = np.flatnonzero(col)
        if nz.size == 0:
            if dirty:
                a[r:, c:] = fmod_p(a[r:, c:], p)
                dirty = False
            live = np.flatnonzero(a[r:, c:].any(axis=0))
            if live.size == 0:
                break
            c += int(live[0])
            nz = np.flatnonzero(a[r:, c])
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        a[r] = fmod_p(a[r], p)
        inv = pow(int(a[r, c]), -1, p)
        if inv != 1:
            a[r] = fmod_p(a[r] * inv, p)
        col = fmod_p(a[:, c], p)
        col[r] = 0.0
        hit = np.flatnonzero(col)
        if hit.size:
            if hit.size * 2 > rows:
                a -= np.outer(col, a[r])
            else:
                a[hit] -= np.outer(col[hit], a[r])
            pending += 1
            dirty = True
            if pending >= budget:
                a[:] = fmod_p(a, p)
                pending = 0
        pivots.append(c)
        r += 1
        c += 1
    return fmod_p(a[:r], p), np.asarray(pivots, dtype=np.int64)


class RowSpace:
    """Incrementally grown row space kept in reduced echelon form.

    Rows of ``basis`` are not sorted by pivot, but every pivot column is a
    unit vector across the basis, so the coordinates of any vector lying in
    the span are simply its entries at ``pivots``.

    Updates of the stored rows are accumulated without reduction and
    reduced only when the 2**53 headroom runs out or ``basis`` is read.
    """

    def __init__(self, ncols: int, p: int):
        check_prime(p)
        self.p = p
        self.ncols = ncols
        self._rows = np.zeros((0, ncols))
        self._n = 0
        self.pivots = np.zeros(0, dtype=np.int64)
        self._slack = 0.0  # bound on |entries| beyond [0, p)
        self._limit = _EXACT / 4

    @property
    def rank(self) -> int:
        return self._n

    @property
    def basis(self) -> np.ndarray:
        self._normalize()
        return self._rows[:self._n]

    def _normalize(self) -> None:
        if self._slack:
            self._rows[:self._n] = fmod_p(self._rows[:self._n], self.p)
            self._slack = 0.0

    def reduce(self, x: np.ndarray) -> np.ndarray:
        if self._n == 0:
            return np.array(x, dtype=np.float64, copy=True)
        return fmod_p(x - matmul_mod(x[:, self.pivots], self.basis, self.p), self.p)

    def add(self, x: np.ndarray) -> int:
        """Add the rows of ``x``; return how many were independent."""
        x = np.atleast_2d(np.asarray(x, dtype=np.float64))
        if x.shape[0] == 0:
            return 0
        red, piv = rref(self.reduce(x), self.p)
        k = int(piv.size)
        if k == 0:
            return 0
        n = self._n
        if n:
            coef = fmod_p(self._rows[:n, piv], self.p)
            step = float(k) * (self.p - 1) ** 2
            if self._slack + step > self._limit or k * (self.p - 1) ** 2 >= _EXACT:
                self._normalize()
                self._rows[:n] = fmod_p(self._rows[:n] - matmul_mod(coef, red, self.p), self.p)
            else:
                self._rows[:n] -= coef @ red
                self._slack += step
                self._rows[:n, piv] = 0.0
        if n + k > self._rows.shape[0]:
            grown = np.zeros((max(2 * self._rows.shape[0], n + k, 16), self.ncols))
            grown[:n] = self._rows[:n]
            self._rows = grown
        self._rows[n:n + k] = red
        self._n = n + k
        self.pivots = np.concatenate([self.pivots, piv])
        return k

    def coordinates(self, x: np.ndarray) -> np.ndarray:
        """Coordinates of rows of ``x`` (assumed in the span) w.r.t. ``basis``."""
        return np.asarray(x)[..., self.pivots]

    def contains(self, x: np.ndarray) -> bool:
        x = np.atleast_2d(np.asarray(x, dtype=np.float64))
        return not self.reduce(x).any()


class EchelonSpace:
    """Row space as a sequence of echelon blocks, for rank computations only.

    Block t is in reduced form and vanishes on the pivots of blocks < t, so
    reducing a vector block by block in order clears all pivots.  Older
    blocks are never updated.
    """

    def __init__(self, ncols: int, p: int):
        check_prime(p)
        self.p = p
        self.ncols = ncols
        self.blocks: list[tuple[np.ndarray, np.ndarray]] = []
        self.rank = 0

    def reduce(self, x: np.ndarray) -> np.ndarray:
        p = self.p
        x = np.array(x, dtype=np.float64, copy=True)
        slack = 0.0
        for rows, piv in self.blocks:
            step = float(piv.size) * (p - 1) ** 2
            if slack + step > _EXACT / 4:
                x = fmod_p(x, p)
                slack = 0.0
            x -= matmul_mod(fmod_p(x[:, piv], p), rows, p) if step >= _EXACT / 4 else fmod_p(x[:, piv], p) @ rows
            slack += step
        return fmod_p(x, p)

    def add(self, x: np.ndarray) -> int:
        x = np.atleast_2d(np.asarray(x, dtype=np.float64))
        if x.shape[0] == 0:
            return 0
        red, piv = rref(self.reduce(x), self.p)
        if piv.size:
            self.blocks.append((red, piv))
            self.rank += int(piv.size)
        return int(piv.size)


def _chunks(n: int, size: int, order: np.ndarray | None) -> Iterator[np.ndarray]:
    idx = np.arange(n) if order is None else order
    for s in range(0, n, size):
        yield idx[s:s + size]


def rank_mod_p(
    m: np.ndarray,
    p: int,
    cap: int | None = None,
    chunk: int = 128,
    seed: int | None = 0,
) -> int:
    """Rank of ``m`` over F_p.

    Rows are fed in chunks, in a seeded random order when ``seed`` is not
    None; the result does not depend on the order.  Stops once ``cap`` is
    reached, so ``cap`` must be a true upper bound on the rank.
    """
    m = np.asarray(m, dtype=np.float64)
    return rank_of_rows(
        lambda idx: m[idx], m.shape[0], m.shape[1], p, cap=cap, chunk=chunk, seed=seed
    )


def rank_of_rows(
    fetch,
    nrows: int,
    ncols: int,
    p: int,
    cap: int | None = None,
    chunk: int = 128,
    seed: int | None = 0,
) -> int:
    """Rank of a matrix whose rows are produced on demand by ``fetch(indices)``."""
    bound = min(nrows, ncols)
    if cap is not None:
        bound = min(bound, cap)
    if bound <= 0:
        return 0
    order = None
    if seed is not None:
        order = np.random.default_rng(seed).permutation(nrows)
    space = EchelonSpace(ncols, p)
    for idx in _chunks(nrows, chunk, order):
        space.add(fetch(idx))
        if space.rank >= bound:
            break
    return space.rank


def span(rows: Iterable[np.ndarray] | np.ndarray, ncols: int, p: int, chunk: int = 256) -> RowSpace:
    space = RowSpace(ncols, p)
    arr = np.atleast_2d(np.asarray(rows, dtype=np.float64)) if not isinstance(rows, np.ndarray) else rows
    if arr.size == 0:
        return space
    for s in range(0, arr.shape[0], chunk):
        space.add(arr[s:s + chunk])
    return space


def left_nullspace(m: np.ndarray, p: int) -> np.ndarray:
    """Basis (as rows) of ``{c : c @ m == 0}`` over F_p."""
    m = np.asarray(m, dtype=np.float64)
    nrows = m.shape[0]
    if nrows == 0:
        return np.zeros((0, 0))
    if m.shape[1] == 0:
        return np.eye(nrows)
    space = span(m.T, nrows, p)
    piv = space.pivots
    free = np.setdiff1d(np.arange(nrows), piv)
    out = np.zeros((free.size, nrows))
    if free.size == 0:
        return out
    out[np.arange(free.size), free] = 1.0
    # x[piv_i] = -basis[i, f] for each free column f
    out[:, piv] = fmod_p(-space.basis[:, free].T, p)
    return out
