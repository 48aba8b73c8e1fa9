"""Brute-force graded Betti numbers by building a minimal free resolution.

Independent of the Koszul engine: works in the polynomial ring
S = F_p[x_0..x_n], takes the ideal as the kernel of evaluation at sample
points, and computes syzygies degree by degree with its own integer
elimination.  Only meant for tiny examples.
"""
from __future__ import annotations

from itertools import combinations_with_replacement

import numpy as np


def monomials(nvars: int, deg: int) -> list[tuple[int, ...]]:
    if deg < 0:
        return []
    out = []
    for combo in combinations_with_replacement(range(nvars), deg):
        e = [0] * nvars
        for v in combo:
            e[v] += 1
        out.append(tuple(e))
    return sorted(out)


def _rref(m: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    a = np.array(m, dtype=np.int64) % p
    rows, cols = a.shape
    piv, r = [], 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        a[[r, i]] = a[[i, r]]
        a[r] = a[r] * pow(int(a[r, c]), -1, p) % p
        f = a[:, c].copy()
        f[r] = 0
        a = (a - np.outer(f, a[r])) % p
        piv.append(c)
        r += 1
    return a[:r], piv


def _left_kernel(m: np.ndarray, p: int) -> np.ndarray:
    """Rows spanning {c : c @ m = 0 mod p}."""
    n = m.shape[0]
    if m.shape[1] == 0:
        return np.eye(n, dtype=np.int64)
    red, piv = _rref(np.asarray(m, dtype=np.int64).T, p)
    free = [j for j in range(n) if j not in set(piv)]
    ker = np.zeros((len(free), n), dtype=np.int64)
    for t, f in enumerate(free):
        ker[t, f] = 1
        for i, c in enumerate(piv):
            ker[t, c] = (-red[i, f]) % p
    return ker


class FreeModule:
    """Sum of S(-d_g); degree-j basis: (generator, monomial of degree j - d_g)."""

    def __init__(self, nvars: int, degs: list[int]):
        self.nvars = nvars
        self.degs = degs
        self._cache: dict[int, tuple[list, dict]] = {}

    def basis(self, j: int):
        if j not in self._cache:
            lst = [(g, m) for g, d in enumerate(self.degs) for m in monomials(self.nvars, j - d)]
            self._cache[j] = (lst, {b: i for i, b in enumerate(lst)})
        return self._cache[j]


def _shift(mono, var):
    e = list(mono)
    e[var] += 1
    return tuple(e)


def _mul_variable(vecs: np.ndarray, F: FreeModule, j: int, var: int) -> np.ndarray:
    """x_var times degree-j elements, as degree-(j+1) vectors."""
    src, _ = F.basis(j)
    _, dst = F.basis(j + 1)
    out = np.zeros((vecs.shape[0], len(dst)), dtype=np.int64)
    for i, (g, m) in enumerate(src):
        out[:, dst[(g, _shift(m, var))]] = vecs[:, i]
    return out


def _map_matrix(images: list[dict], G: FreeModule, F: FreeModule, j: int, p: int) -> np.ndarray:
    """Matrix of G(j) -> F(j); images[g] maps (h, mono) -> coeff."""
    src, _ = G.basis(j)
    _, dst = F.basis(j)
    mat = np.zeros((len(src), len(dst)), dtype=np.int64)
    for i, (g, m) in enumerate(src):
        for (h, mh), c in images[g].items():
            tgt = tuple(x + y for x, y in zip(m, mh))
            mat[i, dst[(h, tgt)]] = (mat[i, dst[(h, tgt)]] + c) % p
    return mat


def _new_generators(kernel: np.ndarray, old: np.ndarray, p: int) -> np.ndarray:
    """Kernel vectors independent modulo the span of ``old``."""
    if kernel.shape[0] == 0:
        return kernel
    base_rank = len(_rref(old, p)[1]) if old.shape[0] else 0
    chosen = []
    cur = old
    for v in kernel:
        trial = np.vstack([cur, v[None]]) if cur.shape[0] else v[None]
        r = len(_rref(trial, p)[1])
        if r > base_rank + len(chosen):
            chosen.append(v)
            cur = trial
    return np.array(chosen, dtype=np.int64).reshape(len(chosen), kernel.shape[1])


def betti_numbers(values: np.ndarray, p: int, p_max: int, j_max: int) -> dict[tuple[int, int], int]:
    """Graded Betti numbers beta_{i,j}, i <= p_max, j <= j_max, of S/I.

    ``values`` is (nvars x npoints): coordinates of the sample points.
    I_j is the kernel of evaluating degree-j monomials at the points.
    """
    values = np.asarray(values, dtype=np.int64) % p
    nvars = values.shape[0]
    betti = {(0, 0): 1}
    S = FreeModule(nvars, [0])

    # level 1: generators of I
    images: list[dict] = []
    degs: list[int] = []
    prev_kernel = np.zeros((0, 1), dtype=np.int64)
    for j in range(1, j_max + 1):
        monos, _ = S.basis(j)
        ev = np.ones((len(monos), values.shape[1]), dtype=np.int64)
        for i, (_, m) in enumerate(monos):
            for v, k in enumerate(m):
                for _ in range(k):
                    ev[i] = ev[i] * values[v] % p
        ker = _left_kernel(ev, p)
        old = np.vstack([_mul_variable(prev_kernel, S, j - 1, v) for v in range(nvars)]) if prev_kernel.shape[0] else np.zeros((0, len(monos)), dtype=np.int64)
        new = _new_generators(ker, old, p)
        for vec in new:
            images.append({(0, monos[t][1]): int(c) for t, c in enumerate(vec) if c})
            degs.append(j)
        if new.shape[0]:
            betti[(1, j)] = new.shape[0]
        prev_kernel = ker

    target = S
    for level in range(2, p_max + 1):
        F = FreeModule(nvars, degs)
        new_images: list[dict] = []
        new_degs: list[int] = []
        prev_kernel = np.zeros((0, 0), dtype=np.int64)
        for j in range(min(degs, default=j_max + 1), j_max + 1):
            mat = _map_matrix(images, F, target, j, p)
            ker = _left_kernel(mat, p)
            if prev_kernel.shape[0]:
                old = np.vstack([_mul_variable(prev_kernel, F, j - 1, v) for v in range(nvars)])
            else:
                old = np.zeros((0, mat.shape[0]), dtype=np.int64)
            new = _new_generators(ker, old, p)
            basis, _ = F.basis(j)
            for vec in new:
                new_images.append({basis[t]: int(c) for t, c in enumerate(vec) if c})
                new_degs.append(j)
            if new.shape[0]:
                betti[(level, j)] = new.shape[0]
            prev_kernel = ker
        images, degs, target = new_images, new_degs, F
        if not degs:
            break
    return betti
