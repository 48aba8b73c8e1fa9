import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ruledsyz.linalg import (
    EchelonSpace,
    RowSpace,
    fmod_p,
    left_nullspace,
    matmul_mod,
    rank_mod_p,
    rref,
)

PRIMES = [2, 3, 7, 10007, 65521]


def random_low_rank(rng, rows, cols, rank, p):
    a = rng.integers(0, p, (rows, rank))
    b = rng.integers(0, p, (rank, cols))
    return (a @ b % p).astype(np.float64)


def _gf_rank(m, p):
    # plain Python elimination as a reference
    a = [[int(x) % p for x in row] for row in m]
    r = 0
    cols = len(a[0]) if a else 0
    for c in range(cols):
        piv = next((i for i in range(r, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][c], -1, p)
        a[r] = [x * inv % p for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[r])]
        r += 1
    return r


@given(st.integers(-(2**50), 2**50), st.sampled_from(PRIMES))
def test_fmod_matches_python(x, p):
    assert fmod_p(np.array([float(x)]), p)[0] == x % p


@given(st.sampled_from(PRIMES), st.integers(1, 12), st.integers(1, 12), st.integers(0, 2**32))
def test_rank_matches_reference(p, rows, cols, seed):
    rng = np.random.default_rng(seed)
    r = int(rng.integers(0, min(rows, cols) + 1))
    m = random_low_rank(rng, rows, cols, r, p)
    assert rank_mod_p(m, p) == _gf_rank(m, p)


@given(st.sampled_from(PRIMES), st.integers(0, 2**32))
def test_rref_properties(p, seed):
    rng = np.random.default_rng(seed)
    m = random_low_rank(rng, 9, 11, 5, p)
    red, piv = rref(m, p)
    assert red.shape[0] == piv.size == _gf_rank(m, p)
    assert np.array_equal(red[:, piv], np.eye(piv.size))
    assert list(piv) == sorted(piv)
    # same row space
    assert rank_mod_p(np.vstack([m, red]), p) == piv.size


def test_matmul_mod_large_inner_dimension():
    p = 65521
    rng = np.random.default_rng(1)
    a = rng.integers(0, p, (3, 5000))
    b = rng.integers(0, p, (5000, 4))
    want = np.array([[sum(int(x) * int(y) for x, y in zip(a[i], b[:, j])) % p for j in range(4)] for i in range(3)])
    assert np.array_equal(matmul_mod(a.astype(float), b.astype(float), p), want)


@given(st.sampled_from([7, 10007]), st.integers(0, 2**32))
def test_rowspace_incremental(p, seed):
    rng = np.random.default_rng(seed)
    m = random_low_rank(rng, 40, 25, 13, p)
    rs = RowSpace(25, p)
    for s in range(0, 40, 7):
        rs.add(m[s:s + 7])
    assert rs.rank == 13
    basis = rs.basis
    assert np.array_equal(basis[:, rs.pivots], np.eye(13))
    assert rs.contains(m)
    # coordinates reproduce the vectors
    coords = rs.coordinates(m)
    assert np.array_equal(matmul_mod(coords, basis, p), m)


@given(st.sampled_from([7, 10007]), st.integers(0, 2**32))
def test_echelon_space_rank(p, seed):
    rng = np.random.default_rng(seed)
    m = random_low_rank(rng, 50, 30, 17, p)
    es = EchelonSpace(30, p)
    for s in range(0, 50, 8):
        es.add(m[s:s + 8])
    assert es.rank == 17
    assert not es.reduce(m).any()


def test_rank_cap_and_order_independence():
    p = 10007
    rng = np.random.default_rng(5)
    m = random_low_rank(rng, 300, 200, 120, p)
    ranks = {rank_mod_p(m, p, seed=s) for s in (None, 0, 1, 2)}
    assert ranks == {120}
    assert rank_mod_p(m, p, cap=120) == 120


@given(st.sampled_from([7, 10007]), st.integers(0, 2**32))
def test_left_nullspace(p, seed):
    rng = np.random.default_rng(seed)
    m = random_low_rank(rng, 15, 9, 6, p)
    ker = left_nullspace(m, p)
    assert ker.shape[0] == 15 - 6
    assert not matmul_mod(ker, m, p).any()
    assert rank_mod_p(ker, p) == ker.shape[0]


def test_prime_range_checked():
    with pytest.raises(ValueError):
        RowSpace(3, 1 << 27)
