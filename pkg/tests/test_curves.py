from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ruledsyz.curves import (
    EllipticMBundleSpec,
    SectionSpace,
    mb_tensor_cohomology_p1,
    mb_tensor_h0_p1_explicit,
    mb_tensor_h1_elliptic,
    slope_criterion_elliptic,
    split_cohomology,
)
from ruledsyz.errors import DegreeTooSmall
from ruledsyz.models import elliptic_points

CURVE = elliptic_points(2, 3, 10007)
P0 = next(P for P in CURVE.points if P[1] != 0)


def test_split_cohomology_examples():
    assert split_cohomology([0]) == (1, 0)
    assert split_cohomology([-2, 0, 3]) == (5, 1)
    assert split_cohomology([-1, -1]) == (0, 0)


def test_p1_examples():
    assert mb_tensor_cohomology_p1([2, 2], 1) == 0
    assert mb_tensor_cohomology_p1([2, 2], 0) == 4
    assert mb_tensor_cohomology_p1([3], -1) == 3


@given(st.lists(st.integers(1, 4), min_size=1, max_size=3), st.integers(-6, 6))
def test_p1_closed_form_vs_nested_kernels(b, l):
    h0, h1 = mb_tensor_h0_p1_explicit(b, l)
    assert h0 >= 0 and h1 >= 0
    assert h1 == mb_tensor_cohomology_p1(b, l)


def test_p1_vanishes_once_l_reaches_p():
    for b in product(range(1, 4), repeat=3):
        for l in range(2, 7):
            assert mb_tensor_cohomology_p1(b, l) == 0


def test_slope_examples():
    s = slope_criterion_elliptic(EllipticMBundleSpec((5, 5), 4))
    assert s.applies and s.slope == Fraction(3, 2)
    s = slope_criterion_elliptic(EllipticMBundleSpec((4, 4), 3))
    assert s.applies and s.corollary_applies and s.slope == Fraction(1, 3)
    s = slope_criterion_elliptic(EllipticMBundleSpec((2,), 2))
    assert not s.applies and s.slope == 0
    with pytest.raises(DegreeTooSmall):
        slope_criterion_elliptic(EllipticMBundleSpec((1, 3), 5))


@given(st.lists(st.integers(2, 9), min_size=1, max_size=4), st.integers(-5, 20))
def test_uniform_degree_bound_implies_slope(b, l):
    s = slope_criterion_elliptic(EllipticMBundleSpec(tuple(b), l))
    assert isinstance(s.slope, Fraction)
    if s.corollary_applies:
        assert s.applies


@given(st.lists(st.integers(2, 9), min_size=1, max_size=4), st.integers(-5, 20))
def test_degree_formula_is_rank_times_slope(b, l):
    spec = EllipticMBundleSpec(tuple(b), l)
    assert spec.degree == spec.rank * slope_criterion_elliptic(spec).slope


def test_elliptic_examples():
    S = SectionSpace
    assert mb_tensor_h1_elliptic(CURVE, [S(3)], S(3)) == 0
    assert mb_tensor_h1_elliptic(CURVE, [S(2)], S(2)) == 1
    assert mb_tensor_h1_elliptic(CURVE, [S(2)], S(1, 1, P0)) == 0


def test_elliptic_slope_sufficiency_small():
    for fd in [(3,), (4,), (3, 3), (3, 4)]:
        for l in range(2, 7):
            if slope_criterion_elliptic(EllipticMBundleSpec(fd, l)).applies:
                assert mb_tensor_h1_elliptic(CURVE, [SectionSpace(d) for d in fd], SectionSpace(l)) == 0


def test_elliptic_three_factors():
    h = mb_tensor_h1_elliptic(CURVE, [SectionSpace(3)] * 3, SectionSpace(5))
    assert h == 0  # 3 * 3/2 = 4.5 < 5
    assert mb_tensor_h1_elliptic(CURVE, [SectionSpace(3)] * 3, SectionSpace(3)) >= 0


def test_section_space_products():
    a = SectionSpace(2, 1, P0)
    b = SectionSpace(3)
    c = a * b
    assert (c.n_inf, c.k_p0, c.p0, c.degree) == (5, 1, P0, 6)
    with pytest.raises(ValueError):
        SectionSpace(1, 2, P0)
