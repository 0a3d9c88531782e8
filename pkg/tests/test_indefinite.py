from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from mockq.indefinite import f_indef, f_indef_bruteforce, hm_check, theta_hm
from mockq.qcore import monomial

from _oracle import as_dict

ORDER = 30


def double_sum(a, b, c, xc, xe, yc, ye, order, radius=None):
    radius = radius or order + 12
    out = {}
    for r in range(-radius, radius + 1):
        for s in range(-radius, radius + 1):
            if (r >= 0) != (s >= 0):
                continue
            sign = 1 if r >= 0 else -1
            e = a * r * (r - 1) // 2 + b * r * s + c * s * (s - 1) // 2 + xe * r + ye * s
            if e < order:
                v = sign * (-1) ** ((r + s) % 2) * Fraction(xc) ** r * Fraction(yc) ** s
                out[e] = out.get(e, 0) + v
    return {k: v for k, v in out.items() if v}


forms = st.tuples(st.integers(1, 3), st.integers(1, 3)).flatmap(
    lambda ac: st.tuples(st.just(ac[0]), st.integers(int((ac[0] * ac[1]) ** 0.5) + 1, 5), st.just(ac[1]))
)
points = st.tuples(st.sampled_from([1, -1, 2, -2]), st.integers(-1, 3))


@settings(max_examples=25, deadline=None)
@given(forms, points, points)
def test_stream_matches_double_sum(form, xp, yp):
    a, b, c = form
    assert b * b > a * c
    got = f_indef(a, b, c, monomial(xp[0], xp[1]), monomial(yp[0], yp[1]), 1, ORDER)
    want = double_sum(a, b, c, xp[0], xp[1], yp[0], yp[1], ORDER)
    lo = min([0, *want]) - 5
    assert as_dict(got, lo, ORDER) == want


@pytest.mark.parametrize("form", [(1, 2, 1), (2, 3, 2), (1, 3, 1)])
def test_stream_matches_box_with_formal_symbol(form):
    x = monomial(1, 1, x=1)
    y = monomial(-1, 2)
    s = f_indef(*form, x, y, 1, ORDER)
    box = f_indef_bruteforce(*form, x, y, 1, ORDER)
    assert s.eq_up_to(box, ORDER)[0]


def test_swap_symmetry():
    x, y = monomial(-1, 2), monomial(2, 1)
    lhs = f_indef(1, 3, 2, x, y, 1, ORDER)
    rhs = f_indef(2, 3, 1, y, x, 1, ORDER)
    assert lhs.eq_up_to(rhs, ORDER)[0]


def test_modulus_scales_exponents():
    x, y = monomial(-1, 2), monomial(-1, 3)
    base = f_indef(1, 2, 1, x, y, 1, 20)
    scaled = f_indef(1, 2, 1, monomial(-1, 4), monomial(-1, 6), 2, 40)
    assert scaled.eq_up_to(base.substitute(1, 2), 40)[0]


@pytest.mark.parametrize("n,p", [(1, 1), (2, 1), (3, 1), (1, 2), (3, 2)])
def test_hm_decomposition(n, p):
    ok, mismatch, _ = hm_check(n, p, monomial(-1, 2), monomial(-1, 3), 40)
    assert ok, mismatch


def test_theta_part_requires_coprime():
    with pytest.raises(ValueError):
        theta_hm(2, 2, monomial(-1, 2), monomial(-1, 3), 10)
