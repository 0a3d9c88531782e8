"""Indefinite theta series ``f_{a,b,c}`` and its decomposition into an Appell-Lerch part
``g_{a,b,c}`` and a theta-quotient part ``theta_{n,p}``.
"""
from __future__ import annotations

import math
from fractions import Fraction

from .appell import m_sum
from .sums import STALL_WINDOW
from .errors import DivergentSum, NonGenericParameters
from .orders import product_to, quotient_to
from .products import Jbar, Jm, j_theta, j_vanishes
from .qcore import Accumulator, ParamMonomial, QSeries, fraction

__all__ = ["f_indef", "f_indef_bruteforce", "g_hm", "theta_hm", "hm_check"]

_MAX_DIAGONALS = 100_000


def _mono(a) -> ParamMonomial:
    if isinstance(a, ParamMonomial):
        return a
    if isinstance(a, QSeries):
        return a.to_monomial()
    return ParamMonomial(a)


def _c2(n):
    return n * (n - 1) / Fraction(2) if isinstance(n, Fraction) else Fraction(n * (n - 1), 2)


def f_indef(a: int, b: int, c: int, x, y, modulus=1, order=50) -> QSeries:
    """``f_{a,b,c}(x, y, q^M)``: the positive minus the negative quadrant sum of
    ``(-1)^{r+s} x^r y^s q^{M(a C(r,2) + b r s + c C(s,2))}``.

    The quadrants are walked one antidiagonal ``r + s = t`` at a time; a
    quadrant is finished when the smallest exponent on the diagonal has
    passed ``order`` and is still rising.
    """
    x, y = _mono(x), _mono(y)
    m = fraction(modulus)
    order = fraction(order)
    acc = Accumulator()
    for sign, diagonals in ((1, _count(0, 1)), (-1, _count(-2, -1))):
        prev = prev2 = None
        stall = 0
        for _i, t in zip(range(_MAX_DIAGONALS), diagonals):
            rs = range(0, t + 1) if sign == 1 else range(-1, t, -1)
            lowest = None
            for r in rs:
                s = t - r
                term = (x ** r) * (y ** s)
                e = term.q_exp + m * (a * _c2(r) + b * r * s + c * _c2(s))
                lowest = e if lowest is None else min(lowest, e)
                if e < order:
                    v = term.scalar * sign * (-1) ** ((r + s) % 2)
                    acc.add(e, term.syms, v)
            if lowest >= order and prev is not None and lowest > prev:
                break
            if prev is not None and lowest <= prev and prev2 is not None and lowest - prev <= prev - prev2:
                stall += 1
                if stall >= STALL_WINDOW:
                    raise DivergentSum(f"f_{{{a},{b},{c}}} diverges: diagonal valuation stalled at {lowest}")
            else:
                stall = 0
            prev2, prev = prev, lowest
        else:
            raise DivergentSum("indefinite theta series did not terminate")
    return acc.to_series(order)


def _count(start, step):
    n = start
    while True:
        yield n
        n += step


def f_indef_bruteforce(a, b, c, x, y, modulus=1, order=30, radius=None) -> QSeries:
    """Direct double loop over ``|r|, |s| <= radius``; a check on :func:`f_indef`."""
    x, y = _mono(x), _mono(y)
    m = fraction(modulus)
    order = fraction(order)
    if radius is None:
        radius = int(2 * order) + 10
    acc = Accumulator()
    for r in range(-radius, radius + 1):
        for s in range(-radius, radius + 1):
            if r >= 0 and s >= 0:
                sign = 1
            elif r < 0 and s < 0:
                sign = -1
            else:
                continue
            term = (x ** r) * (y ** s)
            e = term.q_exp + m * (a * _c2(r) + b * r * s + c * _c2(s))
            if e < order:
                acc.add(e, term.syms, term.scalar * sign * (-1) ** ((r + s) % 2))
    return acc.to_series(order)


def g_hm(a: int, b: int, c: int, x, y, z1, z0, order=50) -> QSeries:
    """``g_{a,b,c}(x, y, q, z1, z0)``: two finite sums of ``j · m`` products."""
    x, y, z1, z0 = (_mono(v) for v in (x, y, z1, z0))
    order = fraction(order)
    disc = b * b - a * c
    if disc <= 0:
        raise ValueError("g_{a,b,c} needs b^2 > ac")
    terms = []
    for t in range(a):
        pref = (-y) ** t * ParamMonomial(1, c * _c2(t))
        jx = x.shift(b * t)
        arg = -((-y) ** a / (-x) ** b).shift(a * _c2(b + 1) - c * _c2(a + 1) - t * disc)
        terms.append((pref, jx, a, arg, a * disc, z0))
    for t in range(c):
        pref = (-x) ** t * ParamMonomial(1, a * _c2(t))
        jy = y.shift(b * t)
        arg = -((-x) ** c / (-y) ** b).shift(c * _c2(b + 1) - a * _c2(c + 1) - t * disc)
        terms.append((pref, jy, c, arg, c * disc, z1))
    out = QSeries.zero(order)
    for pref, jarg, jmod, marg, mmod, z in terms:
        if j_vanishes(jarg, jmod):
            continue
        out = out + product_to(
            order,
            lambda w, p=pref: QSeries.from_monomial(p),
            lambda w, u=jarg, k=jmod: j_theta(u, k, w),
            lambda w, u=marg, k=mmod, zz=z: m_sum(u, k, zz, w),
        )
    return out.truncate(order)


def theta_hm(n: int, p: int, x, y, order=50) -> QSeries:
    """``theta_{n,p}(x, y, q)``, the theta-quotient part of ``f_{n,n+p,n}``.

    Binomials at half-integers use ``C(alpha, 2) = alpha(alpha-1)/2``.
    """
    x, y = _mono(x), _mono(y)
    order = fraction(order)
    if math.gcd(n, p) != 1:
        raise ValueError("theta_{n,p} needs gcd(n, p) = 1")
    half = Fraction(n - 1, 2)
    frac_part = half - math.floor(half)
    big = p * p * (2 * n + p)
    small = n * p * p
    terms = []
    for r_star in range(p):
        for s_star in range(p):
            r = r_star + frac_part
            s = s_star + frac_part
            ex = r - half
            ey = s + Fraction(n + 1, 2)
            if ex.denominator != 1 or ey.denominator != 1:
                raise ValueError("non-integral power of x or y in theta_{n,p}")
            qexp = n * _c2(ex) + (n + p) * ex * ey + n * _c2(ey)
            pref = ParamMonomial(1, qexp) * (-x) ** int(ex) * (-y) ** int(ey)
            num1 = -ParamMonomial(1, n * p * (s - r)) * x ** n / y ** n
            num2 = ParamMonomial(1, p * (2 * n + p) * (r + s) + p * (n + p)) * x ** p * y ** p
            den1 = ParamMonomial(1, p * (2 * n + p) * r + Fraction(p * (n + p), 2)) * (-y) ** (n + p) / (-x) ** n
            den2 = ParamMonomial(1, p * (2 * n + p) * s + Fraction(p * (n + p), 2)) * (-x) ** (n + p) / (-y) ** n
            for d in (den1, den2):
                if j_vanishes(d, big):
                    raise NonGenericParameters(f"j({d}, q^{big}) vanishes in theta_{{{n},{p}}}")
            terms.append((pref, num1, num2, den1, den2))

    def inner(w):
        out = QSeries.zero(w)
        for pref, num1, num2, den1, den2 in terms:
            out = out + quotient_to(
                w,
                lambda v, pref=pref, num1=num1, num2=num2: product_to(
                    v,
                    lambda u: QSeries.from_monomial(pref),
                    lambda u: Jm(big, u) ** 3,
                    lambda u: j_theta(num1, small, u),
                    lambda u: j_theta(num2, big, u),
                ),
                lambda v, den1=den1, den2=den2: product_to(
                    v,
                    lambda u: j_theta(den1, big, u),
                    lambda u: j_theta(den2, big, u),
                ),
            )
        return out.truncate(w)

    return quotient_to(order, inner, lambda w: Jbar(0, n * p * (2 * n + p), w))


def hm_check(n: int, p: int, x, y, order=40):
    """Compare ``f_{n,n+p,n}(x, y)`` with ``g_{n,n+p,n}(x, y, -1, -1) + theta_{n,p}(x, y)``.

    Returns ``(ok, mismatch, residual)``.
    """
    order = fraction(order)
    lhs = f_indef(n, n + p, n, x, y, 1, order)
    rhs = g_hm(n, n + p, n, x, y, -1, -1, order) + theta_hm(n, p, x, y, order)
    ok, mismatch = lhs.eq_up_to(rhs, order)
    return ok, mismatch, (lhs - rhs).truncate(order)
