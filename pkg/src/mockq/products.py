"""q-Pochhammer symbols and theta products ``j``, ``J_{a,m}``, ``Jbar_{a,m}``, ``J_m``.

Every function taking an ``order`` argument returns a series exact below
that order.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .errors import DivergentProduct
from .qcore import ParamMonomial, QSeries, fraction

__all__ = [
    "poch_finite", "poch_infinite", "poch_infinite_multi", "j_theta",
    "J", "Jbar", "Jm", "theta_reduce", "j_vanishes",
]


def _as_monomial(a) -> ParamMonomial:
    if isinstance(a, ParamMonomial):
        return a
    if isinstance(a, QSeries):
        return a.to_monomial()
    return ParamMonomial(a)


def poch_finite(a, modulus=1, n: int = 0, order=None) -> QSeries:
    """``(a; q^M)_n = prod_{k<n} (1 - a q^{kM})``; exact unless ``order`` is given."""
    a = _as_monomial(a)
    m = fraction(modulus)
    n = int(n)
    if n < 0:
        raise ValueError("finite Pochhammer symbols need n >= 0")
    if order is None:
        out = QSeries.one()
        for k in range(n):
            out = out.times_one_minus(a.shift(k * m))
        return out
    order = fraction(order)
    return _poch_finite_cached(a, m, n, order)


@lru_cache(maxsize=8192)
def _poch_finite_cached(a, m, n, order):
    # factors with negative q-exponent lower the truncation, so start higher
    margin = sum(min(Fraction(0), a.q_exp + k * m) for k in range(n))
    out = QSeries.one(order - margin)
    for k in range(n):
        out = out.times_one_minus(a.shift(k * m))
    return out.truncate(order)


def poch_infinite(a, modulus=1, order=50) -> QSeries:
    """``(a; q^M)_inf`` truncated at ``order``; requires ``qExp(a) >= 0``."""
    a = _as_monomial(a)
    return _poch_infinite_cached(a, fraction(modulus), fraction(order))


@lru_cache(maxsize=8192)
def _poch_infinite_cached(a: ParamMonomial, m: Fraction, order: Fraction) -> QSeries:
    if m <= 0:
        raise ValueError("the modulus of a product must be positive")
    if a.q_exp < 0:
        raise DivergentProduct(f"(a; q^{m})_inf diverges for a = {a}")
    if a.is_scalar and a.scalar == 1:
        return QSeries.zero(order)
    out = QSeries.one(order)
    k = 0
    while a.q_exp + k * m < order:
        out = out.times_one_minus(a.shift(k * m))
        k += 1
    return out


def poch_infinite_multi(args, modulus=1, order=50) -> QSeries:
    """``(a_1, ..., a_j; q^M)_inf``."""
    out = QSeries.one(order)
    for a in args:
        out = out * poch_infinite(a, modulus, order)
    return out.truncate(order)


def theta_reduce(x, modulus):
    """Split ``x = q^{nM} x0`` with ``0 <= qExp(x0) < M``.

    Returns ``(n, x0, prefactor)`` where ``j(x, q^M) = prefactor · j(x0, q^M)``
    and ``prefactor = (-1)^n q^{-M·C(n,2)} x0^{-n}``.
    """
    x = _as_monomial(x)
    m = fraction(modulus)
    n = math.floor(x.q_exp / m)
    x0 = x.shift(-n * m)
    pref = ParamMonomial((-1) ** (n % 2), -m * (n * (n - 1) // 2)) * x0 ** (-n)
    return n, x0, pref


def j_vanishes(x, modulus) -> bool:
    """True when ``j(x, q^M)`` is identically zero, i.e. ``x`` is in ``q^{MZ}``."""
    _n, x0, _p = theta_reduce(x, modulus)
    return x0.is_scalar and x0.scalar == 1


def j_theta(x, modulus=1, order=50) -> QSeries:
    """``j(x, q^M) = (q^M, x, q^M/x; q^M)_inf``.

    Arguments outside ``0 <= qExp(x) <= M`` are brought into range with the
    quasi-periodicity ``j(q^{nM} x) = (-1)^n q^{-M C(n,2)} x^{-n} j(x)``.
    """
    return _j_theta_cached(_as_monomial(x), fraction(modulus), fraction(order))


@lru_cache(maxsize=8192)
def _j_theta_cached(x: ParamMonomial, m: Fraction, order: Fraction) -> QSeries:
    if m <= 0:
        raise ValueError("the modulus of a theta function must be positive")
    if 0 <= x.q_exp <= m:
        base = ParamMonomial(1, m)
        out = poch_infinite(base, m, order) * poch_infinite(x, m, order)
        out = out.truncate(order) * poch_infinite(base / x, m, order)
        return out.truncate(order)
    _n, x0, pref = theta_reduce(x, m)
    inner = _j_theta_cached(x0, m, order - pref.q_exp)
    return inner.times_monomial(pref).truncate(order)


def J(a, m, order=50) -> QSeries:
    """``J_{a,m} = j(q^a, q^m)``."""
    return j_theta(ParamMonomial(1, fraction(a)), m, order)


def Jbar(a, m, order=50) -> QSeries:
    """``Jbar_{a,m} = j(-q^a, q^m)``; ``Jbar_{0,m}`` has constant term 2."""
    return j_theta(ParamMonomial(-1, fraction(a)), m, order)


def Jm(m, order=50) -> QSeries:
    """``J_m = J_{m,3m} = (q^m; q^m)_inf``."""
    m = fraction(m)
    return J(m, 3 * m, order)
