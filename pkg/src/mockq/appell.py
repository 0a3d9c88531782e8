"""Bilateral Appell-type sums: the unnormalized level-l Appell function,
the Appell-Lerch sum ``m(x, q, z)`` and the correction term ``Delta``.
"""
from __future__ import annotations

from fractions import Fraction

from .errors import FormalPole, NonGenericParameters
from .orders import product_to, quotient_to
from .products import j_theta, j_vanishes, poch_infinite
from .qcore import Accumulator, ParamMonomial, QSeries, fraction
from .sums import bilateral_indices, denominator_bound, expand_geometric

__all__ = ["appell_unnormalized", "m_sum", "delta_correction"]

def appell_unnormalized(level: int, a, b, order=50) -> QSeries:
    """``sum_n (-1)^{ln} q^{l n(n+1)/2} b^n / (1 - a q^n)``.

    This is the level-l Appell function without its ``a^{l/2}`` prefactor.
    """
    level = int(level)
    if level < 1:
        raise ValueError("the level must be a positive integer")
    a, b = _mono(a), _mono(b)
    if a.syms:
        raise FormalPole("the pole parameter a of an Appell sum must not carry formal symbols")
    order = fraction(order)

    def pref(n):
        return ParamMonomial((-1) ** ((level * n) % 2), Fraction(level * n * (n + 1), 2)) * b ** n

    def bound(n):
        return pref(n).q_exp + denominator_bound(a.shift(n))

    acc = Accumulator()
    for n in bilateral_indices(bound, order):
        expand_geometric(acc, pref(n), a.shift(n), order)
    return acc.to_series(order)


def _lerch_numerator(x, m, z, order) -> QSeries:
    """``sum_r (-1)^r q^{M C(r,2)} z^r / (1 - q^{M(r-1)} x z)``."""
    xz = x * z

    def pref(r):
        return ParamMonomial((-1) ** (r % 2), m * Fraction(r * (r - 1), 2)) * z ** r

    def bound(r):
        return pref(r).q_exp + denominator_bound(xz.shift(m * (r - 1)))

    acc = Accumulator()
    for r in bilateral_indices(bound, order):
        expand_geometric(acc, pref(r), xz.shift(m * (r - 1)), order)
    return acc.to_series(order)


def m_sum(x, modulus, z, order=50) -> QSeries:
    """The Appell-Lerch sum ``m(x, q^M, z)``."""
    x, z = _mono(x), _mono(z)
    m = fraction(modulus)
    order = fraction(order)
    if j_vanishes(z, m):
        raise NonGenericParameters(f"j(z, q^{m}) vanishes for z = {z}")
    return quotient_to(order,
                       lambda w: _lerch_numerator(x, m, z, w),
                       lambda w: j_theta(z, m, w))


def delta_correction(x, modulus, z1, z0, order=50) -> QSeries:
    """``Delta(x, q^M, z1, z0)``, the difference ``m(x, q^M, z1) - m(x, q^M, z0)``."""
    x, z1, z0 = _mono(x), _mono(z1), _mono(z0)
    m = fraction(modulus)
    order = fraction(order)
    if z1 == z0:
        return QSeries.zero(order)
    dens = [z0, z1, x * z0, x * z1]
    for d in dens:
        if j_vanishes(d, m):
            raise NonGenericParameters(f"j({d}, q^{m}) vanishes in Delta")
    qm = ParamMonomial(1, m)

    def num(w):
        return product_to(
            w,
            lambda v: QSeries.from_monomial(z0),
            lambda v: poch_infinite(qm, m, v) ** 3,
            lambda v: j_theta(z1 / z0, m, v),
            lambda v: j_theta(x * z0 * z1, m, v),
        )

    def den(w):
        return product_to(w, *[(lambda v, d=d: j_theta(d, m, v)) for d in dens])

    return quotient_to(order, num, den)


def _mono(a) -> ParamMonomial:
    if isinstance(a, ParamMonomial):
        return a
    if isinstance(a, QSeries):
        return a.to_monomial()
    return ParamMonomial(a)
