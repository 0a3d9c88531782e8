"""Composition helpers that keep products and quotients exact to a target order.

A *series function* is a callable ``fn(order) -> QSeries`` that returns a
series exact at least below ``order``.  Multiplying by a factor of negative
valuation, or dividing by one of positive valuation, loses precision; these
helpers recompute the operands at the higher order that compensates.
"""
from __future__ import annotations

from .errors import NotInvertible
from .qcore import INF, QSeries, fraction

_MAX_ROUNDS = 8


def constant_fn(series: QSeries):
    return lambda order: series


def _eff_val(s: QSeries):
    v = s.val()
    return s.trunc if v == INF else v


def product_to(order, *fns) -> QSeries:
    """Product of the series functions, exact below ``order``."""
    order = fraction(order)
    if not fns:
        return QSeries.one(order)
    series = [fn(order) for fn in fns]
    for _ in range(_MAX_ROUNDS):
        vals = [_eff_val(s) for s in series]
        total = sum(v for v in vals if v != INF)
        changed = False
        for i, fn in enumerate(fns):
            others = total - (vals[i] if vals[i] != INF else 0)
            need = order - others
            if series[i].trunc < need:
                series[i] = fn(need)
                changed = True
        if not changed:
            break
    out = series[0]
    for s in series[1:]:
        out = out * s
    if out.trunc < order:
        raise ArithmeticError(f"could not reach order {order} (got {out.trunc})")
    return out.truncate(order)


def inverse_to(order, fn) -> QSeries:
    """``1/fn`` exact below ``order``."""
    order = fraction(order)
    den = fn(order)
    if den.is_zero():
        raise NotInvertible("denominator vanishes to the working order")
    v = den.val()
    need = order + 2 * v
    if den.trunc < need:
        den = fn(need)
    return den.invert(order).truncate(order)


def quotient_to(order, num_fn, den_fn) -> QSeries:
    """``num/den`` exact below ``order``."""
    order = fraction(order)
    den = den_fn(order)
    if den.is_zero():
        raise NotInvertible("denominator vanishes to the working order")
    v = den.val()
    num = num_fn(order + v)
    if num.is_zero():
        return QSeries.zero(order)
    u = num.val()
    need = order + 2 * v - u
    if den.trunc < need:
        den = den_fn(need)
    inv = den.invert()
    out = num * inv
    if out.trunc < order:
        raise ArithmeticError(f"could not reach order {order} (got {out.trunc})")
    return out.truncate(order)
