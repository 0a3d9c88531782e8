"""Summation loops with valuation-based termination.

Every loop walks an index, asks for a lower bound on the q-valuation of the
next term, and stops once that bound has passed the target order and is still
rising.  For the convex bounds of quadratic-exponent sums this is final.  A
bound that neither rises nor curves upward for ``STALL_WINDOW`` consecutive
steps means the sum does not converge q-adically and raises
:class:`DivergentSum`.
"""
from __future__ import annotations

from fractions import Fraction

from .errors import DivergentSum, FormalPole, NonGenericParameters
from .qcore import Accumulator, ParamMonomial, QSeries, fraction

STALL_WINDOW = 16
_MAX_STEPS = 100_000


class _Walker:
    __slots__ = ("order", "prev", "prev2", "stall")

    def __init__(self, order):
        self.order = order
        self.prev = self.prev2 = None
        self.stall = 0

    def step(self, b):
        """Return (use_term, finished) for a term with valuation bound ``b``."""
        prev, prev2 = self.prev, self.prev2
        if b >= self.order and prev is not None and b > prev:
            return False, True
        if prev is not None and b <= prev and prev2 is not None and b - prev <= prev - prev2:
            self.stall += 1
            if self.stall >= STALL_WINDOW:
                raise DivergentSum(f"valuation bound stalled at {b} below order {self.order}")
        else:
            self.stall = 0
        self.prev2, self.prev = prev, b
        return b < self.order, False


def bilateral_indices(valuation_bound, order, start=0):
    """Yield the integers whose terms may contribute below ``order``."""
    for step in (1, -1):
        n = start if step == 1 else start - 1
        walker = _Walker(order)
        for _ in range(_MAX_STEPS):
            use, done = walker.step(valuation_bound(n))
            if done:
                break
            if use:
                yield n
            n += step
        else:
            raise DivergentSum("bilateral sum did not terminate")


def unilateral_indices(valuation_bound, order, start=0):
    walker = _Walker(order)
    n = start
    for _ in range(_MAX_STEPS):
        use, done = walker.step(valuation_bound(n))
        if done:
            return
        if use:
            yield n
        n += 1
    raise DivergentSum("series did not terminate")


def unilateral_sum(term, valuation_bound, order, start=0) -> QSeries:
    """``sum_{n >= start} term(n, order)``."""
    order = fraction(order)
    out = QSeries.zero(order)
    for n in unilateral_indices(valuation_bound, order, start):
        out = out + term(n, order)
    return out.truncate(order)


def ratio_sum(ratio, valuation_bound, order, first=None, start=0) -> QSeries:
    """``sum_n t_n`` where ``t_n = t_{n-1} · ratio(n)``.

    ``first(order)`` gives the starting term (default 1).
    ``ratio(n)`` returns ``(monomial, numerator_factors, denominator_factors)``
    and the step multiplies by ``monomial · prod(1 - a) / prod(1 - b)``.
    """
    order = fraction(order)
    work = order
    for _attempt in range(8):
        term = (first(work) if first is not None else QSeries.one()).truncate(work)
        total = QSeries.zero(work)
        n = start
        walker = _Walker(order)
        for _ in range(_MAX_STEPS):
            use, done = walker.step(valuation_bound(n))
            if done:
                break
            if use:
                total = total + term
            n += 1
            mono, nums, dens = ratio(n)
            term = term.times_monomial(mono)
            for a in nums:
                term = term.times_one_minus(a)
            for b in dens:
                term = term.over_one_minus(b)
            term = term.truncate(work)
        else:
            raise DivergentSum("series did not terminate")
        if total.trunc >= order:
            return total.truncate(order)
        work += order - total.trunc
    raise ArithmeticError(f"could not reach order {order}")


def poch_val(a: ParamMonomial, modulus, n: int) -> Fraction:
    """Exact q-valuation lower bound of ``(a; q^M)_n``."""
    m = fraction(modulus)
    return sum((min(Fraction(0), a.q_exp + j * m) for j in range(n)), Fraction(0))


def expand_geometric(acc: Accumulator, pref: ParamMonomial, mu: ParamMonomial, order) -> None:
    """Add ``pref / (1 - mu)`` to ``acc`` below ``order``.

    A denominator of negative valuation is rewritten as
    ``1/(1-mu) = -mu^{-1} / (1 - mu^{-1})`` before expanding.
    """
    e = mu.q_exp
    if e == 0:
        if mu.syms:
            raise FormalPole(f"1 - ({mu}) has a formal symbol at q-valuation 0")
        if mu.scalar == 1:
            raise NonGenericParameters(f"vanishing denominator 1 - ({mu})")
        acc.add_monomial(pref, 1 / (1 - mu.scalar))
        return
    if e < 0:
        mu = mu.inverse()
        pref = -(pref * mu)
    term = pref
    while term.q_exp < order:
        acc.add_monomial(term)
        term = term * mu


def denominator_bound(mu: ParamMonomial) -> Fraction:
    """Valuation of ``1/(1 - mu)`` after normalization."""
    return max(Fraction(0), -mu.q_exp)
