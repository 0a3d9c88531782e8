"""Bailey pairs, the Bailey lemma (chain step), its n -> infinity limit and two
partial-theta lemmas with a built-in quadratic form.

A pair lives at a base ``q^M`` (``base``); every ``q`` in its relation is read
as ``q^M``.  Sequence closures take ``(n, order)`` and return a series exact
below ``order``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Union

from .errors import DivergentSum, UnknownPair
from .orders import product_to, quotient_to
from .products import poch_finite, poch_infinite
from .qcore import Accumulator, Mismatch, ParamMonomial, QSeries, fraction
from .sums import poch_val, unilateral_sum

__all__ = [
    "INFINITY", "BaileyPair", "PairReport", "verify_pair", "chain_step",
    "limit_identity", "partial_theta_fine", "partial_theta_basic",
    "builtin_pair", "PAIR_NAMES",
]


class _Infinity:
    """Marker for a Bailey-lemma parameter sent to infinity."""

    def __repr__(self):
        return "INFINITY"


INFINITY = _Infinity()
Rho = Union[ParamMonomial, _Infinity]

SeqFn = Callable[[int, Fraction], QSeries]


@dataclass(frozen=True)
class BaileyPair:
    rel_param: ParamMonomial
    alpha: SeqFn
    beta: SeqFn
    name: str = "pair"
    base: Fraction = Fraction(1)

    @property
    def aq(self) -> ParamMonomial:
        return self.rel_param.shift(self.base)


@dataclass(frozen=True)
class PairReport:
    ok: bool
    n_checked: int
    failed_n: Optional[int] = None
    mismatch: Optional[Mismatch] = None


def _mono(a) -> ParamMonomial:
    if isinstance(a, (ParamMonomial, _Infinity)):
        return a
    if isinstance(a, QSeries):
        return a.to_monomial()
    return ParamMonomial(a)


def _const(s: QSeries):
    return lambda w: s


def pair_relation_sum(pair: BaileyPair, n: int, order) -> QSeries:
    """``sum_{k<=n} alpha_k / ((q)_{n-k} (aq)_{n+k})``."""
    M = pair.base
    qM = ParamMonomial(1, M)
    out = QSeries.zero(order)
    for k in range(n + 1):
        out = out + quotient_to(
            order,
            lambda w, k=k: pair.alpha(k, w),
            lambda w, k=k: poch_finite(qM, M, n - k, w) * poch_finite(pair.aq, M, n + k, w),
        )
    return out.truncate(order)


def verify_pair(pair: BaileyPair, n_max: int, order=40) -> PairReport:
    """Check the pair relation for ``n = 0..n_max`` below ``order``."""
    order = fraction(order)
    for n in range(n_max + 1):
        lhs = pair.beta(n, order).truncate(order)
        rhs = pair_relation_sum(pair, n, order)
        ok, mismatch = lhs.eq_up_to(rhs, order)
        if not ok:
            return PairReport(False, n + 1, n, mismatch)
    return PairReport(True, n_max + 1)


class _LemmaWeights:
    """The rho-dependent factors of the Bailey lemma, with the rho -> inf limits."""

    def __init__(self, pair: BaileyPair, rho1: Rho, rho2: Rho):
        self.M = pair.base
        self.a = pair.rel_param
        self.aq = pair.aq
        self.rho1, self.rho2 = _mono(rho1), _mono(rho2)
        self.finite = [r for r in (self.rho1, self.rho2) if r is not INFINITY]

    def weight(self, k: int, order) -> QSeries:
        """``(rho1)_k (rho2)_k (aq/rho1 rho2)^k`` with ``(rho)_k (X/rho)^k -> (-1)^k q^{M C(k,2)} X^k``."""
        M = self.M
        if len(self.finite) == 2:
            r1, r2 = self.finite
            mono = (self.aq / (r1 * r2)) ** k
            return (poch_finite(r1, M, k, order) * poch_finite(r2, M, k, order)).times_monomial(mono)
        if len(self.finite) == 1:
            r1, = self.finite
            mono = ParamMonomial((-1) ** (k % 2), M * Fraction(k * (k - 1), 2)) * (self.aq / r1) ** k
            return poch_finite(r1, M, k, order).times_monomial(mono).truncate(order)
        mono = self.a ** k * ParamMonomial(1, M * k * k)
        return QSeries.from_monomial(mono)

    def weight_bound(self, k: int) -> Fraction:
        if len(self.finite) == 2:
            r1, r2 = self.finite
            return k * (self.aq / (r1 * r2)).q_exp + poch_val(r1, self.M, k) + poch_val(r2, self.M, k)
        if len(self.finite) == 1:
            r1, = self.finite
            return (self.M * Fraction(k * (k - 1), 2) + k * (self.aq / r1).q_exp
                    + poch_val(r1, self.M, k))
        return k * self.a.q_exp + self.M * k * k

    def denominator(self, n: int, order) -> QSeries:
        """``(aq/rho1)_n (aq/rho2)_n`` over the finite rhos."""
        out = QSeries.one()
        for r in self.finite:
            out = out * poch_finite(self.aq / r, self.M, n, order)
        return out.truncate(order)

    def middle(self, m: int, order) -> QSeries:
        """``(aq/rho1 rho2)_m``; 1 if either rho is infinite."""
        if len(self.finite) < 2:
            return QSeries.one()
        r1, r2 = self.finite
        return poch_finite(self.aq / (r1 * r2), self.M, m, order)

    def prefactor(self, order) -> QSeries:
        """``(aq/rho1)_inf (aq/rho2)_inf / ((aq)_inf (aq/rho1 rho2)_inf)``."""
        M = self.M
        nums = [self.aq / r for r in self.finite]
        dens = [self.aq] + ([self.aq / (self.finite[0] * self.finite[1])] if len(self.finite) == 2 else [])
        return quotient_to(
            order,
            lambda w: product_to(w, *[(lambda v, u=u: poch_infinite(u, M, v)) for u in nums]),
            lambda w: product_to(w, *[(lambda v, u=u: poch_infinite(u, M, v)) for u in dens]),
        )

    def check_convergent(self):
        if len(self.finite) == 2:
            r1, r2 = self.finite
            if (self.aq / (r1 * r2)).q_exp <= 0:
                raise DivergentSum("the weight (aq/rho1 rho2)^n does not raise the q-valuation")


def chain_step(pair: BaileyPair, rho1: Rho, rho2: Rho) -> BaileyPair:
    """One step along the Bailey chain."""
    W = _LemmaWeights(pair, rho1, rho2)
    M = pair.base
    qM = ParamMonomial(1, M)

    def alpha(n, order):
        return quotient_to(
            order,
            lambda w: product_to(w, lambda v: W.weight(n, v), lambda v: pair.alpha(n, v)),
            lambda w: W.denominator(n, w),
        )

    def beta(n, order):
        def num(w):
            out = QSeries.zero(w)
            for k in range(n + 1):
                out = out + quotient_to(
                    w,
                    lambda v, k=k: product_to(v, lambda u: W.weight(k, u),
                                              lambda u: W.middle(n - k, u),
                                              lambda u: pair.beta(k, u)),
                    lambda v, k=k: poch_finite(qM, M, n - k, v),
                )
            return out.truncate(w)
        return quotient_to(order, num, lambda w: W.denominator(n, w))

    label = f"{pair.name}'({_rho_str(rho1)},{_rho_str(rho2)})"
    return BaileyPair(pair.rel_param, alpha, beta, label, M)


def _rho_str(r):
    return "inf" if r is INFINITY else str(r)


def _seq_val(seq: SeqFn, n, order) -> Fraction:
    v = seq(n, order).val()
    return Fraction(0) if v == float("inf") else min(Fraction(0), v)


def limit_identity(pair: BaileyPair, rho1: Rho, rho2: Rho, order=50):
    """Both sides of the limiting Bailey identity (pair relation with n -> inf).

    Returns ``(lhs, rhs)`` with
    ``lhs = sum_n (rho1)_n (rho2)_n (aq/rho1 rho2)^n beta_n`` and
    ``rhs = prefactor · sum_n (rho1)_n (rho2)_n (aq/rho1 rho2)^n alpha_n / ((aq/rho1)_n (aq/rho2)_n)``.
    """
    order = fraction(order)
    W = _LemmaWeights(pair, rho1, rho2)
    W.check_convergent()

    def lhs_term(n, w):
        return product_to(w, lambda v: W.weight(n, v), lambda v: pair.beta(n, v))

    def rhs_term(n, w):
        return quotient_to(
            w,
            lambda v: product_to(v, lambda u: W.weight(n, u), lambda u: pair.alpha(n, u)),
            lambda v: W.denominator(n, v),
        )

    lhs = unilateral_sum(lhs_term, lambda n: W.weight_bound(n) + _seq_val(pair.beta, n, order), order)
    rhs = product_to(
        order,
        lambda w: W.prefactor(w),
        lambda w: unilateral_sum(rhs_term, lambda n: W.weight_bound(n) + _seq_val(pair.alpha, n, w), w),
    )
    return lhs, rhs


def _double_alpha_sum(pair: BaileyPair, quad: Fraction, order) -> QSeries:
    """``sum_{r,n>=0} (-a)^n q^{M(quad·n(n+1) + (2n+1) r)} alpha_r``."""
    M = pair.base
    a = pair.rel_param

    def inner(r, w):
        al = pair.alpha(r, w)
        if al.is_zero():
            return QSeries.zero(w)
        v = al.val()
        acc = Accumulator()
        n = 0
        while True:
            mono = (-a) ** n * ParamMonomial(1, M * (quad * n * (n + 1) + (2 * n + 1) * r))
            if mono.q_exp + v >= w and n > 0:
                break
            acc.add_monomial(mono)
            n += 1
        return acc.to_series(w - v) * al

    def bound(r):
        return M * r + _seq_val(pair.alpha, r, order)

    return unilateral_sum(inner, bound, order)


def partial_theta_fine(pair: BaileyPair, order=50):
    """``sum_n (aq)_{2n} q^n beta_n`` and ``(q)_inf^{-1} sum_{r,n} (-a)^n q^{3n(n+1)/2+(2n+1)r} alpha_r``."""
    order = fraction(order)
    M = pair.base
    qM = ParamMonomial(1, M)

    def lhs_term(n, w):
        return product_to(w, lambda v: poch_finite(pair.aq, M, 2 * n, v),
                          lambda v: QSeries.from_monomial(ParamMonomial(1, M * n)),
                          lambda v: pair.beta(n, v))

    lhs = unilateral_sum(lhs_term, lambda n: M * n + _seq_val(pair.beta, n, order), order)
    rhs = quotient_to(order,
                      lambda w: _double_alpha_sum(pair, Fraction(3, 2), w),
                      lambda w: poch_infinite(qM, M, w))
    return lhs, rhs


def partial_theta_basic(pair: BaileyPair, order=50):
    """``sum_n q^n beta_n`` and ``((q)_inf (aq)_inf)^{-1} sum_{r,n} (-a)^n q^{n(n+1)/2+(2n+1)r} alpha_r``."""
    order = fraction(order)
    M = pair.base
    qM = ParamMonomial(1, M)

    def lhs_term(n, w):
        return product_to(w, lambda v: QSeries.from_monomial(ParamMonomial(1, M * n)),
                          lambda v: pair.beta(n, v))

    lhs = unilateral_sum(lhs_term, lambda n: M * n + _seq_val(pair.beta, n, order), order)
    rhs = quotient_to(order,
                      lambda w: _double_alpha_sum(pair, Fraction(1, 2), w),
                      lambda w: poch_infinite(qM, M, w) * poch_infinite(pair.aq, M, w))
    return lhs, rhs


# -- the built-in pairs ---------------------------------------------------------

def _sign(n):
    return (-1) ** (n % 2)


def _fifth_order(M):
    M = fraction(M)
    qM = ParamMonomial(1, M)

    def alpha(n, order):
        acc = Accumulator()
        for j in range(-n, n + 1):
            for i in range(2 * n + 1):  # (1 - q^{2n+1})/(1 - q)
                acc.add(M * (Fraction(n * (3 * n + 1), 2) - j * j + i), (), _sign(j))
        return acc.to_series().truncate(order)

    def beta(n, order):
        return poch_finite(-qM, M, n, order).invert(order)

    return BaileyPair(qM, alpha, beta, "fifth_order", M)


def _early_conditions(M):
    M = fraction(M)
    qM = ParamMonomial(1, M)

    def alpha(n, order):
        acc = Accumulator()
        for j in range(-(n // 2), n // 2 + 1):
            for i in range(2 * n + 1):
                acc.add(M * (n * n - j * (3 * j + 1) + i), (), _sign(j))
        return acc.to_series().truncate(order)

    def beta(n, order):
        return quotient_to(
            order,
            lambda w: QSeries.from_monomial(ParamMonomial(1, M * Fraction(n * (n - 1), 2))),
            lambda w: poch_finite(qM, M, n, w) * poch_finite(qM, 2 * M, n, w),
        )

    return BaileyPair(qM, alpha, beta, "early_conditions", M)


def _unit_z(M, symbol="z"):
    M = fraction(M)
    qM = ParamMonomial(1, M)
    z = ParamMonomial(1, 0, ((symbol, 1),))

    def alpha(n, order):
        if n == 0:
            return QSeries.one()
        acc = Accumulator()
        acc.add_monomial(z ** n * ParamMonomial(_sign(n), M * Fraction(n * (n - 1), 2)))
        acc.add_monomial(z ** (-n) * ParamMonomial(_sign(n), M * Fraction(n * (n + 1), 2)))
        return acc.to_series()

    def beta(n, order):
        return quotient_to(
            order,
            lambda w: poch_finite(z, M, n, w) * poch_finite(qM / z, M, n, w),
            lambda w: poch_finite(qM, M, 2 * n, w),
        )

    return BaileyPair(ParamMonomial(1), alpha, beta, "unit_z", M)


def _slater_l6(M):
    M = fraction(M)
    qM = ParamMonomial(1, M)

    def alpha(n, order):
        if n == 0:
            return QSeries.one()
        if n % 2:
            return QSeries.zero()
        r = n // 2
        acc = Accumulator()
        acc.add(M * (3 * r * r - r), (), _sign(r))
        acc.add(M * (3 * r * r + r), (), _sign(r))
        return acc.to_series()

    def beta(n, order):
        return inverse_product(order, [(qM, 2 * M, n), (qM, M, n)])

    return BaileyPair(ParamMonomial(1), alpha, beta, "slater_L6", M)


def inverse_product(order, factors):
    """``1 / prod (a; q^m)_n`` for ``(a, m, n)`` in ``factors``."""
    return quotient_to(
        order,
        lambda w: QSeries.one(),
        lambda w: product_to(w, *[(lambda v, f=f: poch_finite(f[0], f[1], f[2], v)) for f in factors]),
    )


_BUILDERS = {
    "fifth_order": _fifth_order,
    "early_conditions": _early_conditions,
    "unit_z": _unit_z,
    "slater_L6": _slater_l6,
}
PAIR_NAMES = tuple(_BUILDERS)


def builtin_pair(name: str, base=1) -> BaileyPair:
    """One of ``fifth_order``, ``early_conditions``, ``unit_z``, ``slater_L6`` at base ``q^base``."""
    try:
        builder = _BUILDERS[name]
    except KeyError:
        raise UnknownPair(f"unknown Bailey pair {name!r}; known: {', '.join(PAIR_NAMES)}") from None
    return builder(base)
