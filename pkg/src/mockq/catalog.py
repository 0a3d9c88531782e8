"""Named q-series, each evaluated from its defining sum.

Closed forms never appear here; they belong to the identity suite, so that
every identity check compares two independent computations.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .bailey import INFINITY
from .errors import UnknownEntry
from .orders import product_to, quotient_to
from .products import poch_finite, poch_infinite
from .qcore import Accumulator, ParamMonomial, QSeries, fraction, mono_mul
from .sums import bilateral_indices, poch_val, ratio_sum, unilateral_indices, unilateral_sum

__all__ = ["CatalogEntry", "eval_named", "list_entries", "get_entry", "INFINITY"]


def _q(e=1, c=1) -> ParamMonomial:
    return ParamMonomial(c, e)


def _sign(n):
    return (-1) ** (n % 2)


# -- hypergeometric term sequences ------------------------------------------------

@dataclass(frozen=True)
class _Poch:
    """``(a; q^m)_{mult·n + off}``."""
    a: ParamMonomial
    m: Fraction = Fraction(1)
    mult: int = 1
    off: int = 0

    def length(self, n):
        return self.mult * n + self.off


class _Hyper:
    """``sum_{n >= start} mono(n) · prod nums / prod dens`` over finite Pochhammers.

    Denominators never lower the valuation, so ``qExp(mono(n))`` plus the
    numerator valuations is a lower bound for the n-th term.
    """

    def __init__(self, mono, nums=(), dens=(), start=0):
        self.mono = mono
        self.nums = [p if isinstance(p, _Poch) else _Poch(*p) for p in nums]
        self.dens = [p if isinstance(p, _Poch) else _Poch(*p) for p in dens]
        self.start = start

    def bound(self, n):
        return self.mono(n).q_exp + sum((poch_val(p.a, p.m, p.length(n)) for p in self.nums), Fraction(0))

    def term(self, n, order):
        return quotient_to(
            order,
            lambda w: product_to(
                w, lambda v: QSeries.from_monomial(self.mono(n)),
                *[(lambda v, p=p: poch_finite(p.a, p.m, p.length(n), v)) for p in self.nums]),
            lambda w: product_to(
                w, *[(lambda v, p=p: poch_finite(p.a, p.m, p.length(n), v)) for p in self.dens]),
        )

    def ratio(self, n):
        def factors(pochs):
            return [p.a.shift(p.m * j) for p in pochs for j in range(p.length(n - 1), p.length(n))]
        return self.mono(n) / self.mono(n - 1), factors(self.nums), factors(self.dens)

    def direct(self, order):
        return unilateral_sum(self.term, self.bound, order, self.start)

    def stepwise(self, order):
        return ratio_sum(self.ratio, self.bound, order,
                         first=lambda w: self.term(self.start, w), start=self.start)


# -- registry -------------------------------------------------------------------------

@dataclass(frozen=True)
class CatalogEntry:
    name: str
    params: tuple  # kinds: "int", "mono", "mono_or_inf"
    evaluator: Callable
    definition: str

    def __call__(self, *args, order=50):
        return eval_named(self.name, list(args), order)


_REGISTRY: dict = {}


def _entry(name, params, definition):
    def deco(fn):
        _REGISTRY[name] = CatalogEntry(name, tuple(params), fn, definition)
        return fn
    return deco


def list_entries() -> list:
    return [_REGISTRY[k] for k in sorted(_REGISTRY)]


def get_entry(name) -> CatalogEntry:
    try:
        return _REGISTRY[name]
    except KeyError:
        raise UnknownEntry(f"no catalog entry named {name!r}") from None


def _coerce_param(kind, value, name):
    if kind == "int":
        if isinstance(value, QSeries):
            value = value.to_monomial()
        if isinstance(value, ParamMonomial):
            if not value.is_scalar or Fraction(value.scalar).denominator != 1:
                raise TypeError(f"{name} expects an integer, got {value}")
            value = int(value.scalar)
        if not isinstance(value, int) or value < 1:
            raise TypeError(f"{name} expects a positive integer, got {value!r}")
        return value
    if value is INFINITY:
        if kind != "mono_or_inf":
            raise TypeError(f"{name} does not accept inf here")
        return value
    if isinstance(value, QSeries):
        return value.to_monomial()
    if isinstance(value, ParamMonomial):
        return value
    return ParamMonomial(value)


def eval_named(name: str, params=(), order=50) -> QSeries:
    """Evaluate the catalog entry ``name`` at ``params`` below ``order``."""
    entry = get_entry(name)
    params = list(params)
    if len(params) != len(entry.params):
        raise TypeError(f"{name} takes {len(entry.params)} argument(s), got {len(params)}")
    args = [_coerce_param(k, v, name) for k, v in zip(entry.params, params)]
    order = fraction(order)
    if order <= 0:
        raise ValueError("the order must be positive")
    return entry.evaluator(*args, order=order)


# -- tenth, third, fifth and second order functions -----------------------------------

_MQ = _q(1, -1)   # -q
_ONE = ParamMonomial(1)


@_entry("chi10", (), "sum_{n>=0} (-1)^n q^{(n+1)^2} / (-q)_{2n+1}")
def _chi10(order):
    return _Hyper(lambda n: _q((n + 1) ** 2, _sign(n)), dens=[(_MQ, 1, 2, 1)]).direct(order)


@_entry("X10", (), "sum_{n>=0} (-1)^n q^{n^2} / (-q)_{2n}")
def _x10(order):
    return _Hyper(lambda n: _q(n * n, _sign(n)), dens=[(_MQ, 1, 2, 0)]).direct(order)


@_entry("phi10", (), "sum_{n>=0} q^{n(n+1)/2} / (q;q^2)_{n+1}")
def _phi10(order):
    return _Hyper(lambda n: _q(n * (n + 1) // 2), dens=[(_q(), 2, 1, 1)]).direct(order)


@_entry("f3", (), "sum_{n>=0} q^{n^2} / (-q)_n^2")
def _f3(order):
    return _Hyper(lambda n: _q(n * n), dens=[(_MQ,), (_MQ,)]).direct(order)


@_entry("chi3", (), "sum_{n>=0} q^{n^2} (-q)_n / (-q^3;q^3)_n")
def _chi3(order):
    return _Hyper(lambda n: _q(n * n), nums=[(_MQ,)], dens=[(_q(3, -1), 3)]).direct(order)


@_entry("mu2", (), "sum_{n>=0} (q;q^2)_n (-1)^n q^{n^2} / (-q^2;q^2)_n^2")
def _mu2(order):
    mq2 = _q(2, -1)
    return _Hyper(lambda n: _q(n * n, _sign(n)), nums=[(_q(), 2)], dens=[(mq2, 2), (mq2, 2)]).direct(order)


@_entry("f1", (), "sum_{n>=0} q^{n^2+n} / (-q)_n")
def _f1(order):
    return _Hyper(lambda n: _q(n * n + n), dens=[(_MQ,)]).direct(order)


# -- nested multisums -----------------------------------------------------------------

def _outer_cutoff(order):
    return math.isqrt(math.ceil(order)) + 3


def _inverse_q(order, count):
    """``[1/(q)_j for j < count]`` exact below ``order``."""
    out = [QSeries.one(order)]
    for j in range(1, count):
        out.append(out[-1].over_one_minus(_q(j)).truncate(order))
    return out


def _shifted(order, e, fn):
    """``q^e · fn(order - e)``, or zero when ``e >= order``."""
    if e >= order:
        return QSeries.zero(order)
    return fn(order - e).times_monomial(_q(e)).truncate(order)


def _nest(order, inner, weight, invq):
    """``out[n] = q^{weight(n)} sum_{m<=n} inner[m] / (q)_{n-m}``."""
    out = []
    for n in range(len(inner)):
        def body(w, n=n):
            acc = QSeries.zero(w)
            for m in range(n + 1):
                if not inner[m].is_zero():
                    acc = acc + inner[m].truncate(w) * invq[n - m].truncate(w)
            return acc.truncate(w)
        out.append(_shifted(order, weight(n), body))
    return out


@_entry("B", ("int",), "sum_{n_k>=...>=n_1>=0} q^{n_k^2+...+n_1^2} / "
                       "((q)_{n_k-n_{k-1}} ... (q)_{n_2-n_1} (-q)_{n_1}^2)")
def _b_multisum(k, order):
    size = _outer_cutoff(order)
    invq = _inverse_q(order, size)
    level = [_shifted(order, n * n, lambda w, n=n: poch_finite(_MQ, 1, n, w).invert(w) ** 2)
             for n in range(size)]
    for _ in range(k - 1):
        level = _nest(order, level, lambda n: n * n, invq)
    total = QSeries.zero(order)
    for s in level:
        total = total + s
    return total.truncate(order)


@_entry("M", ("int",), "sum_{n_k>=...>=n_1>=0} (-q)_{n_k} q^{C(n_k+1,2)+n_{k-1}^2+n_{k-1}+...+n_1^2+n_1} / "
                       "((q)_{n_k-n_{k-1}} ... (q)_{n_2-n_1} (q^{n_1+1})_{n_1+1})")
def _m_multisum(k, order):
    size = 2 * _outer_cutoff(order)
    invq = _inverse_q(order, size)

    def base(n, e):
        return _shifted(order, e, lambda w: poch_finite(_q(n + 1), 1, n + 1, w).invert(w))

    if k == 1:
        level = [base(n, n * (n + 1) // 2) for n in range(size)]
    else:
        level = [base(n, n * n + n) for n in range(size)]
        for _ in range(k - 2):
            level = _nest(order, level, lambda n: n * n + n, invq)
        level = _nest(order, level, lambda n: n * (n + 1) // 2, invq)
    total = QSeries.zero(order)
    for n, s in enumerate(level):
        if not s.is_zero():
            total = total + s * poch_finite(_MQ, 1, n, order)
    return total.truncate(order)


# -- transformation sums --------------------------------------------------------------

@_entry("T1", (), "sum_{n>=0} (-1)_n^2 q^n / ((q)_n (q;q^2)_n)")
def _t1(order):
    m1 = ParamMonomial(-1)
    return _Hyper(lambda n: _q(n), nums=[(m1,), (m1,)], dens=[(_q(),), (_q(), 2)]).stepwise(order)


@_entry("T2", (), "sum_{n>=0} (-1;q^2)_n (q;q^2)_n q^{n^2+n} / ((q^2;q^2)_n (-q)_{2n})")
def _t2(order):
    return _Hyper(lambda n: _q(n * n + n), nums=[(ParamMonomial(-1), 2), (_q(), 2)],
                  dens=[(_q(2), 2), (_MQ, 1, 2, 0)]).direct(order)


@_entry("S", ("mono",), "sum_{n>=0} (x, 1/x)_n q^n / (q)_n")
def _s(x, order):
    return _Hyper(lambda n: _q(n), nums=[(x,), (x.inverse(),)], dens=[(_q(),)]).stepwise(order)


@_entry("R", ("mono",), "sum_{n>=0} q^{n^2} / (xq, q/x)_n")
def _r(x, order):
    return _Hyper(lambda n: _q(n * n), dens=[(x.shift(1),), (x.inverse().shift(1),)]).direct(order)


@_entry("Sspec", (), "1 + sum_{n>=1} (-q^3;q^3)_{n-1} q^n / ((-q)_{n-1} (q)_n)")
def _sspec(order):
    tail = _Hyper(lambda n: _q(n), nums=[(_q(3, -1), 3, 1, -1)], dens=[(_MQ, 1, 1, -1), (_q(),)], start=1)
    return (QSeries.one() + tail.stepwise(order)).truncate(order)


def _reduce_at_sixth_root(series: QSeries, symbol="x") -> QSeries:
    """Reduce every coefficient modulo ``x^2 - x + 1`` (x a primitive sixth root of unity)."""
    powers = {0: {0: 1}, 1: {1: 1}, 2: {1: 1, 0: -1}, 3: {0: -1}, 4: {1: -1}, 5: {0: 1, 1: -1}}
    acc = Accumulator()
    for e, coeff in series.coefficients():
        for mono, c in coeff.terms.items():
            rest = tuple((s, p) for s, p in mono if s != symbol)
            power = dict(mono).get(symbol, 0) % 6
            for d, sgn in powers[power].items():
                acc.add(e, mono_mul(rest, ((symbol, d),) if d else ()), c * sgn)
    return acc.to_series(series.trunc if not series.is_exact else None)


@_entry("Sroot", (), "S(x) with x = -exp(2 pi i/3), i.e. coefficients reduced modulo x^2 - x + 1")
def _sroot(order):
    x = ParamMonomial(1, 0, (("x", 1),))
    return _reduce_at_sixth_root(_s(x, order)).truncate(order)


@_entry("Gleis", ("mono",), "sum_{n>=0} (y, q/y)_n q^n / (q)_n")
def _gleis(y, order):
    return _Hyper(lambda n: _q(n), nums=[(y,), (y.inverse().shift(1),)], dens=[(_q(),)]).stepwise(order)


@_entry("GleisR", ("mono",), "sum_{n>=0} q^{n^2+n} (y q^{n+1}, q^{n+2}/y)_inf")
def _gleis_r(y, order):
    yi = y.inverse()

    def term(n, w):
        e = n * n + n
        return _shifted(w, e, lambda v: poch_infinite(y.shift(n + 1), 1, v)
                        * poch_infinite(yi.shift(n + 2), 1, v))

    return unilateral_sum(term, lambda n: n * n + n, order)


@_entry("U", ("mono",), "sum_{n>=0} (x, 1/x)_n q^n")
def _u(x, order):
    return _Hyper(lambda n: _q(n), nums=[(x,), (x.inverse(),)]).stepwise(order)


@_entry("U3t", ("mono", "mono"), "sum_{n>=1} (-a)_n (-b)_n q^n")
def _u3t(a, b, order):
    return _Hyper(lambda n: _q(n), nums=[(-a,), (-b,)], start=1).stepwise(order)


@_entry("R3t", ("mono", "mono"), "sum_{n>=0} (ab)^{-n} q^{n^2} / (-q/a, -q/b)_n")
def _r3t(a, b, order):
    ab = (a * b).inverse()
    return _Hyper(lambda n: ab ** n * _q(n * n),
                  dens=[((-a.inverse()).shift(1),), ((-b.inverse()).shift(1),)]).direct(order)


# -- partial theta families -----------------------------------------------------------

@_entry("V", ("mono",), "sum_{n>=0} q^n (z, q/z)_n")
def _v(z, order):
    return _Hyper(lambda n: _q(n), nums=[(z,), (z.inverse().shift(1),)]).stepwise(order)


@_entry("W", ("mono",), "sum_{n>=0} (z, q/z)_n q^n / (q)_{2n}")
def _w(z, order):
    return _Hyper(lambda n: _q(n), nums=[(z,), (z.inverse().shift(1),)],
                  dens=[(_q(), 1, 2, 0)]).stepwise(order)


@_entry("Y", (), "sum_{n>=0} q^n / ((q;q^2)_n (q)_n)")
def _y(order):
    return _Hyper(lambda n: _q(n), dens=[(_q(), 2), (_q(),)]).stepwise(order)


@_entry("hikami", (), "sum_{n>=0} (q;q^2)_n^2 q^{2n}")
def _hikami(order):
    return _Hyper(lambda n: _q(2 * n), nums=[(_q(), 2), (_q(), 2)]).stepwise(order)


# -- Bailey-pair sums -----------------------------------------------------------------

@_entry("J1", (), "(-q;q^2)_inf sum_{n>=0} q^{3n^2+n} / ((q^2;q^2)_n (q^2;q^4)_n)")
def _j1(order):
    s = _Hyper(lambda n: _q(3 * n * n + n), dens=[(_q(2), 2), (_q(2), 4)])
    return product_to(order, lambda w: poch_infinite(_MQ, 2, w), s.direct)


@_entry("J1dbl", (), "sum_{n>=0} sum_{|2j|<=n} (-1)^j q^{4n^2+2n-j(6j+2)} (1 - q^{4n+2})")
def _j1dbl(order):
    acc = Accumulator()
    for n in unilateral_indices(lambda n: Fraction(5 * n * n, 2) + n, order):
        for j in range(-(n // 2), n // 2 + 1):
            e = 4 * n * n + 2 * n - j * (6 * j + 2)
            acc.add(e, (), _sign(j))
            acc.add(e + 4 * n + 2, (), -_sign(j))
    return acc.to_series(order)


@_entry("f1dbl", (), "sum_{n>=0} sum_{|j|<=n} (-1)^j q^{n(5n+3)/2-j^2} (1 - q^{2n+1})")
def _f1dbl(order):
    acc = Accumulator()
    for n in unilateral_indices(lambda n: Fraction(3 * n * (n + 1), 2), order):
        for j in range(-n, n + 1):
            e = n * (5 * n + 3) // 2 - j * j
            acc.add(e, (), _sign(j))
            acc.add(e + 2 * n + 1, (), -_sign(j))
    return acc.to_series(order)


# -- theta-function oracles -----------------------------------------------------------

@_entry("pent", (), "sum_{n in Z} (-1)^n q^{n(3n-1)/2}")
def _pent(order):
    acc = Accumulator()
    for n in bilateral_indices(lambda n: Fraction(n * (3 * n - 1), 2), order):
        acc.add(Fraction(n * (3 * n - 1), 2), (), _sign(n))
    return acc.to_series(order)


@_entry("jtp", ("mono", "int"), "sum_{n in Z} (-1)^n q^{M C(n,2)} x^n")
def _jtp(x, modulus, order):
    def mono(n):
        return ParamMonomial(_sign(n), modulus * Fraction(n * (n - 1), 2)) * x ** n

    acc = Accumulator()
    for n in bilateral_indices(lambda n: mono(n).q_exp, order):
        acc.add_monomial(mono(n))
    return acc.to_series(order)


# -- two-sided transformations with parameters ----------------------------------------

def _lemma_weight(r1, r2, X: ParamMonomial, modulus, n, order) -> QSeries:
    """``(r1, r2; q^M)_n (X / r1 r2)^n`` with ``(r; q^M)_n r^{-n} -> (-1)^n q^{M C(n,2)}`` as r -> inf."""
    finite = [r for r in (r1, r2) if r is not INFINITY]
    mono = X ** n
    for r in finite:
        mono = mono / r ** n
    mono = mono * ParamMonomial(_sign(n) ** (2 - len(finite)),
                                (2 - len(finite)) * modulus * Fraction(n * (n - 1), 2))
    out = QSeries.from_monomial(mono)
    for r in finite:
        out = out * poch_finite(r, modulus, n, order - mono.q_exp)
    return out.truncate(order)


def _lemma_bound(r1, r2, X, modulus, n):
    finite = [r for r in (r1, r2) if r is not INFINITY]
    e = n * X.q_exp - sum((n * r.q_exp for r in finite), Fraction(0))
    e += (2 - len(finite)) * modulus * Fraction(n * (n - 1), 2)
    return e + sum((poch_val(r, modulus, n) for r in finite), Fraction(0))


def _finite_pochs(order, specs):
    """``prod (a; q^m)_len`` over ``(a, m, len)`` with ``a`` not infinite."""
    return product_to(order, *[(lambda v, s=s: poch_finite(s[0], s[1], s[2], v))
                               for s in specs if s[0] is not INFINITY])


def _div(a, b):
    """``a / b`` with ``a / inf = inf`` marking a factor that tends to 1."""
    if a is INFINITY or b is INFINITY:
        return INFINITY
    return a / b


def _pre_ratio(order, nums, dens, modulus=1):
    """``prod (n; q^M)_inf / prod (d; q^M)_inf``; a factor with argument ``a/inf`` is 1."""
    def side(args):
        return lambda w: product_to(w, *[(lambda v, a=a: poch_infinite(a, modulus, v))
                                         for a in args if a is not INFINITY])
    return quotient_to(order, side(nums), side(dens))


def _well_poised(a: ParamMonomial, modulus, n, order) -> QSeries:
    """``(a; q^M)_n (1 - a q^{2Mn}) / (1 - a)``, which is 1 at n = 0."""
    if n == 0:
        return QSeries.one()
    m = fraction(modulus)
    return poch_finite(a.shift(m), m, n - 1, order).times_one_minus(a.shift(2 * m * n)).truncate(order)


@_entry("wwL", ("mono", "mono_or_inf", "mono_or_inf", "mono", "mono"),
        "sum_{n>=0} (aq/bc, d, e)_n (aq/de)^n / (q, aq/b, aq/c)_n")
def _ww_left(a, b, c, d, e, order):
    aq = a.shift(1)
    X = aq / (d * e)
    bc = _div(_div(aq, b), c)

    def term(n, w):
        return quotient_to(
            w,
            lambda v: product_to(v, lambda u: QSeries.from_monomial(X ** n),
                                 lambda u: _finite_pochs(u, [(bc, 1, n), (d, 1, n), (e, 1, n)])),
            lambda v: _finite_pochs(v, [(_q(), 1, n), (_div(aq, b), 1, n), (_div(aq, c), 1, n)]),
        )

    def bound(n):
        return n * X.q_exp + sum((poch_val(u, 1, n) for u in (bc, d, e) if u is not INFINITY), Fraction(0))

    return unilateral_sum(term, bound, order)


@_entry("wwR", ("mono", "mono", "mono", "mono", "mono"),
        "(aq/d, aq/e)_inf / (aq, aq/de)_inf sum_{n>=0} (a)_n (1 - aq^{2n}) (b, c, d, e)_n "
        "(-1)^n q^{C(n,2)} (aq)^{2n} / ((q)_n (1 - a) (aq/b, aq/c, aq/d, aq/e)_n (bcde)^n)")
def _ww_right(a, b, c, d, e, order):
    aq = a.shift(1)
    ratio = aq * aq / (b * c * d * e)

    def mono(n):
        return ParamMonomial(_sign(n), Fraction(n * (n - 1), 2)) * ratio ** n

    def term(n, w):
        return quotient_to(
            w,
            lambda v: product_to(v, lambda u: QSeries.from_monomial(mono(n)),
                                 lambda u: _well_poised(a, 1, n, u),
                                 lambda u: _finite_pochs(u, [(t, 1, n) for t in (b, c, d, e)])),
            lambda v: _finite_pochs(v, [(_q(), 1, n)] + [(aq / t, 1, n) for t in (b, c, d, e)]),
        )

    def bound(n):
        return mono(n).q_exp + min(Fraction(0), a.q_exp) * n + sum(
            (poch_val(t, 1, n) for t in (b, c, d, e)), Fraction(0))

    pre = lambda w: _pre_ratio(w, [aq / d, aq / e], [aq, aq / (d * e)])
    return product_to(order, pre, lambda w: unilateral_sum(term, bound, w))


@_entry("btL", ("mono", "mono_or_inf", "mono_or_inf", "mono_or_inf"),
        "sum_{n>=0} (r1, r2)_n (aq/f;q^2)_n (aq/r1 r2)^n / ((q, aq/f)_n (aq;q^2)_n)")
def _bt_left(a, r1, r2, f, order):
    aq = a.shift(1)
    aqf = _div(aq, f)

    def term(n, w):
        return quotient_to(
            w,
            lambda v: product_to(v, lambda u: _lemma_weight(r1, r2, aq, 1, n, u),
                                 lambda u: _finite_pochs(u, [(aqf, 2, n)])),
            lambda v: _finite_pochs(v, [(_q(), 1, n), (aqf, 1, n), (aq, 2, n)]),
        )

    def bound(n):
        b = _lemma_bound(r1, r2, aq, 1, n)
        return b + (poch_val(aqf, 2, n) if aqf is not INFINITY else 0)

    return unilateral_sum(term, bound, order)


@_entry("btR", ("mono", "mono_or_inf", "mono_or_inf", "mono_or_inf"),
        "(aq/r1, aq/r2)_inf / (aq, aq/r1 r2)_inf sum_{n>=0} (1 - aq^{4n}) (a, f;q^2)_n (r1, r2)_{2n} "
        "(a^3/(r1^2 r2^2 f))^n q^{2n^2+2n} / ((1 - a) (q^2, aq^2/f;q^2)_n (aq/r1, aq/r2)_{2n})")
def _bt_right(a, r1, r2, f, order):
    aq = a.shift(1)
    rhos = [r for r in (r1, r2) if r is not INFINITY]

    def mono(n):
        out = a ** (3 * n) * _q(2 * n * n + 2 * n)
        for r in rhos:
            out = out / r ** (2 * n)
        if f is INFINITY:
            out = out * ParamMonomial(_sign(n), n * n - n)
        else:
            out = out / f ** n
        # (r; q)_{2n} r^{-2n} -> q^{C(2n,2)} as r -> inf
        return out * _q((2 - len(rhos)) * n * (2 * n - 1))

    def term(n, w):
        return quotient_to(
            w,
            lambda v: product_to(v, lambda u: QSeries.from_monomial(mono(n)),
                                 lambda u: _well_poised(a, 2, n, u),
                                 lambda u: _finite_pochs(u, [(f, 2, n)] + [(r, 1, 2 * n) for r in rhos])),
            lambda v: _finite_pochs(v, [(_q(2), 2, n), (_div(a.shift(2), f), 2, n)]
                                    + [(aq / r, 1, 2 * n) for r in rhos]),
        )

    def bound(n):
        b = mono(n).q_exp + min(Fraction(0), 2 * a.q_exp) * n
        b += sum((poch_val(r, 1, 2 * n) for r in rhos), Fraction(0))
        return b + (poch_val(f, 2, n) if f is not INFINITY else 0)

    pre = lambda w: _pre_ratio(w, [aq / r for r in rhos],
                               [aq] + ([aq / (rhos[0] * rhos[1])] if len(rhos) == 2 else []))
    return product_to(order, pre, lambda w: unilateral_sum(term, bound, w))


@_entry("btbisL", ("mono", "mono", "mono_or_inf", "mono_or_inf"),
        "sum_{n>=0} (r1, r2;q^2)_n (-aq/b)_{2n} (a^2 q^2/r1 r2)^n / ((q^2, a^2 q^2/b^2;q^2)_n (-aq)_{2n})")
def _btbis_left(a, b, r1, r2, order):
    X = (a * a).shift(2)

    def term(n, w):
        return quotient_to(
            w,
            lambda v: product_to(v, lambda u: _lemma_weight(r1, r2, X, 2, n, u),
                                 lambda u: poch_finite((-a / b).shift(1), 1, 2 * n, u)),
            lambda v: _finite_pochs(v, [(_q(2), 2, n), (X / (b * b), 2, n), ((-a).shift(1), 1, 2 * n)]),
        )

    def bound(n):
        return _lemma_bound(r1, r2, X, 2, n) + poch_val((-a / b).shift(1), 1, 2 * n)

    return unilateral_sum(term, bound, order)


@_entry("btbisR", ("mono", "mono", "mono_or_inf", "mono_or_inf"),
        "(a^2q^2/r1, a^2q^2/r2;q^2)_inf / (a^2q^2, a^2q^2/r1 r2;q^2)_inf sum_{n>=0} (1 - aq^{2n}) (a, b)_n "
        "(r1, r2;q^2)_n (a^3/(b r1 r2))^n q^{n^2+2n} / ((1 - a) (q, aq/b)_n (a^2q^2/r1, a^2q^2/r2;q^2)_n)")
def _btbis_right(a, b, r1, r2, order):
    X = (a * a).shift(2)
    rhos = [r for r in (r1, r2) if r is not INFINITY]

    def mono(n):
        out = (a ** 3 / b) ** n * _q(n * n + 2 * n)
        for r in rhos:
            out = out / r ** n
        return out * ParamMonomial(_sign(n) ** (2 - len(rhos)), (2 - len(rhos)) * (n * n - n))

    def term(n, w):
        return quotient_to(
            w,
            lambda v: product_to(v, lambda u: QSeries.from_monomial(mono(n)),
                                 lambda u: _well_poised(a, 1, n, u),
                                 lambda u: _finite_pochs(u, [(b, 1, n)] + [(r, 2, n) for r in rhos])),
            lambda v: _finite_pochs(v, [(_q(), 1, n), ((a / b).shift(1), 1, n)]
                                    + [(X / r, 2, n) for r in rhos]),
        )

    def bound(n):
        b_ = mono(n).q_exp + min(Fraction(0), a.q_exp) * n + poch_val(b, 1, n)
        return b_ + sum((poch_val(r, 2, n) for r in rhos), Fraction(0))

    pre = lambda w: _pre_ratio(w, [X / r for r in rhos],
                               [X] + ([X / (rhos[0] * rhos[1])] if len(rhos) == 2 else []), 2)
    return product_to(order, pre, lambda w: unilateral_sum(term, bound, w))
