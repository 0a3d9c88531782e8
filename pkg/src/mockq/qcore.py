"""Exact truncated q-series.

A :class:`QSeries` is a sparse map from exponents in ``(1/D)·Z`` to
:class:`Coefficient` values, together with a truncation order ``N``: every
coefficient of an exponent ``e < N`` is exact, nothing is known at or above
``N``.  Exact series (polynomials, monomials) carry ``N = inf``.

Coefficients are Laurent polynomials in a handful of formal symbols
(``x``, ``y``, ``z``, ...) over the rationals.  Internally a series stores the
flat map ``(k, mono) -> rational`` where the exponent is ``k/D`` and ``mono``
is a sorted tuple of ``(symbol, power)`` pairs.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational as _RationalABC

from .errors import (
    FractionalSignSubstitution,
    NotInvertible,
    OrderBeyondTruncation,
    UndeclaredSymbol,
)

try:
    from gmpy2 import mpq as Rational
except ImportError:  # pragma: no cover
    Rational = Fraction

INF = math.inf
_ZERO = Rational(0)
_ONE = Rational(1)

DEFAULT_SYMBOLS = ("x", "y", "z")


def rational(value) -> Rational:
    """Coerce an int, Fraction, mpq or ``"p/q"`` string to an exact rational."""
    if isinstance(value, str):
        value = Fraction(value)
    if isinstance(value, float):
        raise TypeError("floats are not exact; pass a Fraction or a string")
    return Rational(value)


def fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floats are not exact; pass a Fraction or a string")
    if isinstance(value, (int, str)):
        return Fraction(value)
    return Fraction(int(value.numerator), int(value.denominator))


def _ceil(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def _kbound(trunc, den):
    return None if trunc is None else _ceil(trunc * den)


# -- monomials in the formal symbols -------------------------------------------

def mono_mul(m1: tuple, m2: tuple) -> tuple:
    if not m1:
        return m2
    if not m2:
        return m1
    d = dict(m1)
    for s, e in m2:
        v = d.get(s, 0) + e
        if v:
            d[s] = v
        else:
            del d[s]
    return tuple(sorted(d.items()))


def mono_pow(m: tuple, n: int) -> tuple:
    if not n or not m:
        return ()
    return tuple((s, e * n) for s, e in m)


def mono_str(m: tuple) -> str:
    return "*".join(s if e == 1 else f"{s}^{e}" for s, e in m)


class SymbolContext:
    """The set of formal symbols an evaluation is allowed to introduce."""

    def __init__(self, symbols=DEFAULT_SYMBOLS):
        self.symbols = frozenset(symbols)

    def check(self, name: str) -> str:
        if name not in self.symbols:
            raise UndeclaredSymbol(f"symbol {name!r} is not declared (declared: {sorted(self.symbols)})")
        return name

    def __repr__(self):
        return f"SymbolContext({sorted(self.symbols)})"


# -- coefficients ----------------------------------------------------------------

class Coefficient:
    """A Laurent polynomial in the formal symbols with rational coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for m, c in dict(terms).items():
                c = rational(c)
                if c:
                    clean[tuple(m)] = c
        self._terms = clean

    @classmethod
    def _raw(cls, terms):
        obj = cls.__new__(cls)
        obj._terms = terms
        return obj

    @classmethod
    def scalar(cls, c):
        return cls({(): c})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_rational(self) -> bool:
        return not self._terms or list(self._terms) == [()]

    def to_rational(self) -> Rational:
        if not self.is_rational():
            raise ValueError(f"{self} is not a plain rational")
        return self._terms.get((), _ZERO)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self._terms.values())

    def is_unit(self) -> bool:
        return len(self._terms) == 1

    def degree_range(self, symbol):
        degs = [dict(m).get(symbol, 0) for m in self._terms]
        return (min(degs), max(degs)) if degs else (0, 0)

    def _coerce(self, other):
        if isinstance(other, Coefficient):
            return other
        return Coefficient.scalar(other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = out.get(m, _ZERO) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Coefficient._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return Coefficient._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        out = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = mono_mul(m1, m2)
                out[m] = out.get(m, _ZERO) + c1 * c2
        return Coefficient._raw({m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Coefficient):
            try:
                other = Coefficient.scalar(other)
            except TypeError:
                return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for m in sorted(self._terms, key=lambda m: [(s, e) for s, e in m]):
            c = self._terms[m]
            if not m:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono_str(m))
            elif c == -1:
                parts.append("-" + mono_str(m))
            else:
                parts.append(f"{c}*{mono_str(m)}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"Coefficient({self})"


# -- parameter monomials ----------------------------------------------------------

@dataclass(frozen=True)
class ParamMonomial:
    """``scalar · q^q_exp · prod(sym^k)``: the argument type of every special function."""

    scalar: object = 1
    q_exp: object = 0
    syms: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "scalar", rational(self.scalar))
        object.__setattr__(self, "q_exp", fraction(self.q_exp))
        object.__setattr__(self, "syms", tuple(sorted((s, int(e)) for s, e in self.syms if e)))
        if not self.scalar:
            raise ValueError("a parameter monomial must have a nonzero scalar")

    def __mul__(self, other):
        if not isinstance(other, ParamMonomial):
            return ParamMonomial(self.scalar * rational(other), self.q_exp, self.syms)
        return ParamMonomial(self.scalar * other.scalar, self.q_exp + other.q_exp,
                             mono_mul(self.syms, other.syms))

    __rmul__ = __mul__

    def inverse(self):
        return ParamMonomial(1 / self.scalar, -self.q_exp, mono_pow(self.syms, -1))

    def __truediv__(self, other):
        if not isinstance(other, ParamMonomial):
            other = ParamMonomial(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return ParamMonomial(other) * self.inverse()

    def __neg__(self):
        return ParamMonomial(-self.scalar, self.q_exp, self.syms)

    def __pow__(self, n: int):
        n = int(n)
        return ParamMonomial(self.scalar ** n, self.q_exp * n, mono_pow(self.syms, n))

    def shift(self, e):
        """Multiply by ``q^e``."""
        return ParamMonomial(self.scalar, self.q_exp + fraction(e), self.syms)

    @property
    def is_scalar(self) -> bool:
        return self.q_exp == 0 and not self.syms

    @property
    def is_formal(self) -> bool:
        return bool(self.syms)

    def to_series(self) -> "QSeries":
        return QSeries.from_monomial(self)

    def __str__(self):
        parts = []
        if self.q_exp != 0 or not self.syms:
            e = self.q_exp
            if e == 0:
                parts.append("1")
            elif e == 1:
                parts.append("q")
            elif e.denominator == 1:
                parts.append(f"q^{e.numerator}")
            else:
                parts.append(f"q^({e.numerator}/{e.denominator})")
        parts.extend(s if e == 1 else f"{s}^{e}" for s, e in self.syms)
        body = "*".join(parts)
        if body == "1":
            return str(self.scalar)
        if self.scalar == 1:
            return body
        if self.scalar == -1:
            return "-" + body
        return f"{self.scalar}*{body}"


def monomial(scalar=1, q=0, **syms) -> ParamMonomial:
    """Shorthand constructor: ``monomial(-1, q=2, x=1)`` is ``-q^2 x``."""
    return ParamMonomial(scalar, q, tuple(syms.items()))


# -- series ------------------------------------------------------------------

@dataclass(frozen=True)
class Mismatch:
    exponent: Fraction
    lhs: Coefficient
    rhs: Coefficient


def _fmt_exp(e: Fraction) -> str:
    return str(e.numerator) if e.denominator == 1 else f"({e.numerator}/{e.denominator})"


class QSeries:
    """Immutable sparse truncated series in ``q^(1/D)`` with Laurent coefficients."""

    __slots__ = ("_terms", "_den", "_trunc")

    def __init__(self, terms=None, den: int = 1, trunc=None):
        # public constructor: terms maps integer k (exponent k/den) -> Coefficient or rational
        flat = {}
        for k, c in (terms or {}).items():
            if isinstance(c, Coefficient):
                for m, v in c._terms.items():
                    flat[(int(k), m)] = v
            else:
                v = rational(c)
                if v:
                    flat[(int(k), ())] = v
        t = None if trunc is None or trunc == INF else fraction(trunc)
        self._set(flat, int(den), t)

    def _set(self, flat, den, trunc):
        kb = _kbound(trunc, den)
        if kb is not None:
            flat = {key: v for key, v in flat.items() if key[0] < kb and v}
        else:
            flat = {key: v for key, v in flat.items() if v}
        g = den
        if den > 1:
            for (k, _m) in flat:
                g = math.gcd(g, k)
                if g == 1:
                    break
        if g > 1:
            flat = {(k // g, m): v for (k, m), v in flat.items()}
            den //= g
        self._terms = flat
        self._den = den
        self._trunc = trunc

    @classmethod
    def _make(cls, flat, den, trunc):
        obj = cls.__new__(cls)
        obj._set(flat, den, trunc)
        return obj

    # constructors
    @classmethod
    def zero(cls, trunc=None):
        return cls({}, 1, trunc)

    @classmethod
    def one(cls, trunc=None):
        return cls({0: 1}, 1, trunc)

    @classmethod
    def constant(cls, c, trunc=None):
        return cls({0: c}, 1, trunc)

    @classmethod
    def q_power(cls, e=1, trunc=None):
        return cls.from_monomial(ParamMonomial(1, e), trunc)

    @classmethod
    def from_monomial(cls, pm: ParamMonomial, trunc=None):
        e = pm.q_exp
        t = None if trunc is None or trunc == INF else fraction(trunc)
        return cls._make({(e.numerator, pm.syms): pm.scalar}, e.denominator, t)

    @classmethod
    def from_exponents(cls, mapping, trunc=None):
        """Build from ``{exponent: value}`` with rational exponents."""
        acc = Accumulator()
        for e, c in mapping.items():
            if isinstance(c, Coefficient):
                for m, v in c._terms.items():
                    acc.add(e, m, v)
            else:
                acc.add(e, (), rational(c))
        return acc.to_series(trunc)

    @classmethod
    def symbol(cls, name: str):
        return cls.from_monomial(ParamMonomial(1, 0, ((name, 1),)))

    # inspection
    @property
    def den(self) -> int:
        return self._den

    @property
    def trunc(self):
        return INF if self._trunc is None else self._trunc

    @property
    def is_exact(self) -> bool:
        return self._trunc is None

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self):
        return len(self._terms)

    def val(self):
        if not self._terms:
            return INF
        return Fraction(min(k for k, _ in self._terms), self._den)

    def symbols(self) -> set:
        return {s for (_k, m) in self._terms for s, _e in m}

    def coeff(self, e) -> Coefficient:
        e = fraction(e)
        if self._trunc is not None and e >= self._trunc:
            raise OrderBeyondTruncation(f"coefficient of q^{e} requested but series is only exact below q^{self._trunc}")
        ke = e * self._den
        if ke.denominator != 1:
            return Coefficient()
        k = ke.numerator
        return Coefficient._raw({m: v for (kk, m), v in self._terms.items() if kk == k})

    def coefficients(self):
        """Sorted list of ``(exponent, Coefficient)`` for the nonzero coefficients."""
        groups = {}
        for (k, m), v in self._terms.items():
            groups.setdefault(k, {})[m] = v
        return [(Fraction(k, self._den), Coefficient._raw(groups[k])) for k in sorted(groups)]

    def is_monomial(self) -> bool:
        return self._trunc is None and len(self._terms) == 1

    def to_monomial(self) -> ParamMonomial:
        if not self.is_monomial():
            raise ValueError(f"{self} is not an exact single-term series")
        ((k, m), v), = self._terms.items()
        return ParamMonomial(v, Fraction(k, self._den), m)

    def is_integral(self) -> bool:
        return all(v.denominator == 1 for v in self._terms.values())

    # structure
    def _lifted(self, den):
        f = den // self._den
        if f == 1:
            return self._terms
        return {(k * f, m): v for (k, m), v in self._terms.items()}

    def truncate(self, order):
        order = fraction(order)
        t = order if self._trunc is None else min(self._trunc, order)
        return QSeries._make(self._terms, self._den, t)

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return self._trunc == other._trunc and self._den == other._den and self._terms == other._terms

    def __hash__(self):
        return hash((self._den, self._trunc, frozenset(self._terms.items())))

    # arithmetic
    def _coerce(self, other):
        if isinstance(other, QSeries):
            return other
        if isinstance(other, ParamMonomial):
            return QSeries.from_monomial(other)
        if isinstance(other, Coefficient):
            return QSeries({0: other})
        return QSeries.constant(other)

    def __add__(self, other):
        other = self._coerce(other)
        den = self._den * other._den // math.gcd(self._den, other._den)
        a, b = self._lifted(den), other._lifted(den)
        if len(a) < len(b):
            a, b = b, a
        out = dict(a)
        for key, v in b.items():
            out[key] = out.get(key, _ZERO) + v
        return QSeries._make(out, den, _min_trunc(self._trunc, other._trunc))

    __radd__ = __add__

    def __neg__(self):
        return QSeries._make({key: -v for key, v in self._terms.items()}, self._den, self._trunc)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c):
        """Multiply by a rational or a Coefficient."""
        if isinstance(c, Coefficient):
            return self * QSeries({0: c})
        c = rational(c)
        if not c:
            return QSeries._make({}, 1, self._trunc)
        return QSeries._make({key: v * c for key, v in self._terms.items()}, self._den, self._trunc)

    def times_monomial(self, pm: ParamMonomial):
        e = pm.q_exp
        den = _lcm(self._den, e.denominator)
        ke = e.numerator * (den // e.denominator)
        f = den // self._den
        out = {}
        for (k, m), v in self._terms.items():
            out[(k * f + ke, mono_mul(m, pm.syms))] = v * pm.scalar
        t = None if self._trunc is None else self._trunc + e
        return QSeries._make(out, den, t)

    def __mul__(self, other):
        if isinstance(other, ParamMonomial):
            return self.times_monomial(other)
        if not isinstance(other, QSeries):
            if isinstance(other, Coefficient):
                other = QSeries({0: other})
            else:
                return self.scale(other)
        if other.is_monomial():
            return self.times_monomial(other.to_monomial())
        if self.is_monomial():
            return other.times_monomial(self.to_monomial())
        den = _lcm(self._den, other._den)
        va, vb = self.val(), other.val()
        ta, tb = self._trunc, other._trunc
        cands = []
        if ta is not None and vb != INF:
            cands.append(ta + vb)
        if tb is not None and va != INF:
            cands.append(tb + va)
        if ta is not None and tb is not None:
            cands.append(ta + tb)
        trunc = min(cands) if cands else None
        if va == INF or vb == INF:
            return QSeries._make({}, 1, trunc)
        kb = _kbound(trunc, den)
        A, B = self._lifted(den), other._lifted(den)
        if len(A) > len(B):
            A, B = B, A
        Bs = sorted(B.items(), key=lambda kv: kv[0][0])
        acc = {}
        get = acc.get
        for (k1, m1), c1 in A.items():
            lim = None if kb is None else kb - k1
            for (k2, m2), c2 in Bs:
                if lim is not None and k2 >= lim:
                    break
                if not m1:
                    key = (k1 + k2, m2)
                elif not m2:
                    key = (k1 + k2, m1)
                else:
                    key = (k1 + k2, mono_mul(m1, m2))
                acc[key] = get(key, _ZERO) + c1 * c2
        return QSeries._make(acc, den, trunc)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        n = int(n)
        if n < 0:
            return self.invert() ** (-n)
        result = QSeries.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def invert(self, order=None):
        """Multiplicative inverse; needs a unit leading coefficient.

        An exact multi-term series has an infinite inverse, so ``order`` is then
        required.  Otherwise the result is exact below ``trunc - 2·val``.
        """
        if not self._terms:
            raise NotInvertible("the zero series is not invertible")
        groups = {}
        for (k, m), v in self._terms.items():
            groups.setdefault(k, {})[m] = v
        k0 = min(groups)
        lead = groups[k0]
        if len(lead) != 1:
            raise NotInvertible(f"leading coefficient {Coefficient._raw(lead)} is not a unit")
        (m0, c0), = lead.items()
        if self._trunc is None and len(self._terms) == 1:
            inv = QSeries._make({(-k0, mono_pow(m0, -1)): 1 / c0}, self._den, None)
            return inv if order is None else inv.truncate(order)
        v = Fraction(k0, self._den)
        trunc = None if self._trunc is None else self._trunc - 2 * v
        if order is not None:
            order = fraction(order)
            trunc = order if trunc is None else min(trunc, order)
        if trunc is None:
            raise ValueError("an order is required to invert an exact non-monomial series")
        den = self._den
        kb = _kbound(trunc, den)
        span = kb + k0  # offsets j with j - k0 < kb
        if span <= 0:
            return QSeries._make({}, den, trunc)
        inv_m0 = mono_pow(m0, -1)
        inv_c0 = 1 / c0
        u = []
        for k in sorted(groups):
            j = k - k0
            if j == 0 or j >= span:
                continue
            u.append((j, {mono_mul(m, inv_m0): c * inv_c0 for m, c in groups[k].items()}))
        w = [None] * span
        w[0] = {(): _ONE}
        for j in range(1, span):
            acc = {}
            for i, ui in u:
                if i > j:
                    break
                wj = w[j - i]
                if not wj:
                    continue
                for m1, c1 in ui.items():
                    for m2, c2 in wj.items():
                        m = m2 if not m1 else (m1 if not m2 else mono_mul(m1, m2))
                        acc[m] = acc.get(m, _ZERO) - c1 * c2
            w[j] = {m: c for m, c in acc.items() if c}
        out = {}
        for j in range(span):
            for m, c in w[j].items():
                out[(j - k0, mono_mul(m, inv_m0))] = c * inv_c0
        return QSeries._make(out, den, trunc)

    def __truediv__(self, other):
        if isinstance(other, QSeries):
            if other.is_monomial():
                return self * other.invert()
            order = None
            if other.is_exact and self._trunc is not None:
                order = self._trunc - other.val() - (self.val() if self._terms else 0)
            return self * other.invert(order)
        if isinstance(other, ParamMonomial):
            return self.times_monomial(other.inverse())
        return self.scale(1 / rational(other))

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def times_one_minus(self, mu: ParamMonomial):
        """``self · (1 - mu)``."""
        e = mu.q_exp
        den = _lcm(self._den, e.denominator)
        ke = e.numerator * (den // e.denominator)
        trunc = None if self._trunc is None else self._trunc + min(e, 0)
        kb = _kbound(trunc, den)
        src = self._lifted(den)
        out = dict(src)
        c = mu.scalar
        for (k, m), v in src.items():
            k2 = k + ke
            if kb is not None and k2 >= kb:
                continue
            key = (k2, mono_mul(m, mu.syms))
            out[key] = out.get(key, _ZERO) - v * c
        return QSeries._make(out, den, trunc)

    def over_one_minus(self, mu: ParamMonomial, order=None):
        """``self / (1 - mu)``, expanding the geometric series in ``mu``."""
        e = mu.q_exp
        if e == 0:
            if mu.syms or mu.scalar == 1:
                raise NotInvertible(f"1 - ({mu}) is not a unit")
            return self.scale(1 / (1 - mu.scalar))
        if e < 0:
            inv = mu.inverse()
            return self.times_monomial(-inv).over_one_minus(inv, order)
        trunc = self._trunc
        if order is not None:
            order = fraction(order)
            trunc = order if trunc is None else min(trunc, order)
        if trunc is None:
            raise ValueError("an order is required to expand 1/(1 - mu) against an exact series")
        if not self._terms:
            return QSeries._make({}, 1, trunc)
        den = _lcm(self._den, e.denominator)
        ke = e.numerator * (den // e.denominator)
        kb = _kbound(trunc, den)
        groups = {}
        for (k, m), v in self._lifted(den).items():
            groups.setdefault(k, {})[m] = v
        kmin = min(groups)
        out = {}
        c = mu.scalar
        syms = mu.syms
        for k in range(kmin, kb):
            cur = dict(groups.get(k, ()))
            prev = out.get(k - ke)
            if prev:
                for m, v in prev.items():
                    mm = mono_mul(m, syms)
                    cur[mm] = cur.get(mm, _ZERO) + c * v
            cur = {m: v for m, v in cur.items() if v}
            if cur:
                out[k] = cur
        flat = {(k, m): v for k, d in out.items() for m, v in d.items()}
        return QSeries._make(flat, den, trunc)

    def substitute(self, sign: int = 1, k: int = 1):
        """Apply ``q -> sign·q^k``."""
        if sign not in (1, -1) or int(k) < 1:
            raise ValueError("substitute needs sign in {+1, -1} and a positive integer k")
        k = int(k)
        if sign == -1 and self._den != 1:
            raise FractionalSignSubstitution("q -> -q is undefined on fractional exponents")
        out = {}
        for (kk, m), v in self._terms.items():
            if sign == -1 and kk % 2:
                v = -v
            out[(kk * k, m)] = v
        t = None if self._trunc is None else self._trunc * k
        return QSeries._make(out, self._den, t)

    def eq_up_to(self, other, order):
        """Compare below ``order``; returns ``(equal, first Mismatch or None)``."""
        order = fraction(order)
        t = _min_trunc(self._trunc, other._trunc)
        if t is not None and order > t:
            raise OrderBeyondTruncation(f"cannot compare to q^{order}: operands are exact only below q^{t}")
        diff = (self - other).truncate(order)
        if diff.is_zero():
            return True, None
        e = diff.val()
        return False, Mismatch(e, self.coeff(e), other.coeff(e))

    def __repr__(self):
        return f"QSeries({self})"

    def __str__(self):
        parts = []
        for e, c in self.coefficients():
            cs = str(c)
            if e == 0:
                parts.append(cs)
                continue
            qs = "q" if e == 1 else f"q^{_fmt_exp(e)}"
            if cs == "1":
                parts.append(qs)
            elif cs == "-1":
                parts.append("-" + qs)
            elif c.is_unit():
                parts.append(f"{cs}*{qs}")
            else:
                parts.append(f"({cs})*{qs}")
        body = " + ".join(parts).replace("+ -", "- ") if parts else "0"
        if self._trunc is not None:
            body += f" + O(q^{_fmt_exp(self._trunc)})"
        return body


def _lcm(a, b):
    return a * b // math.gcd(a, b)


def _min_trunc(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class Accumulator:
    """Collects monomial contributions with rational exponents, then builds a series."""

    __slots__ = ("_data",)

    def __init__(self):
        self._data = {}

    def add(self, exponent, mono, value):
        key = (exponent, mono)
        self._data[key] = self._data.get(key, _ZERO) + value

    def add_monomial(self, pm: ParamMonomial, factor=_ONE):
        self.add(pm.q_exp, pm.syms, pm.scalar * factor)

    def to_series(self, trunc=None) -> QSeries:
        den = 1
        for (e, _m) in self._data:
            if e.denominator != 1:
                den = _lcm(den, e.denominator)
        flat = {}
        for (e, m), v in self._data.items():
            if v:
                k = e.numerator * (den // e.denominator)
                flat[(k, m)] = v
        t = None if trunc is None or trunc == INF else fraction(trunc)
        return QSeries._make(flat, den, t)


# module-level aliases mirroring the operation names
def add(s1: QSeries, s2: QSeries) -> QSeries:
    return s1 + s2


def mul(s1: QSeries, s2: QSeries) -> QSeries:
    return s1 * s2


def invert(s: QSeries, order=None) -> QSeries:
    return s.invert(order)


def substitute(s: QSeries, sign: int, k: int) -> QSeries:
    return s.substitute(sign, k)


def coeff(s: QSeries, e) -> Coefficient:
    return s.coeff(e)


def val(s: QSeries):
    return s.val()


def eq_up_to(s1: QSeries, s2: QSeries, order):
    return s1.eq_up_to(s2, order)


q = QSeries.q_power(1)


def is_rational_number(x) -> bool:
    return isinstance(x, (int, _RationalABC)) or type(x).__name__ == "mpq"
