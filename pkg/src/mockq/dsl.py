"""A small expression language for q-series identities.

Grammar::

    expr     := term (("+" | "-") term)*
    term     := unary (("*" | "/") unary)*
    unary    := "-" unary | power
    power    := atom ("^" exponent)?
    exponent := ["-"] int | "(" ["-"] int "/" int ")"
    atom     := int | "q" | symbol | "inf" | name "(" args ")" | "(" expr ")"
    args     := expr (("," | ";") expr)*

Products, quotients and powers of literals fold into a single monomial node,
so ``-q^2``, ``z*q`` and ``q^(1/2)`` are parameter monomials.  Function moduli
are plain integers: ``m(x, 5, z)`` means base ``q^5``.  Fractional exponents
are only allowed on a pure power of ``q``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from . import catalog
from .appell import appell_unnormalized, delta_correction, m_sum
from .bailey import INFINITY
from .errors import ParseError, UndeclaredSymbol, UnknownFunction
from .indefinite import f_indef, g_hm, theta_hm
from .orders import product_to, quotient_to
from .products import J, Jbar, Jm, j_theta, poch_finite, poch_infinite
from .qcore import DEFAULT_SYMBOLS, ParamMonomial, QSeries, SymbolContext, fraction

__all__ = [
    "Node", "Mono", "Zero", "Inf", "BinOp", "Neg", "Pow", "Call",
    "parse_expr", "to_text", "evaluate", "Evaluator", "FUNCTIONS",
]


# -- AST --------------------------------------------------------------------------------

class Node:
    __slots__ = ()


@dataclass(frozen=True)
class Mono(Node):
    value: ParamMonomial


@dataclass(frozen=True)
class Zero(Node):
    pass


@dataclass(frozen=True)
class Inf(Node):
    pass


@dataclass(frozen=True)
class BinOp(Node):
    op: str
    left: Node
    right: Node


@dataclass(frozen=True)
class Neg(Node):
    operand: Node


@dataclass(frozen=True)
class Pow(Node):
    base: Node
    exp: int


@dataclass(frozen=True)
class Call(Node):
    name: str
    args: tuple


def _mul(a: Node, b: Node) -> Node:
    if isinstance(a, Mono) and isinstance(b, Mono):
        return Mono(a.value * b.value)
    return BinOp("*", a, b)


def _div(a: Node, b: Node) -> Node:
    if isinstance(a, Mono) and isinstance(b, Mono):
        return Mono(a.value / b.value)
    return BinOp("/", a, b)


def _neg(a: Node) -> Node:
    if isinstance(a, Zero):
        return a
    if isinstance(a, Mono):
        return Mono(-a.value)
    return Neg(a)


def _pow(a: Node, e) -> Node:
    if isinstance(a, Zero):
        if e.denominator != 1:
            raise ValueError("fractional powers apply to powers of q only")
        if e < 0:
            raise ZeroDivisionError
        return a if e else Mono(ParamMonomial(1))
    if isinstance(a, Mono):
        if isinstance(e, Fraction) and e.denominator != 1:
            v = a.value
            if v.scalar != 1 or v.syms:
                raise ValueError("fractional powers apply to powers of q only")
            return Mono(ParamMonomial(1, v.q_exp * e))
        return Mono(a.value ** int(e))
    if isinstance(e, Fraction) and e.denominator != 1:
        raise ValueError("fractional powers apply to powers of q only")
    return Pow(a, int(e))


# -- tokenizer and parser -------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(==|[-+*/^(),;]))")


def _tokenize(text):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = "int" if m.group(1) else "name" if m.group(2) else "op"
        out.append((kind, m.group(m.lastindex), m.start(m.lastindex)))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text, symbols: SymbolContext):
        self.toks = _tokenize(text)
        self.i = 0
        self.symbols = symbols

    def peek(self):
        return self.toks[self.i]

    def take(self, value=None):
        tok = self.toks[self.i]
        if value is not None and tok[1] != value:
            raise ParseError(f"expected {value!r}, found {tok[1] or 'end of input'!r}", tok[2])
        self.i += 1
        return tok

    def at(self, *values):
        tok = self.peek()
        return tok[0] == "op" and tok[1] in values

    def expr(self):
        node = self.term()
        while self.at("+", "-"):
            op = self.take()[1]
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.at("*", "/"):
            op = self.take()[1]
            rhs = self.unary()
            node = _mul(node, rhs) if op == "*" else _div(node, rhs)
        return node

    def unary(self):
        if self.at("-"):
            self.take()
            return _neg(self.unary())
        return self.power()

    def power(self):
        base = self.atom()
        if not self.at("^"):
            return base
        tok = self.take()
        e = self.exponent()
        try:
            return _pow(base, e)
        except ValueError as exc:
            raise ParseError(str(exc), tok[2]) from None
        except ZeroDivisionError:
            raise ParseError("zero raised to a negative power", tok[2]) from None

    def signed_int(self):
        sign = 1
        if self.at("-"):
            self.take()
            sign = -1
        tok = self.peek()
        if tok[0] != "int":
            raise ParseError(f"expected an integer, found {tok[1] or 'end of input'!r}", tok[2])
        self.take()
        return sign * int(tok[1])

    def exponent(self):
        if self.at("("):
            self.take()
            num = self.signed_int()
            den = 1
            if self.at("/"):
                self.take()
                den = self.signed_int()
                if den == 0:
                    raise ParseError("zero denominator in exponent", self.peek()[2])
            self.take(")")
            return Fraction(num, den)
        return Fraction(self.signed_int())

    def atom(self):
        kind, value, pos = self.peek()
        if kind == "int":
            self.take()
            return Mono(ParamMonomial(int(value))) if int(value) else Zero()
        if kind == "name":
            self.take()
            if self.at("("):
                return self.call(value, pos)
            if value == "q":
                return Mono(ParamMonomial(1, 1))
            if value == "inf":
                return Inf()
            if value in FUNCTIONS:
                raise ParseError(f"{value} must be called with parentheses", pos)
            try:
                self.symbols.check(value)
            except UndeclaredSymbol as exc:
                raise UndeclaredSymbol(f"{exc} (at position {pos})") from None
            return Mono(ParamMonomial(1, 0, ((value, 1),)))
        if kind == "op" and value == "(":
            self.take()
            node = self.expr()
            self.take(")")
            return node
        raise ParseError(f"unexpected {value or 'end of input'!r}", pos)

    def call(self, name, pos):
        if name not in FUNCTIONS:
            raise UnknownFunction(f"unknown function {name!r} (at position {pos})")
        self.take("(")
        args = []
        if not self.at(")"):
            args.append(self.expr())
            while self.at(",", ";"):
                self.take()
                args.append(self.expr())
        self.take(")")
        FUNCTIONS[name].check_arity(len(args), pos)
        return Call(FUNCTIONS[name].name, tuple(args))

    def finish(self):
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected {tok[1]!r}", tok[2])


def parse_expr(text: str, symbols=DEFAULT_SYMBOLS) -> Node:
    """Parse ``text`` into an AST; symbols outside ``symbols`` are rejected."""
    ctx = symbols if isinstance(symbols, SymbolContext) else SymbolContext(symbols)
    p = _Parser(text, ctx)
    node = p.expr()
    p.finish()
    return node


def parse_identity(text: str, symbols=DEFAULT_SYMBOLS):
    """Parse ``lhs == rhs`` into a pair of ASTs."""
    ctx = symbols if isinstance(symbols, SymbolContext) else SymbolContext(symbols)
    p = _Parser(text, ctx)
    lhs = p.expr()
    p.take("==")
    rhs = p.expr()
    p.finish()
    return lhs, rhs


# -- printer ----------------------------------------------------------------------------

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2}


def _mono_prec(v: ParamMonomial) -> int:
    text = str(v)
    if text.startswith("-"):
        return 3
    return 5 if re.fullmatch(r"[A-Za-z_0-9^()]+", text) and "/" not in text else 2


def _prec(node: Node) -> int:
    if isinstance(node, Mono):
        return _mono_prec(node.value)
    if isinstance(node, BinOp):
        return _PREC[node.op]
    if isinstance(node, Neg):
        return 3
    if isinstance(node, Pow):
        return 4
    return 5


def _wrap(node, need):
    s = to_text(node)
    return f"({s})" if _prec(node) < need else s


def to_text(node: Node) -> str:
    """Canonical text form; ``parse_expr(to_text(n))`` rebuilds ``n``."""
    if isinstance(node, Mono):
        return str(node.value)
    if isinstance(node, Inf):
        return "inf"
    if isinstance(node, Zero):
        return "0"
    if isinstance(node, BinOp):
        p = _PREC[node.op]
        left = _wrap(node.left, p)
        right = _wrap(node.right, p + 1)
        sep = f" {node.op} " if p == 1 else node.op
        return f"{left}{sep}{right}"
    if isinstance(node, Neg):
        return "-" + _wrap(node.operand, 3)
    if isinstance(node, Pow):
        return f"{_wrap(node.base, 5)}^{node.exp}"
    if isinstance(node, Call):
        return f"{node.name}({', '.join(to_text(a) for a in node.args)})"
    raise TypeError(f"not an expression node: {node!r}")


# -- functions ----------------------------------------------------------------------------

@dataclass(frozen=True)
class Function:
    name: str
    kinds: tuple          # per-argument kind: "int", "rat", "mono", "mono_or_inf", "expr"
    impl: Callable        # impl(args, order, evaluator) -> QSeries
    variadic: bool = False  # last-but-one kind repeats
    optional: int = 0       # trailing arguments that may be omitted

    def check_arity(self, n, pos=None):
        k = len(self.kinds)
        if self.variadic:
            ok, want = n >= k, f"at least {k}"
        else:
            ok = k - self.optional <= n <= k
            want = str(k) if not self.optional else f"{k - self.optional} to {k}"
        if not ok:
            raise ParseError(f"{self.name} takes {want} argument(s), got {n}", pos)

    def arg_kinds(self, n):
        if not self.variadic:
            return self.kinds[:n]
        head, rep, tail = self.kinds[:-2], self.kinds[-2], self.kinds[-1]
        return head + (rep,) * (n - len(self.kinds) + 1) + (tail,)


FUNCTIONS: dict = {}


def _fn(name, kinds, variadic=False, aliases=(), optional=0):
    def deco(impl):
        f = Function(name, tuple(kinds), impl, variadic, optional)
        FUNCTIONS[name] = f
        for a in aliases:
            FUNCTIONS[a] = f
        return impl
    return deco


@_fn("pinf", ("mono", "int"), variadic=True, aliases=("pinf2",))
def _pinf(args, order, ev):
    *bases, modulus = args
    return product_to(order, *[(lambda w, a=a: poch_infinite(a, modulus, w)) for a in bases])


@_fn("pfin", ("mono", "int", "int"))
def _pfin(args, order, ev):
    a, modulus, n = args
    if n < 0:
        raise ValueError("pfin needs n >= 0")
    return poch_finite(a, modulus, n, order)


@_fn("j", ("mono", "int"))
def _j(args, order, ev):
    return j_theta(args[0], args[1], order)


@_fn("J", ("rat", "int"))
def _J(args, order, ev):
    return J(args[0], args[1], order)


@_fn("Jb", ("rat", "int"))
def _Jb(args, order, ev):
    return Jbar(args[0], args[1], order)


@_fn("Jm", ("int",))
def _Jm(args, order, ev):
    return Jm(args[0], order)


@_fn("m", ("mono", "int", "mono"))
def _m(args, order, ev):
    return m_sum(args[0], args[1], args[2], order)


@_fn("delta", ("mono", "int", "mono", "mono"))
def _delta(args, order, ev):
    return delta_correction(*args, order=order)


@_fn("A", ("int", "mono", "mono"))
def _appell(args, order, ev):
    return appell_unnormalized(*args, order=order)


@_fn("f", ("int", "int", "int", "mono", "mono", "int"), optional=1)
def _f(args, order, ev):
    a, b, c, x, y = args[:5]
    return f_indef(a, b, c, x, y, args[5] if len(args) > 5 else 1, order)


@_fn("g", ("int", "int", "int", "mono", "mono", "mono", "mono"))
def _g(args, order, ev):
    return g_hm(*args, order=order)


@_fn("theta_np", ("int", "int", "mono", "mono"))
def _theta(args, order, ev):
    return theta_hm(*args, order=order)


@_fn("sub", ("expr", "int", "int"))
def _sub(args, order, ev):
    node, sign, k = args
    if sign not in (1, -1) or k < 1:
        raise ValueError("sub(expr, sign, k) needs sign = +-1 and k >= 1")
    return ev.eval(node, fraction(order) / k).substitute(sign, k).truncate(order)


def _catalog_impl(name):
    def impl(args, order, ev):
        return catalog.eval_named(name, args, order)
    return impl


for _entry in catalog.list_entries():
    FUNCTIONS[_entry.name] = Function(_entry.name, _entry.params, _catalog_impl(_entry.name))


# -- evaluation ---------------------------------------------------------------------------

class Evaluator:
    """Evaluates ASTs exactly below a requested order, memoizing per (node, order)."""

    def __init__(self):
        self._cache = {}

    def eval(self, node: Node, order) -> QSeries:
        order = fraction(order)
        key = (node, order)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        out = self._eval(node, order)
        self._cache[key] = out
        return out

    def _fn(self, node):
        return lambda w: self.eval(node, w)

    def _eval(self, node, order):
        if isinstance(node, Mono):
            return QSeries.from_monomial(node.value)
        if isinstance(node, Zero):
            return QSeries.zero()
        if isinstance(node, Inf):
            raise TypeError("inf is only allowed as a function argument")
        if isinstance(node, Neg):
            return -self.eval(node.operand, order)
        if isinstance(node, BinOp):
            if node.op in "+-":
                a = self.eval(node.left, order)
                b = self.eval(node.right, order)
                return (a + b if node.op == "+" else a - b).truncate(order)
            if node.op == "*":
                return product_to(order, self._fn(node.left), self._fn(node.right))
            return quotient_to(order, self._fn(node.left), self._fn(node.right))
        if isinstance(node, Pow):
            if node.exp == 0:
                return QSeries.one()
            if node.exp > 0:
                return self._power(node.base, node.exp, order)
            return quotient_to(order, lambda w: QSeries.one(),
                               lambda w: self._power(node.base, -node.exp, w))
        if isinstance(node, Call):
            fn = FUNCTIONS[node.name]
            kinds = fn.arg_kinds(len(node.args))
            args = [self._arg(k, a, node.name) for k, a in zip(kinds, node.args)]
            return fn.impl(args, order, self).truncate(order)
        raise TypeError(f"not an expression node: {node!r}")

    def _power(self, base, k, order):
        s = self.eval(base, order)
        v = s.val()
        if v != float("inf") and v < 0:
            s = self.eval(base, order - (k - 1) * v)
        return (s ** k).truncate(order)

    def _arg(self, kind, node, fname):
        if kind == "expr":
            return node
        if isinstance(node, Inf):
            if kind != "mono_or_inf":
                raise TypeError(f"{fname}: inf is not allowed here")
            return INFINITY
        if isinstance(node, Zero):
            if kind in ("int", "rat"):
                return 0
            raise TypeError(f"{fname}: argument 0 must be a nonzero monomial")
        if not isinstance(node, Mono):
            raise TypeError(f"{fname}: argument {to_text(node)!r} must be a monomial")
        v = node.value
        if kind in ("int", "rat"):
            if v.syms or v.q_exp != 0:
                raise TypeError(f"{fname}: argument {v} must be a number")
            r = Fraction(int(v.scalar.numerator), int(v.scalar.denominator))
            if kind == "int":
                if r.denominator != 1:
                    raise TypeError(f"{fname}: argument {v} must be an integer")
                return int(r)
            return r
        return v


def evaluate(node_or_text, order=50, symbols=DEFAULT_SYMBOLS) -> QSeries:
    """Evaluate an expression (AST or text) exactly below ``order``."""
    node = parse_expr(node_or_text, symbols) if isinstance(node_or_text, str) else node_or_text
    return Evaluator().eval(node, order)
