"""Identity registry, single-identity checks and suite runs."""
from __future__ import annotations

import re
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction
from importlib import resources
from typing import Iterable, Optional

from .dsl import BinOp, Evaluator, Mono, Node, parse_identity, to_text
from .errors import ParseError, QSeriesError
from .qcore import DEFAULT_SYMBOLS, Mismatch, ParamMonomial

__all__ = [
    "IdentitySpec", "VerificationReport", "parse_suite", "load_suite", "builtin_suite",
    "check_identity", "run_suite", "select", "perturbed", "DEFAULT_ORDER",
]

DEFAULT_ORDER = 50


@dataclass(frozen=True)
class IdentitySpec:
    name: str
    lhs: Node
    rhs: Node
    order: int = DEFAULT_ORDER
    tags: tuple = ()

    def text(self) -> str:
        tags = f" #{','.join(self.tags)}" if self.tags else ""
        return f"{self.name} @{self.order}{tags} : {to_text(self.lhs)} == {to_text(self.rhs)}"


@dataclass
class VerificationReport:
    identity: str
    order: int
    status: str  # "ok", "fail" or "error"
    first_mismatch: Optional[Mismatch] = None
    ms: float = 0.0
    error: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.status == "ok"

    def to_json(self) -> dict:
        mm = None
        if self.first_mismatch is not None:
            mm = {
                "exponent": str(self.first_mismatch.exponent),
                "lhs": str(self.first_mismatch.lhs),
                "rhs": str(self.first_mismatch.rhs),
            }
        out = {
            "identity": self.identity,
            "order": self.order,
            "status": self.status,
            "first_mismatch": mm,
            "ms": round(self.ms, 3),
        }
        if self.error is not None:
            out["error"] = self.error
        return out


# -- suite files ----------------------------------------------------------------------

_HEADER = re.compile(r"^(?P<name>[A-Za-z0-9_.\-]+)\s*(?:@(?P<order>\d+))?\s*(?:#(?P<tags>[\w\-,]+))?\s*$")


def _logical_lines(text):
    buf, start = "", None
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.rstrip()
        if not buf and (not line.strip() or line.lstrip().startswith("#")):
            continue
        if start is None:
            start = no
        if line.endswith("\\"):
            buf += line[:-1] + " "
            continue
        yield start, buf + line
        buf, start = "", None
    if buf:
        yield start, buf


def parse_suite(text: str, symbols=DEFAULT_SYMBOLS, source="<suite>") -> list:
    """Parse ``name [@order] [#tag,...] : lhs == rhs`` records."""
    specs = []
    seen = set()
    for lineno, line in _logical_lines(text):
        head, sep, body = line.partition(":")
        m = _HEADER.match(head.strip())
        if not sep or not m:
            raise ParseError(f"{source}:{lineno}: expected 'name [@order] [#tags] : lhs == rhs'")
        name = m.group("name")
        if name in seen:
            raise ParseError(f"{source}:{lineno}: duplicate identity name {name!r}")
        seen.add(name)
        try:
            lhs, rhs = parse_identity(body, symbols)
        except QSeriesError as exc:
            raise type(exc)(f"{source}:{lineno}: {name}: {exc}") from None
        order = int(m.group("order")) if m.group("order") else DEFAULT_ORDER
        if order <= 0:
            raise ParseError(f"{source}:{lineno}: order must be positive")
        tags = tuple(t for t in (m.group("tags") or "").split(",") if t)
        specs.append(IdentitySpec(name, lhs, rhs, order, tags))
    return specs


def load_suite(path, symbols=DEFAULT_SYMBOLS) -> list:
    with open(path, encoding="utf-8") as fh:
        return parse_suite(fh.read(), symbols, str(path))


def builtin_suite() -> list:
    text = resources.files("mockq").joinpath("identities.txt").read_text(encoding="utf-8")
    return parse_suite(text, source="identities.txt")


def select(specs: Iterable[IdentitySpec], names=None, tags=None) -> list:
    """Filter by exact names and/or tags; no filter keeps everything."""
    out = []
    for s in specs:
        if names and s.name not in names:
            continue
        if tags and not set(tags) & set(s.tags):
            continue
        out.append(s)
    return out


# -- checks --------------------------------------------------------------------------

def check_identity(spec: IdentitySpec, order: Optional[int] = None) -> VerificationReport:
    """Evaluate both sides below ``order`` (default: the identity's own) and compare."""
    n = int(order if order is not None else spec.order)
    t0 = time.perf_counter()
    try:
        ev = Evaluator()
        lhs = ev.eval(spec.lhs, n)
        rhs = ev.eval(spec.rhs, n)
        ok, mismatch = lhs.eq_up_to(rhs, n)
        status = "ok" if ok else "fail"
        error = None
    except (QSeriesError, ArithmeticError, TypeError, ValueError) as exc:
        status, mismatch, error = "error", None, f"{type(exc).__name__}: {exc}"
    ms = (time.perf_counter() - t0) * 1000
    return VerificationReport(spec.name, n, status, mismatch, ms, error)


def _check_star(args):
    return check_identity(*args)


def run_suite(specs: Iterable[IdentitySpec], order: Optional[int] = None, jobs: int = 1) -> list:
    """Check every spec; reports come back sorted by identity name."""
    specs = list(specs)
    work = [(s, order) for s in specs]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(_check_star, work))
    else:
        reports = [check_identity(*w) for w in work]
    return sorted(reports, key=lambda r: r.identity)


def perturbed(spec: IdentitySpec, order: Optional[int] = None) -> IdentitySpec:
    """Copy of ``spec`` with the right side multiplied by ``1 + q^(N-1)``.

    When the right side has valuation 0 the check must fail first at ``N-1``.
    """
    n = int(order if order is not None else spec.order)
    bump = BinOp("+", Mono(ParamMonomial(1)), Mono(ParamMonomial(1, n - 1)))
    return replace(spec, name=spec.name + "~perturbed", rhs=BinOp("*", spec.rhs, bump), order=n)
