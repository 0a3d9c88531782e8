from __future__ import annotations

import pytest
from hypothesis import assume, given, settings, strategies as st

from mockq.catalog import eval_named
from mockq.dsl import evaluate, parse_expr, parse_identity, to_text
from mockq.errors import ParseError, UndeclaredSymbol, UnknownFunction
from mockq.products import poch_infinite
from mockq.qcore import monomial

SAMPLES = [
    "1",
    "-q^-1",
    "q^(-1/2)*x",
    "2/3*q*x^-1",
    "pinf(q, 1)",
    "pinf2(q^2, q^3; 5)",
    "-pinf(q, 1)/pinf(-q, 1)^2",
    "B(2) + 2/pinf(q^2, q^3, 5)*chi10() - 2/pinf(q, q^4, 5)*X10()",
    "(1 + q)*(1 - q)^3 - f3()",
    "m(-q, 5, q^5*q^2)",
    "sub(f3(), -1, 2)",
    "btL(1, inf, inf, inf)",
    "j(x, 1) - jtp(x, 1)",
]

atoms = st.sampled_from(["0", "q", "x", "2", "q^3", "-q^2", "f3()", "pinf(q, 1)", "m(-q, 5, q^2)", "1/2*y"])


def _combine(children):
    return st.one_of(
        st.tuples(children, st.sampled_from(["+", "-", "*", "/"]), children).map(lambda t: f"({t[0]}) {t[1]} {t[2]}"),
        st.tuples(children, st.integers(-2, 3)).map(lambda t: f"({t[0]})^{t[1]}"),
        children.map(lambda c: f"-{c}"),
    )


exprs = st.recursive(atoms, _combine, max_leaves=6)


@pytest.mark.parametrize("text", SAMPLES)
def test_print_parse_roundtrip(text):
    tree = parse_expr(text)
    assert parse_expr(to_text(tree)) == tree


@settings(max_examples=150, deadline=None)
@given(exprs)
def test_roundtrip_on_generated_expressions(text):
    try:
        tree = parse_expr(text)
    except ParseError:
        assume(False)
    printed = to_text(tree)
    assert parse_expr(printed) == tree
    assert to_text(parse_expr(printed)) == printed


def test_printed_text_evaluates_the_same():
    text = "(1 + q)*f3()^2 - pinf(q, 1)/(1 - q^2)"
    a = evaluate(text, 30)
    b = evaluate(to_text(parse_expr(text)), 30)
    assert a.eq_up_to(b, 30)[0]


def test_literal_monomials_fold():
    tree = parse_expr("2/3*q*x^-1")
    assert to_text(tree) == "2/3*q*x^-1"
    s = evaluate(tree, 10)
    assert s.is_monomial() and s.to_monomial() == monomial("2/3", 1, x=-1)


def test_evaluation_matches_direct_calls():
    s = evaluate("pinf(q, 1)*f3()", 40)
    direct = poch_infinite(monomial(1, 1), 1, 40) * eval_named("f3", (), 40)
    assert s.eq_up_to(direct, 40)[0]


def test_identity_split():
    lhs, rhs = parse_identity("f3() == B(1)")
    assert evaluate(lhs, 30).eq_up_to(evaluate(rhs, 30), 30)[0]
    with pytest.raises(ParseError):
        parse_identity("f3()")


@pytest.mark.parametrize("text", ["pinf(q", "1 +", "q^(1/2", "f3() f3()", "pinf(q, 1))", "x^(1/2)"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_expr(text)


def test_bad_arity():
    with pytest.raises(ParseError):
        parse_expr("f3(1)")
    with pytest.raises(ParseError):
        parse_expr("m(q, 5)")


def test_unknown_function():
    with pytest.raises(UnknownFunction):
        parse_expr("zeta(2)")


def test_undeclared_symbol_reports_position():
    with pytest.raises(UndeclaredSymbol) as info:
        parse_expr("1 + a*q")
    assert "position 4" in str(info.value)
    assert parse_expr("a*q", symbols=("a",)) is not None


def test_main_identity_parses():
    lhs, rhs = parse_identity(
        "B(2) + 2/pinf(q^2, q^3, 5)*chi10() - 2/pinf(q, q^4, 5)*X10() == -pinf(q, 1)/pinf(-q, 1)^2"
    )
    assert to_text(rhs) == "-pinf(q, 1)/pinf(-q, 1)^2"


def test_zero_literal():
    assert to_text(parse_expr("0")) == "0"
    assert to_text(parse_expr("-0 + f3()")) == "0 + f3()"
    assert evaluate("0*f3() + 0^2", 20).is_zero()
    assert evaluate("0^0", 5).eq_up_to(evaluate("1", 5), 5)[0]
    with pytest.raises(ParseError):
        parse_expr("0^-1")
    with pytest.raises(TypeError):
        evaluate("pinf(0, 1)", 10)
