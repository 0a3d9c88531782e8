from __future__ import annotations

import re
from importlib import resources

import pytest

from mockq.catalog import eval_named, get_entry, list_entries
from mockq.dsl import FUNCTIONS
from mockq.errors import UnknownEntry
from mockq.qcore import monomial
from mockq.verifier import builtin_suite

from _oracle import pentagonal, poch_list, poly_inverse, poly_mul, series_to_list, sum_of_terms

N = 40


def _stop(shift):
    return shift >= N


def oracle_f3():
    def term(k):
        if _stop(k * k):
            return None
        den = poch_list(1, 1, 1, k, N)
        return k * k, poly_inverse(poly_mul(den, den, N), N)
    return sum_of_terms(term, N)


def oracle_f1():
    def term(k):
        if _stop(k * k + k):
            return None
        return k * k + k, poly_inverse(poch_list(1, 1, 1, k, N), N)
    return sum_of_terms(term, N)


def oracle_phi10():
    def term(k):
        sh = k * (k + 1) // 2
        if _stop(sh):
            return None
        return sh, poly_inverse(poch_list(-1, 1, 2, k + 1, N), N)
    return sum_of_terms(term, N)


def oracle_x10():
    def term(k):
        if _stop(k * k):
            return None
        body = poly_inverse(poch_list(1, 1, 1, 2 * k, N), N)
        return k * k, [(-1) ** k * c for c in body]
    return sum_of_terms(term, N)


def oracle_y():
    def term(k):
        if _stop(k):
            return None
        den = poly_mul(poch_list(-1, 1, 2, k, N), poch_list(-1, 1, 1, k, N), N)
        return k, poly_inverse(den, N)
    return sum_of_terms(term, N)


def oracle_hikami():
    def term(k):
        if _stop(2 * k):
            return None
        p = poch_list(-1, 1, 2, k, N)
        return 2 * k, poly_mul(p, p, N)
    return sum_of_terms(term, N)


@pytest.mark.parametrize("name,oracle", [
    ("f3", oracle_f3), ("f1", oracle_f1), ("phi10", oracle_phi10),
    ("X10", oracle_x10), ("Y", oracle_y), ("hikami", oracle_hikami),
])
def test_entry_against_direct_expansion(name, oracle):
    assert series_to_list(eval_named(name, (), N), N) == oracle()


def test_pentagonal_entry():
    assert series_to_list(eval_named("pent", (), N), N) == pentagonal(N)


def test_registry_shape():
    entries = list_entries()
    assert len(entries) >= 18
    for e in entries:
        assert e.definition.strip()
        assert get_entry(e.name) is e
        assert e.name in FUNCTIONS


def test_suite_only_uses_known_functions():
    text = resources.files("mockq").joinpath("identities.txt").read_text()
    used = set()
    for line in text.splitlines():
        if ":" in line and not line.lstrip().startswith("#"):
            used |= set(re.findall(r"([A-Za-z_][A-Za-z0-9_]*)\s*\(", line.split(":", 1)[1]))
    assert used <= set(FUNCTIONS)
    assert len(builtin_suite()) >= 60


def test_nested_sums_at_depth_one():
    assert eval_named("B", (1,), N).eq_up_to(eval_named("f3", (), N), N)[0]
    assert eval_named("M", (1,), N).eq_up_to(eval_named("phi10", (), N), N)[0]


def test_u_at_minus_one_is_nonnegative():
    s = eval_named("U", (monomial(-1),), N)
    coeffs = series_to_list(s, N)
    assert all(c >= 0 and c.denominator == 1 for c in coeffs)
    assert coeffs[:4] == [1, 4, 4, 12]


def test_s_is_symmetric_in_x():
    s = eval_named("S", (monomial(1, 0, x=1),), 20)
    for e, c in s.coefficients():
        terms = c.terms
        for mono, v in terms.items():
            mirror = tuple((name, -k) for name, k in mono)
            assert terms.get(mirror) == v


def test_root_of_unity_specialization():
    assert eval_named("Sroot", (), N).eq_up_to(eval_named("Sspec", (), N), N)[0]


def test_nullary_entries_are_integral():
    for e in list_entries():
        if not e.params:
            s = eval_named(e.name, (), 30)
            assert s.is_integral(), e.name


def test_bailey_transform_endpoints_accept_infinity():
    from mockq.bailey import INFINITY
    a = monomial(1)
    lhs = eval_named("btL", (a, INFINITY, INFINITY, INFINITY), 30)
    rhs = eval_named("btR", (a, INFINITY, INFINITY, INFINITY), 30)
    assert lhs.eq_up_to(rhs, 30)[0]


def test_errors():
    with pytest.raises(UnknownEntry):
        get_entry("nope")
    with pytest.raises(TypeError):
        eval_named("f3", (1,), 10)
