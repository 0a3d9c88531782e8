from __future__ import annotations

from fractions import Fraction

import pytest

from mockq.errors import DivergentProduct
from mockq.products import J, Jbar, Jm, j_theta, poch_finite, poch_infinite, poch_infinite_multi
from mockq.qcore import QSeries, monomial

from _oracle import distinct_partitions, euler_product, series_to_list

X = monomial(1, 0, x=1)


def triple_product_sum(x, M, order):
    """sum_n (-1)^n q^(M n(n-1)/2) x^n, computed term by term."""
    total = QSeries.zero(order)
    n = 0
    while True:
        added = False
        for k in ((n, -n) if n else (0,)):
            term = monomial((-1) ** (k % 2), M * k * (k - 1) // 2) * x ** k
            if term.q_exp < order:
                total = total + QSeries.from_monomial(term, order)
                added = True
        if not added and n > 2:
            break
        n += 1
    return total


@pytest.mark.parametrize("x,M", [(X, 1), (X, 3), (monomial(-1, 1), 2), (monomial(1, 1, x=1), 5)])
def test_triple_product_matches_bilateral_sum(x, M):
    order = 40
    assert j_theta(x, M, order).eq_up_to(triple_product_sum(x, M, order), order)[0]


@pytest.mark.parametrize("n", [-2, -1, 0, 1, 2])
@pytest.mark.parametrize("M", [1, 3])
def test_quasi_periodicity(n, M):
    order = 30
    lhs = j_theta(monomial(1, M * n, x=1), M, order + 20)
    pref = monomial((-1) ** (n % 2), -M * n * (n - 1) // 2) * X ** (-n)
    rhs = j_theta(X, M, order + 20).times_monomial(pref)
    assert lhs.eq_up_to(rhs, order)[0]


def test_quasi_periodicity_worked_instance():
    # j(q^4 x; q^3) = -q^-1 x^-1 j(q x; q^3)
    lhs = j_theta(monomial(1, 4, x=1), 3, 40)
    rhs = j_theta(monomial(1, 1, x=1), 3, 41).times_monomial(monomial(-1, -1, x=-1))
    assert lhs.eq_up_to(rhs, 35)[0]


def test_reflection():
    order = 30
    a = j_theta(X, 1, order)
    b = j_theta(monomial(1, 1, x=-1), 1, order)
    c = j_theta(X.inverse(), 1, order + 1).times_monomial(monomial(-1, 0, x=1))
    assert a.eq_up_to(b, order)[0]
    assert a.eq_up_to(c, order)[0]


def test_named_theta_quotients():
    n = 40
    assert series_to_list(Jm(1, n), n) == euler_product(n)
    # J_{1,2} = (q;q)^2/(q^2;q^2)
    lhs = J(1, 2, n) * poch_infinite(monomial(1, 2), 2, n)
    rhs = poch_infinite(monomial(1, 1), 1, n) ** 2
    assert lhs.eq_up_to(rhs, n)[0]
    # Jbar_{1,2} = (q^2;q^2)^5 / ((q;q)^2 (q^4;q^4)^2)
    lhs = Jbar(1, 2, n) * poch_infinite(monomial(1, 1), 1, n) ** 2 * poch_infinite(monomial(1, 4), 4, n) ** 2
    rhs = poch_infinite(monomial(1, 2), 2, n) ** 5
    assert lhs.eq_up_to(rhs, n)[0]


def test_distinct_parts_generating_function():
    n = 50
    assert series_to_list(poch_infinite(monomial(-1, 1), 1, n), n) == distinct_partitions(n)


def test_finite_tends_to_infinite():
    n = 30
    fin = poch_finite(monomial(1, 1), 1, n, n)
    assert fin.eq_up_to(poch_infinite(monomial(1, 1), 1, n), n)[0]
    assert poch_finite(X, 1, 0).eq_up_to(QSeries.one(), 10)[0]


def test_multi_product_is_product():
    n = 30
    args = [monomial(1, 1), monomial(-1, 2)]
    prod = poch_infinite(args[0], 3, n) * poch_infinite(args[1], 3, n)
    assert poch_infinite_multi(args, 3, n).eq_up_to(prod, n)[0]


def test_divergent_product_rejected():
    with pytest.raises(DivergentProduct):
        poch_infinite(monomial(1, -1), 1, 10)
    with pytest.raises(ValueError):
        poch_infinite(monomial(1, 0, x=1), 0, 10)
