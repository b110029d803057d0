from fractions import Fraction

import pytest

from genus2descent.family import specialize
from genus2descent.quadrank import (
    LCandidate,
    TorsionUndecided,
    candidate_for,
    check_l_conditions,
    decide_rank_over_L,
    m_grid,
    m_search,
    table_rows,
    torsion_over_L,
    x_of_m,
)


def test_l_conditions():
    assert check_l_conditions(0, 13)
    c = check_l_conditions(0, 17)
    assert not c and any("2 splits" in d for d in c.diagnostics)
    assert check_l_conditions(9, 157)
    assert not check_l_conditions(0, 15)
    assert not check_l_conditions(0, 7)


def test_x_of_m_and_duplicates():
    assert x_of_m(0) == 0
    assert x_of_m(-3) == Fraction(12, 25)
    for m in (Fraction(2), Fraction(-3), Fraction(-1, 3)):
        assert x_of_m(m) == x_of_m(1 / (2 * m))


def test_m_grid():
    g = m_grid(2, 2)
    assert g == sorted({Fraction(a, b) for a in range(-2, 3) for b in (1, 2)})


def test_f2_is_minus_a_square_on_the_parametrization():
    F2 = specialize(0).C.F2
    for m in m_grid(6, 6):
        x = x_of_m(m)
        assert F2(x) == -((2 * (2 * m * m - 1)) / (2 * m * m - 2 * m + 1)) ** 2


def test_m_search_rows():
    rows = m_search(0)
    assert [(c.l, c.m) for c in table_rows(rows)] == [(13, 0), (47269, -3), (71341, 2)]
    c = table_rows(rows)[1]
    assert (c.x, c.y_coeff) == (Fraction(12, 25), Fraction(238, 15625))
    for c in rows:
        F = specialize(0).C
        assert F.f(c.x) == c.y_coeff**2 * c.l
        assert c.l % 8 == 5


def test_m_search_n6():
    (c,) = table_rows(m_search(6))
    assert (c.l, c.m, c.x, c.y_coeff) == (658069, Fraction(-1, 3), Fraction(12, 17), Fraction(14, 4913))


def test_parallel_search_is_identical(monkeypatch):
    serial = m_search(9)
    monkeypatch.setenv("GENUS2DESCENT_WORKERS", "2")
    assert m_search(9) == serial


def test_torsion_over_L():
    t = torsion_over_L(0, 13)
    assert t.decided and t.order == 2
    assert t.primes == (3, 17) and t.orders == (36, 400) and t.gcd == 4
    t = torsion_over_L(0, 47269)
    assert (t.table_p, t.table_order, t.gcd) == (5, 62, 2)
    t = torsion_over_L(9, 679741)
    assert (t.table_p, t.table_order, t.gcd) == (5, 28, 4)
    with pytest.raises(ValueError):
        torsion_over_L(0, 17)


def test_torsion_undecided_with_tiny_bound():
    t = torsion_over_L(0, 13, prime_bound=13)
    assert not t.decided
    c = candidate_for(0, 13, 0)
    with pytest.raises(TorsionUndecided):
        decide_rank_over_L(0, 13, c, t)


def test_decide_rank():
    c = candidate_for(0, 13, 0)
    res = decide_rank_over_L(0, 13, c)
    assert res.rank == 4 and res.conclusive
    with pytest.raises(ValueError):
        candidate_for(0, 13, 2)
