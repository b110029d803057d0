"""Hypothesis property checks and exhaustive group-law checks."""

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from genus2descent.arith import is_square_in_qp, legendre, squarefree_part
from genus2descent.counting import ZetaData, good_primes, within_weil_interval, zeta_data
from genus2descent.descent import closure, run_descent
from genus2descent.family import admissible_up_to, specialize
from genus2descent.fields import prime_field
from genus2descent.jacobian import jacobian_of
from genus2descent.poly import Poly, determinant, qpoly, resultant, sylvester_matrix

PRIMES_13 = [2, 3, 5, 7, 11, 13]


def brute_square_in_qp(D: int, p: int) -> bool:
    # x^2 = D mod p^(v+3) is solvable iff D is a square in Q_p
    v = 0
    while D % p == 0:
        D //= p
        v += 1
    N = p ** (v + 3)
    target = (D * p**v) % N
    return any(x * x % N == target for x in range(N))


@pytest.mark.parametrize("p", PRIMES_13)
def test_square_in_qp_against_brute_force(p):
    for D in range(-30, 31):
        if D:
            assert is_square_in_qp(D, p) == brute_square_in_qp(D, p), (D, p)


@pytest.mark.parametrize("p", PRIMES_13[1:])
def test_legendre_against_enumeration(p):
    squares = {x * x % p for x in range(1, p)}
    for a in range(-30, 31):
        expected = 0 if a % p == 0 else 1 if a % p in squares else -1
        assert legendre(a, p) == expected


def test_squarefree_against_factorization():
    for D in range(-30, 31):
        if D:
            s = D // abs(D)
            for q, e in sympy.factorint(abs(D)).items():
                s *= q ** (e % 2)
            assert squarefree_part(D) == s


@given(st.integers(-10**6, 10**6).filter(bool), st.integers(1, 1000))
def test_squarefree_ignores_squares(a, b):
    assert squarefree_part(a * b * b) == squarefree_part(a)
    assert squarefree_part(Fraction(a, b * b)) == squarefree_part(a)


@given(st.lists(st.sampled_from([-1, 2, 3, 5, 7, 11, 13]), max_size=5))
def test_closure_is_a_group(gens):
    g = closure(gens)
    assert 1 in g
    for a in g:
        for b in g:
            assert squarefree_part(a * b) in g
    assert len(g) & (len(g) - 1) == 0


coeffs = st.lists(st.fractions(min_value=-20, max_value=20, max_denominator=6), min_size=1, max_size=5)


@given(coeffs, coeffs)
def test_poly_division_identity(a, b):
    f, g = qpoly(a), qpoly(b)
    if not g:
        return
    q, r = divmod(f, g)
    assert q * g + r == f
    assert r.deg < g.deg


@settings(max_examples=60)
@given(coeffs, coeffs)
def test_resultant_oracle(a, b):
    f, g = qpoly(a), qpoly(b)
    if f.deg < 1 or g.deg < 1:
        return
    assert resultant(f, g) == determinant(sylvester_matrix(f, g))


def addition_table(jac):
    elems = jac.elements()
    index = {e: i for i, e in enumerate(elems)}
    table = [[index[a + b] for b in elems] for a in elems]
    neg = [index[-a] for a in elems]
    return elems, index, table, neg


@pytest.mark.parametrize("curve,p", [("C", 3), ("C", 5), ("C'", 7)])
def test_group_laws_exhaustive(curve, p):
    pair = specialize(0)
    c = pair.C if curve == "C" else pair.Cprime
    elems, index, T, neg = addition_table(jacobian_of(c).reduce(p))
    n = len(elems)
    e = index[elems[0].jac.identity]
    for a in range(n):
        assert T[a][e] == a and T[e][a] == a
        assert T[a][neg[a]] == e
        row = T[a]
        for b in range(n):
            assert row[b] == T[b][a]
            tab = T[row[b]]
            for c_ in range(n):
                assert tab[c_] == row[T[b][c_]]
        assert sorted(row) == list(range(n))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(admissible_up_to(30)), st.sampled_from([p for p in range(3, 200) if sympy.isprime(p)]))
def test_zeta_invariants(n, p):
    pair = specialize(n)
    for curve in (pair.C, pair.Cprime):
        if p in curve.bad_primes():
            return
        try:
            z = zeta_data(curve, p)
        except ValueError:
            return
        assert z.a1 * z.a1 <= 16 * p
        assert z.jacobian_order == (z.N1 * z.N1 + z.N2) // 2 - p
        assert within_weil_interval(z.jacobian_order, p)
        assert z.jacobian_order % 2 == 0
    assert zeta_data(pair.C, p).jacobian_order == zeta_data(pair.Cprime, p).jacobian_order


@pytest.mark.parametrize("n", admissible_up_to(30))
def test_filter_soundness(n):
    state, rank = run_descent(specialize(n))
    for b in (state.boundsI, state.boundsIprime):
        assert b.lower <= b.upper
        assert closure(b.lower) == b.lower
    excluded = {(e.side, e.D) for e in state.log if e.action == "exclude"}
    certified = {(e.side, e.D) for e in state.log if e.action == "certify"}
    assert not excluded & certified
    assert len(state.boundsI.lower) * len(state.boundsIprime.lower) >= 4
