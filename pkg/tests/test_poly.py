from fractions import Fraction

import pytest
import sympy

from genus2descent.fields import QQ, prime_field
from genus2descent.poly import (
    Poly,
    clear_denominators,
    conjugate_quadratic_split,
    determinant,
    discriminant,
    factor_mod_p,
    factor_over_q,
    factor_over_quadratic,
    format_poly,
    gcd,
    is_constant_times_square,
    pairing_cubic,
    qpoly,
    quadratic_splits,
    rational_roots,
    reduce_mod_p,
    resultant,
    squarefree_decomposition,
    sylvester_matrix,
    xgcd,
)

X = sympy.Symbol("X")


def to_sympy(f):
    return sum(sympy.Rational(c.numerator, c.denominator) * X**i for i, c in enumerate(f.c))


F2 = qpoly([-4, 4, 1])
F4 = qpoly([-13, 14, -9, 20, 4])


def test_basic_arithmetic():
    f = qpoly([1, 2, 3])
    g = qpoly([0, 1])
    assert f.deg == 2 and f.lc == 3
    assert list((f * g).c) == [0, 1, 2, 3]
    assert f - f == Poly(QQ)
    assert Poly(QQ).deg == -1
    q, r = divmod(f, qpoly([1, 1]))
    assert q * qpoly([1, 1]) + r == f
    assert f(2) == 17
    assert f.compose(qpoly([0, 2])) == qpoly([1, 4, 12])
    assert f.derivative() == qpoly([2, 6])
    with pytest.raises(ArithmeticError):
        f.exact_div(qpoly([1, 1]))


def test_format():
    assert format_poly(F2) == "X^2 + 4X - 4"
    assert format_poly(qpoly([Fraction(-1, 2), 0, -1])) == "-X^2 - 1/2"


def test_gcd_xgcd():
    a = qpoly([1, 1]) * qpoly([2, 0, 1])
    b = qpoly([1, 1]) * qpoly([3, 1])
    assert gcd(a, b) == qpoly([1, 1])
    d, s, t = xgcd(a, b)
    assert s * a + t * b == d


@pytest.mark.parametrize(
    "f,g",
    [(F2, F4), (qpoly([1, 0, 1]), qpoly([-1, 0, 0, 1])), (qpoly([3, -2, 0, 7]), qpoly([Fraction(1, 3), 5, 2]))],
)
def test_resultant_matches_sylvester(f, g):
    assert resultant(f, g) == determinant(sylvester_matrix(f, g))
    assert resultant(f, g) == sympy.resultant(to_sympy(f), to_sympy(g), X)


def test_discriminants_against_sympy():
    for f in (F2, F4, F2 * F4, qpoly([-2087, 0, 3, 1])):
        assert discriminant(f) == sympy.discriminant(to_sympy(f), X)
    assert discriminant(F4) == 2**12 * 11**2 * -2087


def test_reduce_and_clear():
    F = prime_field(5)
    assert reduce_mod_p(F4, 5) == Poly(F, [2, 4, 1, 0, 4])
    assert reduce_mod_p(qpoly([Fraction(1, 2), 1]), 3) == Poly(prime_field(3), [2, 1])
    with pytest.raises(ZeroDivisionError):
        reduce_mod_p(qpoly([Fraction(1, 3)]), 3)
    m, ints = clear_denominators(qpoly([Fraction(1, 2), Fraction(3, 4)]))
    assert ints == [2, 3] and m == 4


def test_squarefree_decomposition_mod_p():
    F = prime_field(5)
    a, b = Poly(F, [1, 1]), Poly(F, [2, 0, 1])
    f = a * a * a * b
    dec = squarefree_decomposition(f)
    prod = Poly(F, [1])
    for g, e in dec:
        prod = prod * g**e
    assert prod == f.monic()
    assert dict((e, g) for g, e in dec)[3] == a


def test_squarefree_decomposition_pth_powers():
    F = prime_field(3)
    f = Poly(F, [1, 1]) ** 3 * Poly(F, [0, 1]) ** 2
    dec = squarefree_decomposition(f)
    assert sorted(e for _, e in dec) == [2, 3]


def test_constant_times_square_brute_force():
    for p in (3, 5, 7):
        F = prime_field(p)
        elems = list(F.elements())
        squares = set()
        for c in elems[1:]:
            for a in elems:
                for b in elems:
                    squares.add(Poly(F, [c * b * b, c * 2 * a * b, c * a * a]))
                    squares.add(Poly(F, [c * a * a]))
        for c0 in elems:
            for c1 in elems:
                for c2 in elems[1:]:
                    f = Poly(F, [c0, c1, c2])
                    assert is_constant_times_square(f) == (f in squares)


def test_rational_roots():
    assert rational_roots(qpoly([-2, 1]) * qpoly([1, 3]) * qpoly([1, 0, 1])) == [Fraction(-1, 3), Fraction(2)]


def test_pairing_cubic_has_the_known_root():
    # the split over Q(sqrt 22) has linear coefficient 5/2 +- sqrt(22)/2, so s = (1/2)^2
    h = pairing_cubic(F4, 22)
    assert h(Fraction(1, 4)) == 0
    assert rational_roots(h) == [Fraction(1, 4)]


def test_conjugate_quadratic_split_n0():
    (g, gbar), = conjugate_quadratic_split(F4, 22)
    assert (g * gbar).change_field(g.field) == F4.monic().change_field(g.field)
    assert g.coeff(1).b in (Fraction(1, 2), Fraction(-1, 2))
    assert conjugate_quadratic_split(F4, 11) == []
    with pytest.raises(ValueError):
        conjugate_quadratic_split(F4, 1)


def test_conjugate_quadratic_split_other():
    assert conjugate_quadratic_split(qpoly([1, 0, 0, 0, 1]), -1)
    assert conjugate_quadratic_split(qpoly([-2, 0, 1]) * qpoly([-3, 0, 1]), 2) == []
    assert conjugate_quadratic_split(qpoly([-2, 0, 1]) * qpoly([-3, 0, 1]), 6) == []
    f = qpoly([-1, -2, 1]) * qpoly([-1, 2, 1])
    splits = conjugate_quadratic_split(f, 2)
    # roots 1 +- sqrt 2, -1 +- sqrt 2 pair up in two ways
    assert len(splits) == 2
    for g, gbar in splits:
        assert g * gbar == f.change_field(g.field)


def test_quadratic_splits_lists_the_rational_one():
    f = qpoly([-2, 0, 1]) * qpoly([1, 1, 1])
    Ds = {D for D, _, _ in quadratic_splits(f)}
    assert 1 in Ds


def test_factorizations():
    fs = factor_over_q(F2, F4)
    assert sorted(f.deg for f in fs) == [2, 4]
    lin = factor_over_quadratic(2, F2)
    assert [f.deg for f in lin] == [1, 1]
    quads = factor_over_quadratic(22, F4)
    assert sorted(f.deg for f in quads) == [2, 2]


def test_factor_mod_p_against_sympy():
    for p in (3, 5, 7, 13):
        g = reduce_mod_p(F2 * F4, p)
        mine = sorted(f.deg for f in factor_mod_p(g))
        theirs = sorted(
            sympy.degree(fac, X) for fac, e in sympy.factor_list(to_sympy(F2 * F4), modulus=p)[1] for _ in range(e)
        )
        assert mine == theirs
