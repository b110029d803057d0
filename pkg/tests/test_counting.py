import pytest

from genus2descent.counting import (
    BadReductionError,
    ZetaData,
    count_curve_points,
    count_points_fp,
    count_points_fp2,
    good_primes,
    jacobian_order,
    torsion_is_2group,
    within_weil_interval,
    zeta_data,
)
from genus2descent.family import specialize
from genus2descent.fields import quadratic_extension

C0 = specialize(0).C


def brute_fp(curve, p):
    f = curve.f
    n = 0
    for x in range(p):
        v = int(f(x).numerator * pow(f(x).denominator, -1, p)) % p
        n += 1 if v == 0 else 2 if pow(v, (p - 1) // 2, p) == 1 else 0
    lc = int(f.lc) % p
    return n + (2 if pow(lc, (p - 1) // 2, p) == 1 else 0)


def brute_fp2(curve, p):
    # Euler's criterion z^((p^2-1)/2) in F_(p^2)
    E = quadratic_extension(p)
    cs = [E(int(a.numerator * pow(a.denominator, -1, p))) for a in curve.f.c]
    e = (p * p - 1) // 2
    n = 0
    for z in E.elements():
        v = E(0)
        for c in reversed(cs):
            v = v * z + c
        n += 1 if not v else 2 if v**e == 1 else 0
    return n + 2


@pytest.mark.parametrize("p", [3, 5, 7, 13])
def test_counts_against_brute_force(p):
    assert count_points_fp(C0, p) == brute_fp(C0, p)
    assert count_points_fp2(C0, p) == brute_fp2(C0, p)


def test_count_curve_points_dispatch():
    assert count_curve_points(C0, 25) == count_points_fp2(C0, 5)
    with pytest.raises(ValueError):
        count_curve_points(C0, 12)


def test_bad_primes_rejected():
    for p in (2, 11, 2087):
        with pytest.raises(BadReductionError):
            count_points_fp(C0, p)
    with pytest.raises(BadReductionError):
        zeta_data(specialize(0).Cprime, 3)


@pytest.mark.parametrize(
    "n,p,order",
    [(0, 3, 36), (0, 5, 62), (0, 7, 56), (0, 13, 196), (0, 17, 400), (6, 3, 36), (6, 5, 62), (9, 3, 36), (9, 5, 28), (9, 11, 100)],
)
def test_jacobian_orders(n, p, order):
    assert jacobian_order(specialize(n).C, p).jacobian_order == order


def test_isogenous_jacobians_have_equal_orders():
    pair = specialize(0)
    for p in (5, 7, 13, 17, 19):
        assert jacobian_order(pair.C, p).jacobian_order == jacobian_order(pair.Cprime, p).jacobian_order


def test_zeta_data_validation():
    z = zeta_data(C0, 17)
    assert z == ZetaData.from_counts(17, z.N1, z.N2)
    with pytest.raises(ArithmeticError):
        ZetaData(17, z.N1, z.N2, z.a1 + 1, z.a2, z.jacobian_order)
    with pytest.raises(ArithmeticError):
        ZetaData.from_counts(17, z.N1, z.N2 + 1)


def test_weil_interval():
    # p = 3: (sqrt 3 -+ 1)^4 = 28 -+ 16 sqrt 3, about 0.287 and 55.71
    assert [n for n in range(60) if within_weil_interval(n, 3)] == list(range(1, 56))
    assert within_weil_interval(400, 17)


def test_torsion_witness():
    w = torsion_is_2group(C0, [3, 17])
    assert w.ok and w.gcd == 4 and w.orders == (36, 400) and w.witness == (3, 17)
    w = torsion_is_2group(C0, [3, 7])
    assert w.ok and w.gcd == 4
    assert torsion_is_2group(C0, [3, 13]).gcd == 4
    with pytest.raises(ValueError):
        torsion_is_2group(C0, [])


def test_good_primes():
    assert list(good_primes(C0, 20)) == [3, 5, 7, 13, 17, 19]
