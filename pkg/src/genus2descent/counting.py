"""Point counts of genus-2 curves over F_p and F_{p^2}, zeta data, and the gcd
torsion bound.

Counts are vectorized with numpy in int64; all intermediate products stay
below p^2 * g < 2^63 for the supported range p < 2^20 (F_p) and p < 3037000
(F_{p^2}, by rows).  The quadratic character of F_{p^2} is computed as the
Legendre symbol of the norm, which agrees with z^((p^2-1)/2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .arith import is_power_of_two, is_prime, smallest_nonresidue
from .poly import Poly

MAX_PRIME = 1 << 20


class BadReductionError(ValueError):
    pass


def _coeffs_mod_p(f: Poly, p: int) -> List[int]:
    out = []
    for a in f.c:
        a = Fraction(a)
        if a.denominator % p == 0:
            raise BadReductionError(f"coefficient {a} is not integral at {p}")
        out.append(a.numerator * pow(a.denominator, -1, p) % p)
    return out


def _model(curve) -> Poly:
    return curve.f if hasattr(curve, "f") else curve


def _check_good(curve, p: int) -> List[int]:
    if p == 2 or not is_prime(p):
        raise BadReductionError(f"{p} is not an odd prime")
    if p > MAX_PRIME:
        raise ValueError(f"p = {p} is above the supported range")
    bad = curve.bad_primes() if hasattr(curve, "bad_primes") else set()
    if p in bad:
        raise BadReductionError(f"{p} is a prime of bad reduction")
    c = _coeffs_mod_p(_model(curve), p)
    if len(c) != 7 or c[6] == 0:
        raise BadReductionError(f"the sextic model degenerates mod {p}")
    return c


def _square_table(p: int) -> np.ndarray:
    """chi[a] for a in [0, p): 1 for nonzero squares, -1 for non-squares, 0 at 0."""
    chi = -np.ones(p, dtype=np.int64)
    xs = np.arange(1, p, dtype=np.int64)
    chi[(xs * xs) % p] = 1
    chi[0] = 0
    return chi


def count_points_fp(curve, p: int) -> int:
    """#C(F_p) for the smooth model of Y^2 = f(X), f of degree 6."""
    c = _check_good(curve, p)
    chi = _square_table(p)
    xs = np.arange(p, dtype=np.int64)
    acc = np.zeros(p, dtype=np.int64)
    for a in reversed(c):
        acc = (acc * xs + a) % p
    affine = int(p + chi[acc].sum())
    return affine + (2 if chi[c[6]] == 1 else 0)


def count_points_fp2(curve, p: int) -> int:
    """#C(F_{p^2}); every element of F_p is a square in F_{p^2}, so both points at
    infinity are always counted."""
    c = _check_good(curve, p)
    if p > 3_037_000:
        raise ValueError(f"p = {p} is too large for F_(p^2) counting")
    g = smallest_nonresidue(p)
    chi = _square_table(p)
    xs = np.arange(p, dtype=np.int64)
    total = 0
    rows = max(1, min(p, (1 << 22) // p))
    for y0 in range(0, p, rows):
        ys = np.arange(y0, min(p, y0 + rows), dtype=np.int64)
        X = np.broadcast_to(xs, (len(ys), p))
        Y = np.broadcast_to(ys[:, None], (len(ys), p))
        ax = np.zeros((len(ys), p), dtype=np.int64)
        ay = np.zeros((len(ys), p), dtype=np.int64)
        for a in reversed(c):
            # (ax + ay t)(X + Y t) + a with t^2 = g
            nx = (ax * X + (g * ay % p) * Y + a) % p
            ny = (ax * Y + ay * X) % p
            ax, ay = nx, ny
        norm = (ax * ax - g * (ay * ay % p)) % p
        total += int(chi[norm].sum()) + norm.size
    return total + 2


def count_curve_points(curve, q: int) -> int:
    """#C(F_q) for q = p or q = p^2."""
    if is_prime(q):
        return count_points_fp(curve, q)
    p = math.isqrt(q)
    if p * p == q and is_prime(p):
        return count_points_fp2(curve, p)
    raise ValueError(f"{q} is neither a prime nor the square of a prime")


def within_weil_interval(n: int, p: int) -> bool:
    """(sqrt p - 1)^4 <= n <= (sqrt p + 1)^4, decided in integers.

    (sqrt p +- 1)^4 = A +- B sqrt p with A = p^2 + 6p + 1, B = 4p + 4.
    """
    A, B = p * p + 6 * p + 1, 4 * p + 4
    t = abs(n - A)
    return t * t <= B * B * p


@dataclass(frozen=True)
class ZetaData:
    p: int
    N1: int
    N2: int
    a1: int
    a2: int
    jacobian_order: int

    def __post_init__(self):
        p = self.p
        if self.a1 != self.N1 - (p + 1):
            raise ArithmeticError("a1 != N1 - (p + 1)")
        twice = self.N2 - (p * p + 1) + self.a1 * self.a1
        if twice % 2 or twice // 2 != self.a2:
            raise ArithmeticError(f"a2 is not an integer or inconsistent at p = {p}")
        if self.jacobian_order != p * p + 1 + (p + 1) * self.a1 + self.a2:
            raise ArithmeticError("jacobian order inconsistent with a1, a2")
        if self.a1 * self.a1 > 16 * p:
            raise ArithmeticError(f"|a1| > 4 sqrt(p) at p = {p}")
        if not within_weil_interval(self.jacobian_order, p):
            raise ArithmeticError(f"jacobian order outside the Weil interval at p = {p}")
        if self.jacobian_order != (self.N1 * self.N1 + self.N2) // 2 - p:
            raise ArithmeticError("jacobian order disagrees with (N1^2 + N2)/2 - p")

    @classmethod
    def from_counts(cls, p: int, N1: int, N2: int) -> "ZetaData":
        a1 = N1 - (p + 1)
        twice = N2 - (p * p + 1) + a1 * a1
        if twice % 2:
            raise ArithmeticError(f"N2 - p^2 - 1 + a1^2 is odd at p = {p}")
        a2 = twice // 2
        return cls(p, N1, N2, a1, a2, p * p + 1 + (p + 1) * a1 + a2)

    def as_dict(self) -> dict:
        return {
            "p": self.p,
            "N1": self.N1,
            "N2": self.N2,
            "a1": self.a1,
            "a2": self.a2,
            "jacobian_order": self.jacobian_order,
        }


def zeta_data(curve, p: int) -> ZetaData:
    return ZetaData.from_counts(p, count_points_fp(curve, p), count_points_fp2(curve, p))


def jacobian_order(curve, p: int) -> ZetaData:
    """Zeta data at a good prime p, including |J(F_p)|."""
    return zeta_data(curve, p)


@dataclass(frozen=True)
class TorsionWitness:
    ok: bool
    primes: Tuple[int, ...]
    orders: Tuple[int, ...]
    gcd: int
    witness: Optional[Tuple[int, ...]]


def torsion_is_2group(curve, primes: Sequence[int]) -> TorsionWitness:
    """Whether gcd of |J(F_p)| over the primes is a power of 2 (then the prime-to-p
    torsion over the base is a 2-group).  The witness is the first pair (or the
    single prime) already achieving a 2-power gcd."""
    primes = tuple(primes)
    if not primes:
        raise ValueError("need at least one prime")
    orders = tuple(jacobian_order(curve, p).jacobian_order for p in primes)
    g = reduce(math.gcd, orders)
    witness = None
    if len(primes) == 1:
        witness = primes if is_power_of_two(orders[0]) else None
    else:
        for i in range(len(primes)):
            for j in range(i + 1, len(primes)):
                if is_power_of_two(math.gcd(orders[i], orders[j])):
                    witness = (primes[i], primes[j])
                    break
            if witness:
                break
    return TorsionWitness(is_power_of_two(g), primes, orders, g, witness)


def good_primes(curve, bound: int, start: int = 3) -> Iterable[int]:
    bad = curve.bad_primes()
    lc = Fraction(_model(curve).lc)
    for p in range(max(3, start), bound + 1):
        if is_prime(p) and p not in bad and lc.numerator % p and lc.denominator % p:
            yield p
