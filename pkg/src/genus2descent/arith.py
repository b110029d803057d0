"""Integer and rational number theory: primality, factoring, square classes and
local square tests.

Factoring uses trial division by primes below 10**4 followed by Pollard-Brent.
Primality is a Miller-Rabin test with the first thirteen prime bases, which is
deterministic for n < 3.3 * 10**24; every integer that occurs for the curve
family (well below 10**20) is inside that range.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterator, Tuple, Union

RationalLike = Union[int, Fraction]

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_TRIAL_BOUND = 10_000


def _sieve(bound: int) -> Tuple[int, ...]:
    flags = bytearray([1]) * (bound + 1)
    flags[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(bound) + 1):
        if flags[i]:
            flags[i * i :: i] = bytearray(len(flags[i * i :: i]))
    return tuple(i for i, f in enumerate(flags) if f)


SMALL_PRIMES = _sieve(_TRIAL_BOUND)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 3.3e24."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_up_to(bound: int) -> Iterator[int]:
    if bound <= _TRIAL_BOUND:
        yield from (p for p in SMALL_PRIMES if p <= bound)
        return
    yield from SMALL_PRIMES
    for n in range(_TRIAL_BOUND + 1, bound + 1, 2):
        if is_prime(n):
            yield n


def _pollard_brent(n: int) -> int:
    # fixed seed: factorizations are reproducible run to run
    rng = random.Random(n)
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


@lru_cache(maxsize=4096)
def _factor_positive(n: int) -> Tuple[Tuple[int, int], ...]:
    out: Dict[int, int] = {}
    for p in SMALL_PRIMES:
        if p * p > n:
            break
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        d = _pollard_brent(m)
        stack.extend((d, m // d))
    return tuple(sorted(out.items()))


def factorint(n: int) -> Dict[int, int]:
    """Prime factorization of |n| as {prime: exponent}; factorint(1) == {}."""
    if n == 0:
        raise ValueError("cannot factor 0")
    return dict(_factor_positive(abs(n)))


def divisors(n: int) -> list:
    """Positive divisors of |n|, sorted."""
    divs = [1]
    for p, e in factorint(n).items():
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def prime_support(n: RationalLike) -> set:
    q = Fraction(n)
    if q == 0:
        raise ValueError("zero has no prime support")
    return set(factorint(q.numerator)) | set(factorint(q.denominator))


def valuation(n: RationalLike, p: int) -> int:
    q = Fraction(n)
    if q == 0:
        raise ValueError("valuation of zero")
    v, num, den = 0, q.numerator, q.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def squarefree_part(q: RationalLike) -> int:
    """The square-free integer s with q/s a nonzero rational square."""
    q = Fraction(q)
    if q == 0:
        raise ValueError("squarefree_part of zero")
    s = 1 if q > 0 else -1
    for p, e in factorint(q.numerator * q.denominator).items():
        if e % 2:
            s *= p
    return s


def is_squarefree(n: int) -> bool:
    return n != 0 and all(e == 1 for e in factorint(n).values())


def rational_sqrt(q: RationalLike):
    """Exact square root of a non-negative rational, or None."""
    q = Fraction(q)
    if q < 0:
        return None
    a, b = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if a * a == q.numerator and b * b == q.denominator:
        return Fraction(a, b)
    return None


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) for an odd prime p, by Euler's criterion."""
    if p < 3 or p % 2 == 0 or not is_prime(p):
        raise ValueError(f"{p} is not an odd prime")
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def is_square_in_qp(D: RationalLike, p: int) -> bool:
    """Whether D is a square in Q_p."""
    D = Fraction(D)
    if D == 0:
        raise ValueError("zero is not a unit")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    v = valuation(D, p)
    if v % 2:
        return False
    unit = D / Fraction(p) ** v
    if p == 2:
        # odd numerator and denominator; den**2 = 1 mod 8
        return unit.numerator * unit.denominator % 8 == 1
    return legendre(unit.numerator * unit.denominator, p) == 1


def local_square_class(D: RationalLike, p) -> tuple:
    """A hashable key for the image of D in Q_p*/Q_p*^2 (p = 'inf' for R)."""
    D = Fraction(D)
    if p == "inf":
        return (D > 0,)
    v = valuation(D, p)
    unit = D / Fraction(p) ** v
    u = unit.numerator * unit.denominator
    if p == 2:
        return (v % 2, u % 8)
    return (v % 2, legendre(u, p))


def local_cap(p) -> int:
    """Upper bound on |image of I| * |image of I'| in the local square group over Q."""
    if p == "inf":
        return 2
    return 8 if p == 2 else 4


SPLIT, INERT, RAMIFIED = "split", "inert", "ramified"


def prime_splitting(p: int, l: int) -> str:
    """Decomposition of the prime p in Q(sqrt(l)), l a prime congruent to 1 mod 4."""
    if not is_prime(l) or l % 4 != 1:
        raise ValueError(f"{l} is not a prime congruent to 1 mod 4")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p == l:
        return RAMIFIED
    if p == 2:
        return INERT if l % 8 == 5 else SPLIT
    return INERT if legendre(l, p) == -1 else SPLIT


def smallest_nonresidue(p: int) -> int:
    for a in range(2, p):
        if legendre(a, p) == -1:
            return a
    raise ValueError(f"no quadratic non-residue modulo {p}")


def sqrt_mod(a: int, p: int):
    """A square root of a modulo the odd prime p (Tonelli-Shanks), or None."""
    a %= p
    if a == 0:
        return 0
    if legendre(a, p) != 1:
        return None
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = smallest_nonresidue(p)
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return min(r, p - r)


def is_power_of_two(n: int) -> bool:
    return n > 0 and n & (n - 1) == 0
