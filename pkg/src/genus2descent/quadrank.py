"""Rank of J over real quadratic fields L = Q(sqrt l).

For admissible n and l prime with 2 and r inert in L, the rank over L is 2 or 4,
and it is 4 exactly when J(L) has a point no multiple of which is defined over
Q.  Candidate points come from the parametrization

    x = -4m / (2m^2 - 2m + 1),   x^2 + 4x - 4 = -(2(2m^2 - 1) / (2m^2 - 2m + 1))^2,

so that -F4(x) = l * square gives the point (x, y sqrt l) on Y^2 = F2 F4.
The torsion of J(L) is bounded by reducing at primes split in L.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import List, Optional, Sequence, Tuple

from .arith import INERT, SPLIT, is_power_of_two, is_prime, prime_splitting, squarefree_part
from .counting import BadReductionError, jacobian_order
from .family import admissible, family_r, specialize
from .fields import QQ, quadratic_field
from .jacobian import jacobian_of, rational_two_torsion

WORKERS_ENV = "GENUS2DESCENT_WORKERS"
SIX_DIGITS = 999_999


@dataclass(frozen=True)
class LCandidate:
    n: int
    l: int
    m: Fraction
    x: Fraction
    y_coeff: Fraction

    def point_text(self) -> str:
        return f"[({self.x}, {self.y_coeff}*sqrt({self.l})) - inf+]"

    def as_dict(self) -> dict:
        return {"l": self.l, "m": str(self.m), "x": str(self.x), "y_coeff": str(self.y_coeff), "point": self.point_text()}


@dataclass(frozen=True)
class LConditions:
    ok: bool
    diagnostics: Tuple[str, ...]

    def __bool__(self):
        return self.ok


def check_l_conditions(n: int, l: int) -> LConditions:
    """l prime with 2 and r inert in Q(sqrt l)."""
    diag = []
    if not is_prime(l):
        return LConditions(False, (f"l={l} is not prime",))
    if l % 4 != 1:
        return LConditions(False, (f"l={l} is not 1 mod 4",))
    diag.append(f"l={l} is 1 mod 4")
    ok = True
    if prime_splitting(2, l) == INERT:
        diag.append(f"l={l} is 5 mod 8, 2 inert")
    else:
        ok = False
        diag.append(f"l={l} is {l % 8} mod 8, 2 splits")
    r = abs(family_r(n))
    s = prime_splitting(r, l)
    if s == INERT:
        diag.append(f"r={family_r(n)} inert")
    else:
        ok = False
        diag.append(f"r={family_r(n)} {s}")
    return LConditions(ok, tuple(diag))


def x_of_m(m: Fraction) -> Fraction:
    m = Fraction(m)
    return -4 * m / (2 * m * m - 2 * m + 1)


def m_grid(num_bound: int, den_bound: int) -> List[Fraction]:
    out = set()
    for b in range(1, den_bound + 1):
        for a in range(-num_bound, num_bound + 1):
            if math.gcd(a, b) == 1:
                out.add(Fraction(a, b))
    return sorted(out)


def _candidate_at(args) -> Optional[LCandidate]:
    n, m, l_bound = args
    pair = specialize(n, force=True)
    F2, F4 = pair.C.F2, pair.C.F4
    x = x_of_m(m)
    v4 = -F4(x)
    if v4 <= 0:
        return None
    l = squarefree_part(v4)
    if l > l_bound or not is_prime(l) or not check_l_conditions(n, l):
        return None
    y2 = F2(x) * F4(x) / l
    y = QQ.sqrt(y2)
    if y is None:
        raise ArithmeticError(f"F2 F4 at x={x} is not l times a square")
    return LCandidate(n, l, Fraction(m), x, abs(y))


def _workers() -> int:
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


def m_search(n: int, num_bound: int = 10, den_bound: int = 10, l_bound: int = SIX_DIGITS) -> List[LCandidate]:
    """Every reduced m = a/b in the box giving a prime l <= l_bound, sorted by (l, m)."""
    if not admissible(n):
        raise ValueError(f"n = {n} is not admissible")
    jobs = [(n, m, l_bound) for m in m_grid(num_bound, den_bound)]
    workers = _workers()
    if workers > 1 and len(jobs) > 64:
        with ProcessPoolExecutor(workers) as ex:
            found = list(ex.map(_candidate_at, jobs, chunksize=32))
    else:
        found = [_candidate_at(j) for j in jobs]
    return sorted((c for c in found if c), key=lambda c: (c.l, c.m))


def _height(m: Fraction) -> Tuple[int, int]:
    return (abs(m.numerator) + m.denominator, m.denominator)


def table_rows(cands: Sequence[LCandidate]) -> List[LCandidate]:
    """One candidate per l: m and 1/(2m) give the same x, keep the smaller m."""
    best = {}
    for c in cands:
        if c.l not in best or _height(c.m) < _height(best[c.l].m):
            best[c.l] = c
    return [best[l] for l in sorted(best)]


@dataclass(frozen=True)
class TorsionResult:
    decided: bool
    order: Optional[int]
    primes: Tuple[int, ...]
    orders: Tuple[int, ...]
    gcd: Optional[int]
    table_p: Optional[int]
    table_order: Optional[int]
    diagnostics: Tuple[str, ...]

    def as_dict(self) -> dict:
        return {
            "decided": self.decided,
            "order": self.order,
            "primes": list(self.primes),
            "orders": list(self.orders),
            "gcd": self.gcd,
            "p": self.table_p,
            "jacobian_order_p": self.table_order,
            "diagnostics": list(self.diagnostics),
        }


def _split_good_primes(curve, l: int, bound: int):
    bad = curve.bad_primes()
    for p in range(3, bound + 1):
        if is_prime(p) and p not in bad and p != l and prime_splitting(p, l) == SPLIT:
            yield p


def torsion_over_L(n: int, l: int, prime_bound: int = 100) -> TorsionResult:
    """Show J(L)_tors = {0, P0}: the gcd of |J(F_p)| over two primes split in L is
    a power of 2, P0 is the only rational two-torsion class over L, and P0 is
    not twice a point because lambda'(P0) = [r] is not a square in L."""
    if not check_l_conditions(n, l):
        raise ValueError(f"l = {l} fails the conditions for n = {n}")
    pair = specialize(n)
    C = pair.C
    diag: List[str] = []
    primes, orders = [], []
    first = 3 if n % 3 == 0 else None
    if first is not None and (3 in C.bad_primes() or prime_splitting(3, l) != SPLIT):
        diag.append("3 is bad or not split in L")
        first = None
    pool = list(_split_good_primes(C, l, prime_bound))
    if first is not None:
        primes.append(3)
        orders.append(jacobian_order(C, 3).jacobian_order)
    table_p = table_order = None
    g = None
    for p in pool:
        if p == first:
            continue
        try:
            N = jacobian_order(C, p).jacobian_order
        except BadReductionError:
            continue
        if first is None and not primes:
            primes.append(p)
            orders.append(N)
            continue
        if table_p is None and N % 3 and first == 3:
            table_p, table_order = p, N
        if is_power_of_two(math.gcd(orders[0], N)):
            primes.append(p)
            orders.append(N)
            break
    if len(primes) == 2:
        g = reduce(math.gcd, orders)
    if g is None or not is_power_of_two(g):
        diag.append(f"no pair of split primes up to {prime_bound} with 2-power gcd")
        return TorsionResult(False, None, tuple(primes), tuple(orders), g, table_p, table_order, tuple(diag))
    if table_p is None:
        table_p, table_order = primes[1], orders[1]
    diag.append(f"gcd(|J(F_{primes[0]})|, |J(F_{primes[1]})|) = gcd({orders[0]}, {orders[1]}) = {g}")

    L = quadratic_field(l)
    jac = jacobian_of(C, L)
    P0 = jac.weierstrass_class(C.F2)
    tors2 = rational_two_torsion(jac)
    if tors2 != [P0]:
        diag.append(f"{len(tors2)} two-torsion classes over L")
        return TorsionResult(False, None, tuple(primes), tuple(orders), g, table_p, table_order, tuple(diag))
    diag.append("P0 is the only nonzero two-torsion class over L")
    r = family_r(n)
    if r < 0:
        diag.append(f"r={r} < 0 is not a square in the real field L")
    elif prime_splitting(r, l) == INERT:
        diag.append(f"r={r} inert in L, not a square")
    else:
        diag.append(f"cannot rule out a point of order 4")
        return TorsionResult(False, None, tuple(primes), tuple(orders), g, table_p, table_order, tuple(diag))
    return TorsionResult(True, 2, tuple(primes), tuple(orders), g, table_p, table_order, tuple(diag))


@dataclass(frozen=True)
class LRankResult:
    n: int
    l: int
    rank: int
    conclusive: bool
    candidate: LCandidate
    torsion: TorsionResult
    difference: str

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "l": self.l,
            "rank": self.rank,
            "conclusive": self.conclusive,
            "candidate": self.candidate.as_dict(),
            "torsion": self.torsion.as_dict(),
            "difference": self.difference,
        }


class TorsionUndecided(RuntimeError):
    pass


def candidate_for(n: int, l: int, m) -> LCandidate:
    c = _candidate_at((n, Fraction(m), 10**30))
    if c is None or c.l != l:
        got = None if c is None else c.l
        raise ValueError(f"m = {m} gives l = {got}, not {l}")
    return c


def decide_rank_over_L(n: int, l: int, candidate: LCandidate, torsion: Optional[TorsionResult] = None) -> LRankResult:
    """4 if P - sigma(P) is outside {0, P0}, otherwise 2 (inconclusive)."""
    torsion = torsion or torsion_over_L(n, l)
    if not torsion.decided:
        raise TorsionUndecided("; ".join(torsion.diagnostics))
    C = specialize(n).C
    L = quadratic_field(l)
    jac = jacobian_of(C, L)
    P = jac.point(candidate.x, L(0, candidate.y_coeff))
    T = P - jac.galois_conjugate(P)
    P0 = jac.weierstrass_class(C.F2)
    conclusive = not (T.is_identity() or T == P0)
    return LRankResult(n, l, 4 if conclusive else 2, conclusive, candidate, torsion, T.describe())
