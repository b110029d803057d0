"""Two-isogeny descent: bound the images I (from C) and I' (from C') in Q*/Q*^2
between certified subgroups and candidate sets, then read off the rank from

    2^(4 + r) = |I|^2 |I'|^2.

Square classes are signed square-free integers.  The engine alternates
positive certificates with necessary-condition filters until nothing changes:

certificates
  DiscF2        C(Q) nonempty and the roots of F2 generate Q(sqrt D)
  QuarticSplit  F4 = lc * g * conj(g) over Q(sqrt D) and sigma T = T + P0 for T = [g]
  SigmaShift    a searched point class P over Q(sqrt D) with sigma P = P + P0

filters
  bad-reduction  only primes of bad reduction (and 2) may divide D
  square-mod-p   at p with v_p(D) odd, F2 or F4 must be a constant times a square mod p
  real-signs     negative D are impossible under a sign pattern of F2, F4
  local-product  |image of I| * |image of I'| <= 4 at odd p, 8 at 2, 2 over R
  coset          x in I and l in lower(I) force x*l into upper(I)
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .arith import (
    factorint,
    local_cap,
    local_square_class,
    prime_support,
    squarefree_part,
    valuation,
)
from .family import CurvePair, GenusTwoCurve
from .fields import QQ, quadratic_field
from .jacobian import Jacobian, JacobianError, jacobian_of
from .poly import Poly, conjugate_quadratic_split, discriminant, is_constant_times_square, reduce_mod_p

# orders (|J[2]|, |J[eps]|, |J'[phi'] / phi(J[eps])|, |J[eps] / eps(J[2])|) of the
# torsion quotients; in each row first * third^2 * fourth = 2^4
TORSION_QUOTIENT_TABLE = (
    (2, 2, 2, 2),
    (4, 2, 2, 1),
    (4, 4, 1, 4),
    (8, 4, 1, 2),
    (16, 4, 1, 1),
)
TORSION_CONSTANT = 16


def torsion_quotient_product(row: Tuple[int, int, int, int]) -> int:
    two, _, phi_quot, eps_quot = row
    return two * phi_quot * phi_quot * eps_quot


CERT_COST = {"DiscF2": 0, "QuarticSplit": 1, "SigmaShift": 2}


class InconsistentStateError(RuntimeError):
    pass


# square-class group helpers


def class_mul(a: int, b: int) -> int:
    return squarefree_part(a * b)


def closure(gens: Iterable[int]) -> FrozenSet[int]:
    group = {1}
    for g in gens:
        g = squarefree_part(g)
        if g not in group:
            group |= {class_mul(g, h) for h in group}
    return frozenset(group)


def generators(group: Iterable[int]) -> List[int]:
    """A minimal generating set, chosen greedily by (|D|, sign)."""
    group = sorted(set(group), key=lambda d: (abs(d), d < 0))
    gens: List[int] = []
    span = frozenset({1})
    for d in group:
        if d not in span:
            gens.append(d)
            span = closure(gens)
    return gens


def candidate_classes(bad_primes: Iterable[int]) -> FrozenSet[int]:
    """Square-free D supported on -1 and the bad primes (2 must be among them)."""
    bad = sorted(set(bad_primes))
    if 2 not in bad:
        raise ValueError("the bad primes must include 2")
    return closure([-1] + bad)


def rank_from_class_groups(order_I: int, order_Iprime: int) -> int:
    """r with 2^(4 + r) = |I|^2 |I'|^2."""
    prod = order_I * order_Iprime
    if prod < 4 or prod & (prod - 1):
        raise ValueError(f"|I| |I'| = {prod} is not a power of 2 at least 4")
    return 2 * (prod.bit_length() - 1) - 4


# sides


@dataclass
class DescentSide:
    """One curve of the pair with its kernel quadratic F2 and quartic F4."""

    name: str
    curve: GenusTwoCurve

    @property
    def F2(self) -> Poly:
        return self.curve.F2

    @property
    def F4(self) -> Poly:
        return self.curve.F4


def sides(pair: CurvePair) -> Tuple[DescentSide, DescentSide]:
    return DescentSide("I", pair.C), DescentSide("I'", pair.Cprime)


# negative filters


def _mod_p_is_const_square(f: Poly, p: int) -> bool:
    g = reduce_mod_p(f, p)
    # the zero polynomial is 0 times a square
    return not g or is_constant_times_square(g)


def filter_square_mod_p(D: int, side: DescentSide) -> Optional[str]:
    """Reason to exclude D, or None to keep it."""
    for p in sorted(prime_support(D)):
        if valuation(D, p) % 2 == 0:
            continue
        f2 = _mod_p_is_const_square(side.F2, p)
        f4 = _mod_p_is_const_square(side.F4, p)
        if not f2 and not f4:
            return f"neither F2 nor F4 is a constant times a square mod {p}"
    return None


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def filter_real_signs(D: int, side: DescentSide) -> Optional[str]:
    if D > 0:
        return None
    F2, F4 = side.F2, side.F4
    a = F2.coeff(0) and F2.lc and _sign(F2.coeff(0)) != _sign(F2.lc)
    b = F4.coeff(0) and F4.lc and _sign(F4.coeff(0)) != _sign(F4.lc)
    c = _sign(F2.lc) == _sign(F4.lc)
    if a and b and c:
        return "F2, F4 each have leading and constant coefficients of opposite sign, with leading coefficients of equal sign"
    return None


# positive certificates


@dataclass(frozen=True)
class SearchBounds:
    height: int = 60

    def as_dict(self) -> dict:
        return {"height": self.height}


@dataclass(frozen=True)
class Certificate:
    kind: str
    D: int
    side: str
    divisor: str
    detail: str

    def as_dict(self) -> dict:
        return {"kind": self.kind, "D": self.D, "side": self.side, "divisor": self.divisor, "detail": self.detail}


def small_rationals(height: int) -> List[Fraction]:
    """Reduced a/b with |a| <= height, 1 <= b <= height, sorted by (b, |a|, a)."""
    out = set()
    for b in range(1, height + 1):
        for a in range(-height, height + 1):
            if math.gcd(a, b) == 1:
                out.add(Fraction(a, b))
    return sorted(out, key=lambda x: (x.denominator, abs(x.numerator), x.numerator))


def rational_base_point(curve: GenusTwoCurve, height: int):
    """'inf' if the points at infinity are rational, else a small affine point."""
    if QQ.is_square(curve.f.lc):
        return "inf"
    f = curve.f
    for x in small_rationals(min(height, 30)):
        y = QQ.sqrt(f(x))
        if y is not None:
            return (x, y)
    return None


def _base_divisor(jac: Jacobian, base, alpha) -> object:
    """[(alpha, 0) + B' - D_inf] where B' is inf- (split) or the base point."""
    K = jac.field
    if base == "inf":
        return jac.divisor(Poly(K, [-alpha, 1]), jac.zero, 0)
    x0, y0 = K(base[0]), K(base[1])
    u = Poly(K, [alpha * x0, -(alpha + x0), 1])
    slope = y0 / (x0 - alpha)
    v = Poly(K, [-slope * alpha, slope])
    return jac.divisor(u, v, 0 if jac.split else None)


def certify_disc_f2(D: int, side: DescentSide, bounds: SearchBounds) -> Optional[Certificate]:
    F2 = side.F2
    if F2.deg != 2:
        return None
    disc = discriminant(F2)
    if not disc or squarefree_part(disc) != D or D == 1:
        return None
    base = rational_base_point(side.curve, bounds.height)
    if base is None:
        return None
    K = quadratic_field(D)
    jac = jacobian_of(side.curve, K)
    r = K.sqrt(disc)
    alpha = (-K(F2.coeff(1)) + r) / (2 * K(F2.lc))
    P0 = jac.weierstrass_class(F2)
    Dv = _base_divisor(jac, base, alpha)
    if not jac.sigma_shift_test(Dv, P0):
        raise InconsistentStateError(f"DiscF2 divisor for [{D}] fails the sigma-shift identity")
    where = "inf+" if base == "inf" else f"({base[0]}, {base[1]})"
    return Certificate("DiscF2", D, side.name, Dv.describe(), f"roots of F2 in Q(sqrt {D}); base point {where}")


def certify_quartic_split(D: int, side: DescentSide, bounds: SearchBounds) -> Optional[Certificate]:
    if D == 1 or side.F4.deg != 4:
        return None
    splits = conjugate_quadratic_split(side.F4, D)
    if not splits:
        return None
    K = quadratic_field(D)
    jac = jacobian_of(side.curve, K)
    P0 = jac.weierstrass_class(side.F2)
    for g, _ in splits:
        T = jac.weierstrass_class(g)
        if jac.sigma_shift_test(T, P0):
            return Certificate("QuarticSplit", D, side.name, T.describe(), f"F4 = lc * g * conj(g), g = {g}")
    return None


def _points_over(curve: GenusTwoCurve, D: int, height: int, limit: int = 6):
    """Points (x, s sqrt D) with x rational of small height."""
    K = quadratic_field(D)
    f = curve.f
    out = []
    for x in small_rationals(height):
        val = f(x)
        if not val:
            continue
        s = QQ.sqrt(val / D)
        if s is not None:
            out.append((x, K(0, s)))
            if len(out) >= limit:
                break
    return out


def certify_sigma_shift(D: int, side: DescentSide, bounds: SearchBounds) -> Optional[Certificate]:
    if D == 1:
        return None
    K = quadratic_field(D)
    jac = jacobian_of(side.curve, K)
    P0 = jac.weierstrass_class(side.F2)
    pts = _points_over(side.curve, D, bounds.height)
    if not pts:
        return None
    shifts = [jac.identity]
    for g, _ in conjugate_quadratic_split(side.F4, D) if side.F4.deg == 4 else []:
        shifts.append(jac.weierstrass_class(g))
    cands = []
    if jac.split:
        for x, y in pts:
            P = jac.point(x, y)
            cands += [P, P + jac.infinity_difference(), P - jac.point(x, -y)]
    else:
        for (x1, y1), (x2, y2) in combinations(pts, 2):
            for sgn in (1, -1):
                u = Poly(K, [x1 * x2, -(x1 + x2), 1])
                slope = (y1 - sgn * y2) / (x1 - x2)
                v = Poly(K, [y1 - slope * x1, slope])
                cands.append(jac.divisor(u, v))
    for Dv in cands:
        for T in shifts:
            E = Dv + T
            if E.is_defined_over_base():
                continue
            if jac.sigma_shift_test(E, P0):
                return Certificate("SigmaShift", D, side.name, E.describe(), "point search over Q(sqrt D)")
    return None


def certify_all(D: int, side: DescentSide, bounds: SearchBounds) -> List[Certificate]:
    """DiscF2 and QuarticSplit when they apply; SigmaShift only if neither does."""
    out = [c for c in (certify_disc_f2(D, side, bounds), certify_quartic_split(D, side, bounds)) if c]
    if not out:
        c = certify_sigma_shift(D, side, bounds)
        if c:
            out.append(c)
    return out


def certify(D: int, side: DescentSide, bounds: SearchBounds = SearchBounds()) -> Optional[Certificate]:
    found = certify_all(D, side, bounds)
    return min(found, key=lambda c: CERT_COST[c.kind]) if found else None


# state


@dataclass
class ClassGroupBounds:
    lower: FrozenSet[int]
    upper: FrozenSet[int]

    def check(self, name: str):
        if not self.lower <= self.upper:
            raise InconsistentStateError(f"{name}: certified classes {sorted(self.lower - self.upper)} were excluded")
        if 1 not in self.lower or closure(self.lower) != self.lower:
            raise InconsistentStateError(f"{name}: lower bound is not a group")

    @property
    def decided(self) -> bool:
        return self.lower == self.upper

    def as_dict(self) -> dict:
        return {
            "lower": sorted(self.lower, key=abs),
            "upper": sorted(self.upper, key=abs),
            "generators": generators(self.lower),
        }


@dataclass(frozen=True)
class LogEntry:
    iteration: int
    side: str
    D: int
    rule: str
    action: str
    detail: str

    def sort_key(self):
        return (self.iteration, self.side, abs(self.D), self.D, self.rule)

    def as_dict(self) -> dict:
        return {
            "iteration": self.iteration,
            "side": self.side,
            "class": self.D,
            "rule": self.rule,
            "action": self.action,
            "detail": self.detail,
        }


@dataclass
class DescentState:
    boundsI: ClassGroupBounds
    boundsIprime: ClassGroupBounds
    log: List[LogEntry] = field(default_factory=list)
    certificates: Dict[Tuple[str, int], List[Certificate]] = field(default_factory=dict)

    def bounds(self, side: str) -> ClassGroupBounds:
        return self.boundsI if side == "I" else self.boundsIprime

    def set_bounds(self, side: str, b: ClassGroupBounds):
        if side == "I":
            self.boundsI = b
        else:
            self.boundsIprime = b

    def check(self):
        self.boundsI.check("I")
        self.boundsIprime.check("I'")

    def canonical_log(self) -> List[LogEntry]:
        return sorted(self.log, key=LogEntry.sort_key)

    def as_dict(self) -> dict:
        return {
            "I": self.boundsI.as_dict(),
            "I'": self.boundsIprime.as_dict(),
            "certificates": [
                c.as_dict() for key in sorted(self.certificates, key=lambda k: (k[0], abs(k[1]), k[1])) for c in self.certificates[key]
            ],
            "log": [e.as_dict() for e in self.canonical_log()],
        }


@dataclass(frozen=True)
class RankResult:
    rank_lower: int
    rank_upper: int
    exact: bool
    order_I: Tuple[int, int]
    order_Iprime: Tuple[int, int]

    @property
    def rank(self) -> Optional[int]:
        return self.rank_lower if self.exact else None

    def as_dict(self) -> dict:
        return {
            "rank": self.rank,
            "rank_lower": self.rank_lower,
            "rank_upper": self.rank_upper,
            "exact": self.exact,
            "order_I": list(self.order_I),
            "order_Iprime": list(self.order_Iprime),
        }


def _largest_group_order(s: FrozenSet[int]) -> int:
    return 1 << (len(s).bit_length() - 1)


def rank_result(state: DescentState) -> RankResult:
    I, Ip = state.boundsI, state.boundsIprime
    lo = rank_from_class_groups(len(I.lower), len(Ip.lower)) if len(I.lower) * len(Ip.lower) >= 4 else 0
    hiI, hiIp = _largest_group_order(I.upper), _largest_group_order(Ip.upper)
    hi = rank_from_class_groups(hiI, hiIp)
    exact = I.decided and Ip.decided
    if exact and lo != hi:
        raise InconsistentStateError("decided bounds give different ranks")
    return RankResult(lo, hi, exact, (len(I.lower), hiI), (len(Ip.lower), hiIp))


# local images


def local_places(pair_bad: Iterable[int]) -> List:
    return sorted(set(pair_bad) | {2}) + ["inf"]


def local_image(group: Iterable[int], place) -> FrozenSet[tuple]:
    """Image of a subgroup of Q*/Q*^2 in Q_v*/Q_v*^2 (a group: the set of images)."""
    return frozenset(local_square_class(d, place) for d in group)


def filter_local_product(state: DescentState, place) -> List[Tuple[str, int, str]]:
    """Exclusions forced at one place by the cap on |im I| |im I'|."""
    cap = local_cap(place)
    exclusions = []
    images = {s: local_image(state.bounds(s).lower, place) for s in ("I", "I'")}
    if len(images["I"]) * len(images["I'"]) > cap:
        a, b = len(images["I"]), len(images["I'"])
        raise InconsistentStateError(f"local-product at {place}: certified images of orders {a}, {b} exceed the cap {cap}")
    for s, other in (("I", "I'"), ("I'", "I")):
        b = state.bounds(s)
        for D in sorted(b.upper - b.lower, key=lambda d: (abs(d), d)):
            grown = local_image(closure(set(b.lower) | {D}), place)
            if len(grown) * len(images[other]) > cap:
                exclusions.append(
                    (s, D, f"at {place}: image would have order {len(grown)}, other side {len(images[other])}, cap {cap}")
                )
    return exclusions


def filter_real_product(state: DescentState) -> List[Tuple[str, int, str]]:
    return filter_local_product(state, "inf")


def coset_exclusions(state: DescentState) -> List[Tuple[str, int, str]]:
    out = []
    for s in ("I", "I'"):
        b = state.bounds(s)
        for D in sorted(b.upper - b.lower, key=lambda d: (abs(d), d)):
            for l in sorted(b.lower, key=abs):
                if class_mul(D, l) not in b.upper:
                    out.append((s, D, f"[{D}]*[{l}] = [{class_mul(D, l)}] is excluded"))
                    break
    return out


# the fixpoint


def run_descent(pair: CurvePair, bounds: SearchBounds = SearchBounds()) -> Tuple[DescentState, RankResult]:
    bad = pair.bad_primes()
    cands = candidate_classes(bad)
    sideI, sideIp = sides(pair)
    by_name = {"I": sideI, "I'": sideIp}
    state = DescentState(ClassGroupBounds(frozenset({1}), cands), ClassGroupBounds(frozenset({1}), cands))
    all_rational = closure([-1] + sorted(bad))

    it = 0
    # bad reduction: recorded once, the candidate set already respects it
    for s in ("I", "I'"):
        state.log.append(
            LogEntry(it, s, 1, "bad-reduction", "restrict", f"candidates generated by -1 and {sorted(bad)}: {len(all_rational)} classes")
        )

    def exclude(s: str, D: int, rule: str, detail: str):
        b = state.bounds(s)
        if D in b.lower:
            cert = state.certificates.get((s, D), [])
            by = cert[0].kind if cert else "group closure"
            raise InconsistentStateError(f"{s}: [{D}] certified by {by} but excluded by {rule} ({detail})")
        if D in b.upper:
            state.set_bounds(s, ClassGroupBounds(b.lower, b.upper - {D}))
            state.log.append(LogEntry(it, s, D, rule, "exclude", detail))

    def admit(s: str, D: int, certs: List[Certificate]):
        b = state.bounds(s)
        state.certificates[(s, D)] = certs
        best = min(certs, key=lambda c: CERT_COST[c.kind])
        state.log.append(LogEntry(it, s, D, best.kind, "certify", best.detail))
        new_lower = closure(set(b.lower) | {D})
        for E in sorted(new_lower - b.lower - {D}, key=lambda d: (abs(d), d)):
            state.log.append(LogEntry(it, s, E, "closure", "certify", f"product of certified classes with [{D}]"))
        state.set_bounds(s, ClassGroupBounds(new_lower, b.upper))

    tried: set = set()
    changed = True
    while changed:
        it += 1
        before = (state.boundsI.lower, state.boundsI.upper, state.boundsIprime.lower, state.boundsIprime.upper)
        for s, side in by_name.items():
            for D in sorted(state.bounds(s).upper - state.bounds(s).lower, key=lambda d: (abs(d), d)):
                why = filter_square_mod_p(D, side)
                if why:
                    exclude(s, D, "square-mod-p", why)
                    continue
                why = filter_real_signs(D, side)
                if why:
                    exclude(s, D, "real-signs", why)
        for s, side in by_name.items():
            for D in sorted(state.bounds(s).upper - state.bounds(s).lower, key=lambda d: (abs(d), d)):
                if (s, D) in tried or D in state.bounds(s).lower:
                    continue
                tried.add((s, D))
                certs = certify_all(D, side, bounds)
                if certs:
                    admit(s, D, certs)
        state.check()
        for place in local_places(bad):
            for s, D, why in filter_local_product(state, place):
                exclude(s, D, "local-product" if place != "inf" else "real-product", why)
        for s, D, why in coset_exclusions(state):
            exclude(s, D, "coset", why)
        state.check()
        after = (state.boundsI.lower, state.boundsI.upper, state.boundsIprime.lower, state.boundsIprime.upper)
        changed = after != before
        if it > 2 * len(cands) + 2:
            raise InconsistentStateError("fixpoint iteration did not converge")
    return state, rank_result(state)
