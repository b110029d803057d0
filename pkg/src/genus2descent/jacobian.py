"""Jacobian arithmetic for genus-2 curves Y^2 = f(X) with deg f = 6.

A class is stored as (u, v, w) standing for

    [A + w inf+ + (2 - deg u - w) inf- - inf+ - inf-]

where A is the affine divisor with Mumford pair (u, v): u monic, deg v < deg u,
u | f - v^2.  The identity is (1, 0, 1).  When lc(f) = c^2 is a square in the
coefficient field the points at infinity are rational: inf+ is the one where
y/x^3 -> c.  Otherwise only w = 1 - deg u / 2 occurs (deg u in {0, 2}) since
inf+ and inf- are conjugate.

Composition is Cantor's; reduction repeatedly replaces the affine part by the
residual intersection with y = v_s(x), tracking the pole orders of y - v_s at
the two points at infinity.  Every class of J(k) has exactly one such
representation, so equality is structural.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import List, Optional, Tuple

from .fields import QQ, PrimeField, QuadraticField, prime_field, quadratic_field
from .poly import Poly, factor_mod_p, factor_over_q, factor_over_quadratic, xgcd

_MAX_REDUCTION_STEPS = 8


class JacobianError(ValueError):
    pass


class Jacobian:
    def __init__(self, f: Poly, field=None, sqrt_lc=None, factors: Optional[Tuple[Poly, ...]] = None):
        field = f.field if field is None else field
        if f.field != field:
            f = f.change_field(field)
        if f.deg != 6:
            raise JacobianError(f"expected a sextic model, got degree {f.deg}")
        self.f = f
        self.field = field
        # rational-coefficient factorization of f, used for two-torsion
        self.factors = factors
        if sqrt_lc is None:
            sqrt_lc = field.sqrt(f.lc)
        else:
            sqrt_lc = field(sqrt_lc)
            if sqrt_lc * sqrt_lc != f.lc:
                raise JacobianError(f"{sqrt_lc} is not a square root of {f.lc}")
        self.c = sqrt_lc
        self.split = sqrt_lc is not None
        if self.split:
            self.Vplus = self._balancing_cubic()
            self._tail = f - self.Vplus * self.Vplus
        self.zero = Poly(field)
        self.one = Poly(field, [1])
        self.identity = BalancedDivisor(self, self.one, self.zero, 1)

    def _balancing_cubic(self) -> Poly:
        """V+ = cX^3 + aX^2 + bX + e with deg(f - V+^2) <= 2."""
        f, c = self.f, self.c
        two_c = 2 * c
        a = f.coeff(5) / two_c
        b = (f.coeff(4) - a * a) / two_c
        e = (f.coeff(3) - 2 * a * b) / two_c
        return Poly(self.field, [e, b, a, c])

    def __eq__(self, other):
        return isinstance(other, Jacobian) and self.f == other.f and self.c == other.c

    def __hash__(self):
        return hash((self.f, self.c))

    def __repr__(self):
        return f"Jacobian(Y^2 = {self.f} over {self.field})"

    # constructors

    def divisor(self, u, v, w: Optional[int] = None) -> "BalancedDivisor":
        F = self.field
        u = u if isinstance(u, Poly) else Poly(F, u)
        v = v if isinstance(v, Poly) else Poly(F, v)
        if u.field != F:
            u = u.change_field(F)
        if v.field != F:
            v = v.change_field(F)
        if u.deg < 0 or u.lc != 1:
            raise JacobianError("u must be monic")
        if u.deg > 2 or (v and v.deg >= u.deg):
            raise JacobianError("need deg u <= 2 and deg v < deg u")
        if (self.f - v * v) % u:
            raise JacobianError("u does not divide f - v^2")
        if w is None:
            w = 1 - u.deg // 2 if not self.split else 0
        if not 0 <= w <= 2 - u.deg:
            raise JacobianError(f"weight {w} out of range for deg u = {u.deg}")
        if not self.split and 2 * w != 2 - u.deg:
            raise JacobianError("points at infinity are not rational over this field")
        return BalancedDivisor(self, u, v, w)

    def point(self, x, y) -> "BalancedDivisor":
        """[(x, y) - inf+]."""
        F = self.field
        x, y = F(x), F(y)
        if y * y != self.f(x):
            raise JacobianError(f"({x}, {y}) is not on the curve")
        if not self.split:
            raise JacobianError("[P - inf+] needs rational points at infinity")
        return BalancedDivisor(self, Poly(F, [-x, 1]), Poly(F, [y]), 0)

    def points_difference(self, P, Q) -> "BalancedDivisor":
        """[P - Q] for affine points P, Q given as (x, y)."""
        return self.point(*P) - self.point(*Q)

    def infinity_difference(self) -> "BalancedDivisor":
        """[inf+ - inf-]."""
        if not self.split:
            raise JacobianError("points at infinity are not rational")
        return BalancedDivisor(self, self.one, self.zero, 2)

    def weierstrass_class(self, u: Poly) -> "BalancedDivisor":
        """The class of the Weierstrass points cut out by u (deg u <= 2) minus
        the matching multiple of infinity."""
        if u.field != self.field:
            u = u.change_field(self.field)
        return self.divisor(u.monic(), self.zero, 0)

    # group law

    def add(self, D1: "BalancedDivisor", D2: "BalancedDivisor") -> "BalancedDivisor":
        self._check(D1)
        self._check(D2)
        if D1.is_identity():
            return D2
        if D2.is_identity():
            return D1
        f = self.f
        d1, e1, e2 = xgcd(D1.u, D2.u)
        d, c1, c2 = xgcd(d1, D1.v + D2.v)
        s1, s2, s3 = c1 * e1, c1 * e2, c2
        u = (D1.u * D2.u).exact_div(d * d)
        v = (s1 * D1.u * D2.v + s2 * D2.u * D1.v + s3 * (D1.v * D2.v + f)).exact_div(d) % u
        k = d.deg
        N = D1.w + D2.w + k - 1
        M = D1.m + D2.m + k - 1
        return self._reduce(u, v, N, M)

    def _reduce(self, u: Poly, v: Poly, N: int, M: int) -> "BalancedDivisor":
        f = self.f
        for _ in range(_MAX_REDUCTION_STEPS):
            if N >= 0 and M >= 0:
                break
            if self.split:
                Vp = self.Vplus
                if N < 0:
                    vs = -Vp + ((v + Vp) % u)
                else:
                    vs = Vp + ((v - Vp) % u)
                o_plus = self._order_at_infinity(vs - Vp)
                o_minus = self._order_at_infinity(vs + Vp)
            else:
                vs = v % u
                o_plus = o_minus = -max(3, vs.deg)
            u2 = (f - vs * vs).exact_div(u).monic()
            N -= o_plus + u2.deg
            M -= o_minus + u2.deg
            u, v = u2, (-vs) % u2
        else:
            raise JacobianError("reduction did not terminate")
        if u.deg + N + M != 2:
            raise JacobianError("degree bookkeeping failed")
        return BalancedDivisor(self, u, v % u, N)

    def _order_at_infinity(self, h: Poly) -> int:
        # order at inf+ of y - V+ - h (for h = vs - V+), or at inf- symmetrically
        if not h:
            return 3 - self._tail.deg
        return -h.deg

    def neg(self, D: "BalancedDivisor") -> "BalancedDivisor":
        self._check(D)
        return BalancedDivisor(self, D.u, -D.v, D.m)

    def smul(self, k: int, D: "BalancedDivisor") -> "BalancedDivisor":
        if k < 0:
            return self.smul(-k, self.neg(D))
        out = self.identity
        for bit in bin(k)[2:]:
            out = self.add(out, out)
            if bit == "1":
                out = self.add(out, D)
        return out

    def _check(self, D: "BalancedDivisor"):
        if D.jac is not self and D.jac != self:
            raise JacobianError("divisor belongs to a different jacobian")

    # field changes

    def conjugate_curve_is_same(self) -> bool:
        return self.f.conjugate() == self.f

    def galois_conjugate(self, D: "BalancedDivisor") -> "BalancedDivisor":
        """Apply the nontrivial automorphism of Q(sqrt d) (Frobenius over F_{p^2})."""
        self._check(D)
        if not self.conjugate_curve_is_same():
            raise JacobianError("the curve is not defined over the fixed field")
        u, v = D.u.conjugate(), D.v.conjugate()
        w = D.w
        if self.split and self.field.conjugate(self.c) != self.c:
            w = D.m
        return BalancedDivisor(self, u, v, w)

    def sigma_shift_test(self, D: "BalancedDivisor", P0: "BalancedDivisor") -> bool:
        """True iff the conjugate of D equals D + P0."""
        sD = self.galois_conjugate(D)
        if sD == D:
            raise JacobianError("divisor is defined over the fixed field")
        return sD == self.add(D, P0)

    def base_change(self, field) -> "Jacobian":
        return Jacobian(self.f.change_field(field), field, None if self.c is None else field(self.c), self.factors)

    def reduce(self, p: int) -> "Jacobian":
        """Reduction of a model with rational coefficients modulo p."""
        F = prime_field(p)
        f = _map_rational(self.f, F)
        c = None if self.c is None else F(_rational_of(self.c))
        if f.deg != 6:
            raise JacobianError(f"leading coefficient vanishes mod {p}")
        return Jacobian(f, F, c, self.factors)

    def reduce_divisor(self, D: "BalancedDivisor", target: "Jacobian") -> "BalancedDivisor":
        F = target.field
        u, v = _map_rational(D.u, F), _map_rational(D.v, F)
        A = target.divisor(u, v, D.w) if u.deg <= 2 else None
        return A

    # enumeration over finite fields

    def elements(self) -> List["BalancedDivisor"]:
        """Every element of J(F_p), in a fixed order."""
        F = self.field
        if not isinstance(F, PrimeField):
            raise JacobianError("enumeration needs a prime field")
        f = self.f
        p = F.p
        out = []
        sqrt_table = {}
        for a in range(p):
            sqrt_table.setdefault(a * a % p, []).append(a)
        roots_of = lambda z: [F(b) for b in sqrt_table.get(int(z), [])]
        if self.split:
            out.extend(BalancedDivisor(self, self.one, self.zero, w) for w in (0, 1, 2))
            for x in F.elements():
                for y in roots_of(f(x)):
                    for w in (0, 1):
                        out.append(BalancedDivisor(self, Poly(F, [-x, 1]), Poly(F, [y]), w))
        else:
            out.append(self.identity)
        fx = {x.v: f(x) for x in F.elements()}
        xs = F.elements()
        fprime = f.derivative()
        # u with two distinct roots
        for a, b in combinations(xs, 2):
            for ya in roots_of(fx[a.v]):
                for yb in roots_of(fx[b.v]):
                    slope = (ya - yb) / (a - b)
                    v = Poly(F, [ya - slope * a, slope])
                    u = Poly(F, [a * b, -(a + b), 1])
                    out.append(BalancedDivisor(self, u, v, 0))
        # u = (X - a)^2
        for a in xs:
            for ya in roots_of(fx[a.v]):
                if not ya:
                    continue
                slope = fprime(a) / (2 * ya)
                out.append(
                    BalancedDivisor(self, Poly(F, [a * a, -2 * a, 1]), Poly(F, [ya - slope * a, slope]), 0)
                )
        # u irreducible
        for s in range(p):
            for t in range(p):
                # X^2 + sX + t irreducible iff s^2 - 4t is a non-square
                disc = (s * s - 4 * t) % p
                if p == 2:
                    if (s, t) != (1, 1):
                        continue
                elif disc == 0 or pow(disc, (p - 1) // 2, p) == 1:
                    continue
                u = Poly(F, [t, s, 1])
                r = f % u
                r0, r1 = r.coeff(0), r.coeff(1)
                # v = v1 X + v0, v^2 = (2 v1 v0 - s v1^2) X + (v0^2 - t v1^2) mod u
                for v1 in xs:
                    for v0 in roots_of(r0 + t * v1 * v1):
                        if 2 * v1 * v0 - s * v1 * v1 == r1:
                            out.append(BalancedDivisor(self, u, Poly(F, [v0, v1]), 0))
        return out

    def order_by_enumeration(self) -> int:
        return len(self.elements())


def _rational_of(a) -> Fraction:
    return QQ(a)


def _map_rational(f: Poly, F) -> Poly:
    return Poly(F, [F(_rational_of(a)) for a in f.c])


@dataclass(frozen=True, eq=False)
class BalancedDivisor:
    jac: Jacobian
    u: Poly
    v: Poly
    w: int

    @property
    def m(self) -> int:
        """Multiplicity of inf- in the effective part."""
        return 2 - self.u.deg - self.w

    def is_identity(self) -> bool:
        return self.u.deg == 0 and self.w == 1

    def key(self) -> tuple:
        return (self.u.c, self.v.c, self.w)

    def __eq__(self, other):
        if not isinstance(other, BalancedDivisor):
            return NotImplemented
        return self.key() == other.key() and self.jac == other.jac

    def __hash__(self):
        return hash(self.key())

    def __add__(self, other):
        return self.jac.add(self, other)

    def __neg__(self):
        return self.jac.neg(self)

    def __sub__(self, other):
        return self.jac.add(self, self.jac.neg(other))

    def __rmul__(self, k: int):
        return self.jac.smul(k, self)

    __mul__ = __rmul__

    def conjugate(self):
        return self.jac.galois_conjugate(self)

    def is_defined_over_base(self) -> bool:
        return self.conjugate() == self

    def order(self, bound: int = 10_000) -> int:
        acc = self
        for k in range(1, bound + 1):
            if acc.is_identity():
                return k
            acc = acc + self
        raise JacobianError(f"order exceeds {bound}")

    def describe(self) -> str:
        if self.is_identity():
            return "0"
        parts = []
        if self.u.deg > 0:
            parts.append(f"(u = {self.u}, v = {self.v})")
        plus, minus = self.w, self.m
        # class = A + (w-1) inf+ + (m-1) inf-
        for coeff, name in ((plus - 1, "inf+"), (minus - 1, "inf-")):
            if coeff:
                sign = "+" if coeff > 0 else "-"
                mult = "" if abs(coeff) == 1 else f"{abs(coeff)}"
                parts.append(f"{sign} {mult}{name}")
        text = " ".join(parts)
        return f"[{text.lstrip('+ ')}]" if not text.startswith("-") else f"[{text}]"

    def __repr__(self):
        return self.describe()


@dataclass(frozen=True)
class TwoTorsionClass:
    """The class of two Weierstrass points; labels index the roots of f."""

    labels: Tuple[Tuple[int, int], Tuple[int, int]]
    defined: bool
    u: Optional[Poly]
    divisor: Optional[BalancedDivisor]


def _irreducible_factors(jac: Jacobian) -> List[Poly]:
    F = jac.field
    factors = jac.factors or (jac.f,)
    if isinstance(F, PrimeField):
        out = []
        for h in factors:
            hp = h if h.field == F else _map_rational(h, F)
            out.extend(factor_mod_p(hp))
        return out
    if isinstance(F, QuadraticField):
        return factor_over_quadratic(F.d, *(h.map(_rational_of, QQ) for h in factors))
    return factor_over_q(*(h.map(_rational_of, QQ) for h in factors))


def two_torsion_classes(jac: Jacobian) -> List[TwoTorsionClass]:
    """The 15 nonzero two-torsion classes, flagged by whether they are defined
    over the coefficient field of the jacobian."""
    labels = []
    blocks = []
    for i, h in enumerate(_irreducible_factors(jac)):
        h = h.change_field(jac.field) if h.field != jac.field else h
        blocks.append(h.monic())
        labels.extend((i, j) for j in range(h.deg))
    if len(labels) != 6:
        raise JacobianError("f does not have six roots")
    out = []
    for a, b in combinations(labels, 2):
        u = None
        if a[0] == b[0] and blocks[a[0]].deg == 2:
            u = blocks[a[0]]
        elif a[0] != b[0] and blocks[a[0]].deg == 1 and blocks[b[0]].deg == 1:
            u = blocks[a[0]] * blocks[b[0]]
        D = jac.weierstrass_class(u) if u is not None else None
        out.append(TwoTorsionClass((a, b), u is not None, u, D))
    return out


def rational_two_torsion(jac: Jacobian) -> List[BalancedDivisor]:
    return [t.divisor for t in two_torsion_classes(jac) if t.defined]


def jacobian_of(curve, field=QQ) -> Jacobian:
    """The jacobian of a GenusTwoCurve over Q or a field containing Q."""
    f = curve.f.change_field(field) if field != QQ else curve.f
    return Jacobian(f, field, factors=curve.factors)


def jacobian_over_quadratic(curve, d: int) -> Jacobian:
    return jacobian_of(curve, quadratic_field(d))
