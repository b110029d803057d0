"""Dense univariate polynomials over the exact fields of :mod:`fields`.

Coefficients are stored lowest degree first with trailing zeros removed, so the
zero polynomial has an empty coefficient tuple and degree -1.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import product
from typing import List, Optional, Sequence, Tuple

from .arith import divisors, rational_sqrt, squarefree_part
from .fields import QQ, PrimeField, QuadraticField, prime_field, quadratic_field


class Poly:
    __slots__ = ("field", "c")

    def __init__(self, field, coeffs: Sequence = ()):
        self.field = field
        c = [field(a) for a in coeffs]
        while c and not c[-1]:
            c.pop()
        self.c = tuple(c)

    @classmethod
    def _raw(cls, field, c: list) -> "Poly":
        # coefficients already belong to field
        while c and not c[-1]:
            c.pop()
        out = object.__new__(cls)
        out.field = field
        out.c = tuple(c)
        return out

    @classmethod
    def x(cls, field=QQ) -> "Poly":
        return cls(field, [0, 1])

    @classmethod
    def const(cls, field, a) -> "Poly":
        return cls(field, [a])

    @classmethod
    def from_roots(cls, field, roots) -> "Poly":
        out = cls(field, [1])
        for r in roots:
            out = out * cls(field, [-field(r), 1])
        return out

    # basic accessors

    @property
    def deg(self) -> int:
        return len(self.c) - 1

    @property
    def lc(self):
        return self.c[-1] if self.c else self.field.zero

    def coeff(self, i: int):
        return self.c[i] if 0 <= i < len(self.c) else self.field.zero

    def is_zero(self) -> bool:
        return not self.c

    def is_constant(self) -> bool:
        return len(self.c) <= 1

    def __bool__(self):
        return bool(self.c)

    def __len__(self):
        return len(self.c)

    # arithmetic

    def _lift(self, other) -> Optional["Poly"]:
        if other.__class__ is Poly and other.field is self.field:
            return other
        if isinstance(other, Poly):
            if other.field != self.field:
                raise ValueError(f"polynomials over {self.field} and {other.field}")
            return other
        try:
            return Poly(self.field, [other])
        except (TypeError, ValueError):
            return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        a, b = self.c, o.c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, x in enumerate(b):
            out[i] = out[i] + x
        return Poly._raw(self.field, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.field, [-a for a in self.c])

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if not self.c or not o.c:
            return Poly(self.field)
        out = [self.field.zero] * (len(self.c) + len(o.c) - 1)
        for i, a in enumerate(self.c):
            if not a:
                continue
            for j, b in enumerate(o.c):
                out[i + j] = out[i + j] + a * b
        return Poly._raw(self.field, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out, base = Poly(self.field, [1]), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __divmod__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if not o.c:
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.c)
        dq = len(rem) - len(o.c)
        if dq < 0:
            return Poly(self.field), self
        inv = self.field.one / o.lc
        quo = [self.field.zero] * (dq + 1)
        for k in range(dq, -1, -1):
            t = rem[k + len(o.c) - 1] * inv
            quo[k] = t
            if t:
                for j, b in enumerate(o.c):
                    rem[k + j] = rem[k + j] - t * b
        return Poly._raw(self.field, quo), Poly._raw(self.field, rem[: len(o.c) - 1])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> "Poly":
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def divides(self, other: "Poly") -> bool:
        return not (other % self)

    def scale(self, a) -> "Poly":
        return self * Poly(self.field, [a])

    def monic(self) -> "Poly":
        if not self.c:
            return self
        inv = self.field.one / self.lc
        return Poly._raw(self.field, [a * inv for a in self.c])

    def derivative(self) -> "Poly":
        return Poly(self.field, [i * a for i, a in enumerate(self.c)][1:])

    def __call__(self, x):
        acc = self.field.zero
        for a in reversed(self.c):
            acc = acc * x + a
        return acc

    evaluate = __call__

    def compose(self, g: "Poly") -> "Poly":
        acc = Poly(self.field)
        for a in reversed(self.c):
            acc = acc * g + a
        return acc

    def map(self, fn, field) -> "Poly":
        return Poly(field, [fn(a) for a in self.c])

    def change_field(self, field) -> "Poly":
        return Poly(field, self.c)

    def conjugate(self) -> "Poly":
        return Poly(self.field, [self.field.conjugate(a) for a in self.c])

    # comparisons and display

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.field == other.field and self.c == other.c
        o = self._lift(other)
        return o is not None and self.c == o.c

    def __hash__(self):
        return hash(self.c)

    def __repr__(self):
        return format_poly(self)

    def coefficients(self) -> list:
        return list(self.c)


def format_poly(f: Poly, var: str = "X") -> str:
    if not f.c:
        return "0"
    terms = []
    for i in range(f.deg, -1, -1):
        a = f.c[i]
        if not a:
            continue
        mono = "" if i == 0 else var if i == 1 else f"{var}^{i}"
        s = str(a)
        compound = " + " in s[1:] or " - " in s[1:]
        neg = s.startswith("-") and not compound
        if neg:
            s = s[1:]
        if mono and s == "1":
            s = ""
        elif mono and compound and not s.startswith("("):
            s = f"({s})"
        body = s + mono if s else mono
        terms.append(("-" if neg else "+", body or "1"))
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def qpoly(coeffs) -> Poly:
    """A polynomial over Q from coefficients listed lowest degree first."""
    return Poly(QQ, coeffs)


def gcd(f: Poly, g: Poly) -> Poly:
    """Monic greatest common divisor (zero if both are zero)."""
    while g:
        f, g = g, f % g
    return f.monic()


def xgcd(f: Poly, g: Poly) -> Tuple[Poly, Poly, Poly]:
    """(d, s, t) with d = s*f + t*g monic and d = gcd(f, g)."""
    F = f.field
    r0, r1 = f, g
    s0, s1 = Poly(F, [1]), Poly(F)
    t0, t1 = Poly(F), Poly(F, [1])
    while r1:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if not r0:
        return r0, s0, t0
    inv = F.one / r0.lc
    return r0.scale(inv), s0.scale(inv), t0.scale(inv)


def resultant(f: Poly, g: Poly):
    """Res(f, g) by the Euclidean algorithm."""
    F = f.field
    if not f or not g:
        return F.zero
    res = F.one
    while True:
        m, n = f.deg, g.deg
        if n == 0:
            return res * g.lc**m
        r = f % g
        if not r:
            return F.zero
        if (m * n) % 2:
            res = -res
        res = res * g.lc ** (m - r.deg)
        f, g = g, r


def sylvester_matrix(f: Poly, g: Poly) -> list:
    m, n = f.deg, g.deg
    rows = []
    for i in range(n):
        rows.append([f.field.zero] * i + list(reversed(f.c)) + [f.field.zero] * (n - 1 - i))
    for i in range(m):
        rows.append([f.field.zero] * i + list(reversed(g.c)) + [f.field.zero] * (m - 1 - i))
    return rows


def determinant(rows: list):
    """Determinant by Gaussian elimination; entries from any field."""
    a = [list(r) for r in rows]
    n = len(a)
    det = 1
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            return 0 * det
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det = a[col][col] * det
        inv = 1 / a[col][col]
        for r in range(col + 1, n):
            if a[r][col]:
                t = a[r][col] * inv
                for k in range(col, n):
                    a[r][k] = a[r][k] - t * a[col][k]
    return det


def discriminant(f: Poly):
    """(-1)^(n(n-1)/2) Res(f, f') / lc(f)."""
    n = f.deg
    if n < 1:
        raise ValueError("discriminant of a constant polynomial")
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * resultant(f, f.derivative()) / f.lc


def reduce_mod_p(f: Poly, p: int) -> Poly:
    """Coefficient-wise reduction of a rational polynomial modulo the prime p."""
    F = prime_field(p)
    out = []
    for a in f.c:
        a = Fraction(a)
        if a.denominator % p == 0:
            raise ZeroDivisionError(f"coefficient {a} has denominator divisible by {p}")
        out.append(F(a))
    return Poly(F, out)


def clear_denominators(f: Poly) -> Tuple[int, List[int]]:
    """(m, ints) with m*f = integer polynomial with coprime coefficients, m > 0."""
    den = 1
    for a in f.c:
        den = den * a.denominator // math.gcd(den, a.denominator)
    ints = [int(a * den) for a in f.c]
    g = 0
    for a in ints:
        g = math.gcd(g, a)
    g = g or 1
    return Fraction(den, g), [a // g for a in ints]


# square-free structure over F_p


def _pth_root(f: Poly) -> Poly:
    p = f.field.p
    # Frobenius is the identity on F_p, so the p-th root acts on exponents only
    return Poly(f.field, [f.c[i] for i in range(0, len(f.c), p)])


def squarefree_decomposition(f: Poly) -> List[Tuple[Poly, int]]:
    """[(g, e)] with f = lc * prod g^e, g square-free, pairwise coprime; over F_p."""
    if not isinstance(f.field, PrimeField):
        raise TypeError("square-free decomposition is implemented over F_p")
    if not f:
        raise ValueError("square-free decomposition of zero")
    f = f.monic()
    if f.deg == 0:
        return []
    p = f.field.p
    out: List[Tuple[Poly, int]] = []
    df = f.derivative()
    if not df:
        return [(g, e * p) for g, e in squarefree_decomposition(_pth_root(f))]
    c = gcd(f, df)
    w = f.exact_div(c)
    i = 1
    while w.deg > 0:
        y = gcd(w, c)
        fac = w.exact_div(y)
        if fac.deg > 0:
            out.append((fac, i))
        i += 1
        w = y
        c = c.exact_div(y)
    if c.deg > 0:
        out.extend((g, e * p) for g, e in squarefree_decomposition(_pth_root(c)))
    merged = {}
    for g, e in out:
        merged[e] = merged[e] * g if e in merged else g
    return sorted(((g, e) for e, g in merged.items()), key=lambda t: t[1])


def is_constant_times_square(f: Poly) -> bool:
    """Whether f = c * g^2 over F_p for a constant c."""
    if not f:
        raise ValueError("zero polynomial")
    return all(e % 2 == 0 for _, e in squarefree_decomposition(f))


# rational roots and quartic splittings


def rational_roots(f: Poly) -> List[Fraction]:
    """Distinct rational roots, sorted (rational root theorem)."""
    if not f:
        raise ValueError("roots of the zero polynomial")
    _, ints = clear_denominators(f)
    roots = set()
    while ints and ints[0] == 0:
        roots.add(Fraction(0))
        ints = ints[1:]
    if len(ints) <= 1:
        return sorted(roots)
    g = Poly(QQ, ints)
    for num in divisors(ints[0]):
        for den in divisors(ints[-1]):
            for s in (1, -1):
                x = Fraction(s * num, den)
                if x not in roots and not g(x):
                    roots.add(x)
    return sorted(roots)


def _monic_quartic(f: Poly):
    if f.deg != 4:
        raise ValueError(f"expected a quartic, got degree {f.deg}")
    g = f.monic()
    return [Fraction(a) for a in g.c[:4]]


def resolvent_cubic(f: Poly) -> Poly:
    """Cubic whose roots are r1 r2 + r3 r4 and its conjugates, for the monic quartic."""
    c0, c1, c2, c3 = _monic_quartic(f)
    return qpoly([-(c3 * c3 * c0 - 4 * c2 * c0 + c1 * c1), c1 * c3 - 4 * c0, -c2, 1])


def pairing_cubic(f: Poly, D: int) -> Poly:
    """Cubic in s = a1^2 whose roots parametrize splits over Q(sqrt D).

    A split g = X^2 + (c3/2 + a1 sqrt D) X + (b0 + b1 sqrt D) of the monic quartic
    forces b0 = (k + D s)/2 with k = c2 - c3^2/4, and eliminating b1 from the
    linear and constant coefficients leaves
        D s ((k + D s)^2 - 4 c0) - (c3/2 (k + D s) - c1)^2 = 0.
    """
    c0, c1, c2, c3 = _monic_quartic(f)
    a0 = c3 / 2
    k = c2 - a0 * a0
    s = qpoly([0, 1])
    t = qpoly([k, D])
    return Poly.const(QQ, D) * s * (t * t - 4 * c0) - (t.scale(a0) - c1) ** 2


def conjugate_quadratic_split(f: Poly, D: int) -> List[Tuple[Poly, Poly]]:
    """All (g, conj g) with f = lc(f) g conj(g), g in Q(sqrt D)[X] monic and not rational."""
    if D == 1 or squarefree_part(D) != D:
        raise ValueError(f"{D} is not a square-free integer other than 1")
    if not discriminant(f):
        raise ValueError("quartic with a multiple root")
    K = quadratic_field(D)
    c0, c1, c2, c3 = _monic_quartic(f)
    a0 = c3 / 2
    k = c2 - a0 * a0
    found = []
    for s in rational_roots(pairing_cubic(f, D)):
        if s == 0:
            b0 = k / 2
            if c1 != 2 * a0 * b0:
                continue
            b1 = rational_sqrt((b0 * b0 - c0) / D)
            if not b1:
                continue
            a1 = Fraction(0)
        else:
            a1 = rational_sqrt(s)
            if a1 is None:
                continue
            b0 = (k + D * s) / 2
            b1 = (a0 * b0 - c1 / 2) / (D * a1)
        g = Poly(K, [K(b0, b1), K(a0, a1), 1])
        gbar = g.conjugate()
        if (g * gbar).scale(f.lc) == f.change_field(K):
            found.append((g, gbar))
    return found


def quadratic_splits(f: Poly) -> List[Tuple[int, Poly, Poly]]:
    """Every pairing of the roots of a separable quartic into two pairs whose pair
    quadratics are conjugate over some Q(sqrt D) (D = 1: both rational).

    Found from the rational roots theta of the resolvent cubic; the pair
    quadratics X^2 + alpha X + beta have alpha, beta roots of
    Y^2 - c3 Y + (c2 - theta) and Y^2 - theta Y + c0.
    """
    c0, c1, c2, c3 = _monic_quartic(f)
    out = []
    for theta in rational_roots(resolvent_cubic(f)):
        da = c3 * c3 - 4 * (c2 - theta)
        db = theta * theta - 4 * c0
        if not da and not db:
            continue
        D = squarefree_part(da if da else db)
        if da and db and squarefree_part(db) != D:
            continue
        if D == 1:
            ra, rb = rational_sqrt(da), rational_sqrt(db)
            for sb in (1, -1):
                g = qpoly([(theta + sb * rb) / 2, (c3 + ra) / 2, 1])
                h = qpoly([(theta - sb * rb) / 2, (c3 - ra) / 2, 1])
                if (g * h).scale(f.lc) == f:
                    out.append((1, g, h))
                    break
            continue
        K = quadratic_field(D)
        a1 = rational_sqrt(da / D) if da else Fraction(0)
        b1 = rational_sqrt(db / D) if db else Fraction(0)
        for sb in (1, -1):
            g = Poly(K, [K(theta / 2, sb * b1 / 2), K(c3 / 2, a1 / 2), 1])
            gbar = g.conjugate()
            if (g * gbar).scale(f.lc) == f.change_field(K):
                out.append((D, g, gbar))
                break
    return out


# small-degree factorization


def factor_over_q(f: Poly, *more: Poly) -> List[Poly]:
    """Monic irreducible factors over Q (with multiplicity) of f * prod(more).

    Each given factor must have at most degree 4 once its rational roots are
    removed; curves pass their F2, F4 split to stay inside that range.
    """
    if more:
        return sorted(
            (g for h in (f,) + more for g in factor_over_q(h)),
            key=lambda g: (g.deg, [Fraction(a) for a in g.c]),
        )
    if f.deg < 1:
        return []
    out = []
    rest = f.monic()
    for r in rational_roots(f):
        lin = qpoly([-r, 1])
        while lin.divides(rest):
            out.append(lin)
            rest = rest.exact_div(lin)
    if rest.deg in (2, 3):
        out.append(rest)
    elif rest.deg == 4:
        rational = [s for s in quadratic_splits(rest) if s[0] == 1] if discriminant(rest) else []
        if rational:
            out.extend([rational[0][1], rational[0][2]])
        elif not discriminant(rest):
            g = gcd(rest, rest.derivative())
            out.extend(factor_over_q(g))
            out.extend(factor_over_q(rest.exact_div(g)))
        else:
            out.append(rest)
    elif rest.deg > 4:
        raise NotImplementedError("factoring beyond degree 4 without rational roots")
    return sorted(out, key=lambda g: (g.deg, [Fraction(a) for a in g.c]))


def factor_over_quadratic(D: int, f: Poly, *more: Poly) -> List[Poly]:
    """Monic irreducible factors of a rational polynomial over Q(sqrt D)."""
    K = quadratic_field(D)
    out = []
    for h in factor_over_q(f, *more):
        if h.deg == 2 and squarefree_part(discriminant(h)) == D:
            r = K.sqrt(discriminant(h))
            b = K(h.c[1])
            out.append(Poly(K, [(b - r) / 2, 1]))
            out.append(Poly(K, [(b + r) / 2, 1]))
        elif h.deg == 4 and conjugate_quadratic_split(h, D):
            g, gbar = conjugate_quadratic_split(h, D)[0]
            out.extend([g, gbar])
        else:
            # quadratic fields cannot split irreducible cubics
            out.append(h.change_field(K))
    return out


def factor_mod_p(f: Poly) -> List[Poly]:
    """Monic irreducible factors (with multiplicity) over F_p of degree <= 2, plus
    the leftover product of higher-degree factors if nonconstant."""
    F = f.field
    rest = f.monic()
    out = []
    for a in F.elements():
        lin = Poly(F, [-a, 1])
        while rest.deg >= 1 and lin.divides(rest):
            out.append(lin)
            rest = rest.exact_div(lin)
    if rest.deg >= 2:
        for a, b in product(F.elements(), repeat=2):
            q = Poly(F, [b, a, 1])
            while rest.deg >= 2 and q.divides(rest):
                out.append(q)
                rest = rest.exact_div(q)
    if rest.deg >= 1:
        out.append(rest)
    return out
