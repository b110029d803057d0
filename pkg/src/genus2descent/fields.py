"""Exact fields: Q, real and imaginary quadratic fields Q(sqrt d), prime fields
F_p and their quadratic extensions F_{p^2}.

Elements of Q are plain ``fractions.Fraction`` values.  The other fields carry
small immutable element classes that accept ints (and, for Q(sqrt d),
Fractions) as the other operand of any arithmetic operator.  Every field
object exposes ``zero``, ``one``, a coercing ``__call__``, ``is_square``,
``sqrt`` (returning None for non-squares) and ``conjugate``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from numbers import Integral, Rational as _AbstractRational

from .arith import is_prime, is_squarefree, rational_sqrt, smallest_nonresidue, sqrt_mod


class RationalField:
    characteristic = 0
    zero = Fraction(0)
    one = Fraction(1)

    def __call__(self, x) -> Fraction:
        if isinstance(x, QuadElement):
            if x.b != 0:
                raise ValueError(f"{x} is not rational")
            return x.a
        return Fraction(x)

    def contains(self, x) -> bool:
        return isinstance(x, (Integral, Fraction))

    def is_square(self, x) -> bool:
        return rational_sqrt(self(x)) is not None

    def sqrt(self, x):
        return rational_sqrt(self(x))

    def conjugate(self, x):
        return self(x)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


QQ = RationalField()


def _is_rational(x) -> bool:
    return isinstance(x, (Integral, _AbstractRational)) and not isinstance(x, bool)


class QuadElement:
    """a + b*sqrt(d) with a, b rational."""

    __slots__ = ("field", "a", "b")

    def __init__(self, field: "QuadraticField", a, b=0):
        self.field = field
        self.a = Fraction(a)
        self.b = Fraction(b)

    def _coerce(self, other):
        if isinstance(other, QuadElement):
            if other.field != self.field:
                raise ValueError("elements of different quadratic fields")
            return other
        if _is_rational(other):
            return QuadElement(self.field, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadElement(self.field, self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return QuadElement(self.field, -self.a, -self.b)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadElement(self.field, self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = self.field.d
        return QuadElement(
            self.field, self.a * o.a + d * self.b * o.b, self.a * o.b + self.b * o.a
        )

    __rmul__ = __mul__

    def conjugate(self) -> "QuadElement":
        return QuadElement(self.field, self.a, -self.b)

    def norm(self) -> Fraction:
        return self.a * self.a - self.field.d * self.b * self.b

    def trace(self) -> Fraction:
        return 2 * self.a

    def inverse(self) -> "QuadElement":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in a quadratic field")
        return QuadElement(self.field, self.a / n, -self.b / n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result, base = self.field.one, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def is_rational(self) -> bool:
        return self.b == 0

    def __eq__(self, other):
        if isinstance(other, QuadElement):
            return other.field == self.field and self.a == other.a and self.b == other.b
        if _is_rational(other):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        return hash(self.a) if self.b == 0 else hash((self.a, self.b, self.field.d))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __repr__(self):
        return self.field.format(self)


class QuadraticField:
    """Q(sqrt d) for a square-free integer d other than 0 and 1."""

    characteristic = 0

    def __init__(self, d: int):
        if d in (0, 1) or not is_squarefree(d):
            raise ValueError(f"{d} is not a square-free integer other than 0, 1")
        self.d = d
        self.zero = QuadElement(self, 0)
        self.one = QuadElement(self, 1)
        self.sqrt_d = QuadElement(self, 0, 1)

    def __call__(self, a, b=0) -> QuadElement:
        if isinstance(a, QuadElement):
            if a.field != self:
                if a.b == 0:
                    return QuadElement(self, a.a, b)
                raise ValueError("element of a different quadratic field")
            return a if b == 0 else a + QuadElement(self, 0, b)
        return QuadElement(self, a, b)

    def contains(self, x) -> bool:
        return _is_rational(x) or (isinstance(x, QuadElement) and x.field == self)

    def sqrt(self, x):
        """A square root of x in this field, or None."""
        x = self(x)
        if x.b == 0:
            r = rational_sqrt(x.a)
            if r is not None:
                return QuadElement(self, r)
            r = rational_sqrt(x.a / self.d)
            return None if r is None else QuadElement(self, 0, r)
        n = rational_sqrt(x.norm())
        if n is None:
            return None
        for sign in (1, -1):
            s = rational_sqrt((x.a + sign * n) / 2)
            if s:
                return QuadElement(self, s, x.b / (2 * s))
        return None

    def is_square(self, x) -> bool:
        return self.sqrt(x) is not None

    def conjugate(self, x):
        return self(x).conjugate()

    def format(self, x: QuadElement) -> str:
        if x.b == 0:
            return str(x.a)
        root = f"sqrt({self.d})"
        b = "" if x.b == 1 else "-" if x.b == -1 else f"{x.b}*"
        if x.a == 0:
            return f"{b}{root}"
        sign = "+" if x.b > 0 else "-"
        b = "" if abs(x.b) == 1 else f"{abs(x.b)}*"
        return f"({x.a} {sign} {b}{root})"

    def __eq__(self, other):
        return isinstance(other, QuadraticField) and other.d == self.d

    def __hash__(self):
        return hash(("Q", self.d))

    def __repr__(self):
        return f"Q(sqrt({self.d}))"


class Fp:
    __slots__ = ("field", "v")

    def __init__(self, field: "PrimeField", v: int):
        self.field = field
        self.v = v % field.p

    def _coerce(self, other):
        if other.__class__ is Fp and other.field is self.field:
            return other.v
        if isinstance(other, Fp):
            if other.field.p != self.field.p:
                raise ValueError("elements of different prime fields")
            return other.v
        if isinstance(other, Integral):
            return int(other)
        if isinstance(other, Fraction):
            return self.field(other).v
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Fp(self.field, self.v + o)

    __radd__ = __add__

    def __neg__(self):
        return Fp(self.field, -self.v)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Fp(self.field, self.v - o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Fp(self.field, o - self.v)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Fp(self.field, self.v * o)

    __rmul__ = __mul__

    def inverse(self) -> "Fp":
        if self.v == 0:
            raise ZeroDivisionError(f"inverse of zero in F_{self.field.p}")
        return Fp(self.field, pow(self.v, -1, self.field.p))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * Fp(self.field, o).inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Fp(self.field, o) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return Fp(self.field, pow(self.v, k, self.field.p))

    def conjugate(self):
        return self

    def __eq__(self, other):
        if isinstance(other, Fp):
            return other.field.p == self.field.p and other.v == self.v
        if isinstance(other, (Integral, Fraction)):
            return self.field(other).v == self.v
        return NotImplemented

    def __hash__(self):
        return hash(self.v)

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return str(self.v)


class PrimeField:
    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = self.characteristic = p
        self.zero = Fp(self, 0)
        self.one = Fp(self, 1)

    def __call__(self, x) -> Fp:
        if isinstance(x, Fp):
            if x.field.p != self.p:
                raise ValueError("element of a different prime field")
            return x
        if isinstance(x, Integral):
            return Fp(self, int(x))
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"denominator of {x} vanishes mod {self.p}")
            return Fp(self, x.numerator * pow(x.denominator, -1, self.p))
        raise TypeError(f"cannot coerce {x!r} into F_{self.p}")

    def contains(self, x) -> bool:
        return isinstance(x, Integral) or (isinstance(x, Fp) and x.field.p == self.p)

    def elements(self):
        return [Fp(self, v) for v in range(self.p)]

    def is_square(self, x) -> bool:
        v = self(x).v
        if self.p == 2 or v == 0:
            return True
        return pow(v, (self.p - 1) // 2, self.p) == 1

    def sqrt(self, x):
        v = self(x).v
        if self.p == 2:
            return Fp(self, v)
        r = sqrt_mod(v, self.p)
        return None if r is None else Fp(self, r)

    def conjugate(self, x):
        return self(x)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))

    def __repr__(self):
        return f"F_{self.p}"


class Fp2:
    """x + y*t in F_p[t]/(t^2 - g)."""

    __slots__ = ("field", "x", "y")

    def __init__(self, field: "QuadraticExtension", x: int, y: int = 0):
        p = field.p
        self.field = field
        self.x = x % p
        self.y = y % p

    def _coerce(self, other):
        if isinstance(other, Fp2):
            if other.field.p != self.field.p:
                raise ValueError("elements of different fields")
            return other
        if isinstance(other, (Integral, Fp, Fraction)):
            return self.field(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Fp2(self.field, self.x + o.x, self.y + o.y)

    __radd__ = __add__

    def __neg__(self):
        return Fp2(self.field, -self.x, -self.y)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Fp2(self.field, self.x - o.x, self.y - o.y)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        g = self.field.g
        return Fp2(
            self.field,
            self.x * o.x + g * self.y * o.y,
            self.x * o.y + self.y * o.x,
        )

    __rmul__ = __mul__

    def norm(self) -> int:
        p = self.field.p
        return (self.x * self.x - self.field.g * self.y * self.y) % p

    def conjugate(self) -> "Fp2":
        # the Frobenius z -> z^p
        return Fp2(self.field, self.x, -self.y)

    def inverse(self) -> "Fp2":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        ni = pow(n, -1, self.field.p)
        return Fp2(self.field, self.x * ni, -self.y * ni)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result, base = self.field.one, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Fp2):
            return other.field.p == self.field.p and (self.x, self.y) == (other.x, other.y)
        o = self._coerce(other)
        return o is not None and (self.x, self.y) == (o.x, o.y)

    def __hash__(self):
        return hash(self.x) if self.y == 0 else hash((self.x, self.y))

    def __bool__(self):
        return bool(self.x or self.y)

    def __repr__(self):
        if self.y == 0:
            return str(self.x)
        return f"({self.x} + {self.y}*t)"


class QuadraticExtension:
    """F_{p^2} = F_p(t), t^2 = g with g the smallest quadratic non-residue."""

    def __init__(self, p: int):
        if p == 2 or not is_prime(p):
            raise ValueError(f"{p} is not an odd prime")
        self.p = self.characteristic = p
        self.g = smallest_nonresidue(p)
        # Euler's criterion on the generator
        assert pow(self.g, (p - 1) // 2, p) == p - 1
        self.base = PrimeField(p)
        self.zero = Fp2(self, 0)
        self.one = Fp2(self, 1)
        self.t = Fp2(self, 0, 1)

    @property
    def order(self) -> int:
        return self.p * self.p

    def __call__(self, x, y=0) -> Fp2:
        if isinstance(x, Fp2):
            return x
        if isinstance(x, Fp):
            x = x.v
        elif isinstance(x, Fraction):
            x = self.base(x).v
        return Fp2(self, x, y)

    def contains(self, x) -> bool:
        return isinstance(x, (Integral, Fp)) or (isinstance(x, Fp2) and x.field.p == self.p)

    def elements(self):
        p = self.p
        return [Fp2(self, x, y) for y in range(p) for x in range(p)]

    def is_square(self, x) -> bool:
        # z is a square in F_{p^2} iff its norm is a square in F_p
        n = self(x).norm()
        return n == 0 or pow(n, (self.p - 1) // 2, self.p) == 1

    def sqrt(self, x):
        """Tonelli-Shanks in the cyclic group F_{p^2}^*."""
        z = self(x)
        if not z:
            return z
        if not self.is_square(z):
            return None
        q, s = self.order - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1
        nonsq = next(e for e in self._candidates() if not self.is_square(e))
        m, c, t, r = s, nonsq**q, z**q, z ** ((q + 1) // 2)
        while t != self.one:
            i, t2 = 0, t
            while t2 != self.one:
                t2 = t2 * t2
                i += 1
            b = c ** (1 << (m - i - 1))
            m, c, t, r = i, b * b, t * b * b, r * b
        return r

    def _candidates(self):
        for y in range(1, self.p):
            for x in range(self.p):
                yield Fp2(self, x, y)

    def conjugate(self, x):
        return self(x).conjugate()

    def __eq__(self, other):
        return isinstance(other, QuadraticExtension) and other.p == self.p

    def __hash__(self):
        return hash(("F2", self.p))

    def __repr__(self):
        return f"F_{self.p}^2"


@lru_cache(maxsize=None)
def quadratic_field(d: int) -> QuadraticField:
    return QuadraticField(d)


@lru_cache(maxsize=None)
def prime_field(p: int) -> PrimeField:
    return PrimeField(p)


@lru_cache(maxsize=None)
def quadratic_extension(p: int) -> QuadraticExtension:
    return QuadraticExtension(p)
