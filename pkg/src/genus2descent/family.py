"""The two-parameter-per-side family of genus-2 curves with sqrt(2) multiplication,
and its one-parameter specialization in n.

``build_family`` returns the sextics F6, F6' for parameters (U, V, W, Delta).
``specialize(n)`` evaluates them at (4, -4, 3/4 - 4n, 4) and normalizes:

* C:  F6 = 256 F2 F4, so Y is scaled by 16;
* C': X is replaced by 2X and the result divided by 2^16, so (x, y) on the
  old model corresponds to (x/2, y/2^8) on the new one.

Both scalings are by rational squares, so the jacobians are unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple

from .arith import factorint, is_prime, prime_support
from .poly import Poly, clear_denominators, discriminant, format_poly, qpoly, rational_roots


class FamilyError(ValueError):
    pass


class InadmissibleError(FamilyError):
    def __init__(self, n: int, diagnostics: List[str]):
        self.n = n
        self.diagnostics = diagnostics
        super().__init__(f"n = {n} is not admissible: " + "; ".join(diagnostics))


@dataclass(frozen=True)
class FamilyParams:
    U: Fraction
    V: Fraction
    W: Fraction
    Delta: Fraction

    def __post_init__(self):
        for name in ("U", "V", "W", "Delta"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))

    @classmethod
    def for_n(cls, n: int) -> "FamilyParams":
        return cls(4, -4, Fraction(3, 4) - 4 * n, 4)

    @classmethod
    def parse(cls, text: str) -> "FamilyParams":
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 4:
            raise FamilyError(f"expected U,V,W,Delta, got {text!r}")
        return cls(*(Fraction(p) for p in parts))


def kernel_quadratics(params: FamilyParams) -> Tuple[Poly, Poly]:
    U, V = params.U, params.V
    return qpoly([V, U, 1]), qpoly([2 * (U - V), 2 * (V - U + 2), U - 2])


def _sextic_brackets(params: FamilyParams) -> Tuple[Poly, Poly]:
    U, V, W = params.U, params.V, params.W
    t = W * (U - V) * (U + V) / 4
    quartic = qpoly(
        [
            U * V * (W - 4),
            W * (U * U + V * V) - 4 * (V * V + 4),
            U * (t + V * V + V * W - 4),
            V * (t + V * V + 4),
            U * V,
        ]
    )
    e4 = W * (V - 1) * (U - V) ** 2 - 4 * (V * (U - V) ** 2 - (V - 2) ** 2)
    e3 = 2 * (
        W * (U - V) * (2 * (1 - V) * U + V * (3 * V - 2))
        + 4 * (2 * U * V * (U - 2 * (V + 1)) + (3 * V - 2) * (V * V + 4))
    )
    e2 = W * (U * ((V * V + 4 * (V - 1)) * U - 6 * V * (3 * V - 2)) - V * V * (V * V - 2 * (7 * V - 2))) + 4 * (
        4 * U * V * (3 * (V + 2) - 2 * U) + (V * V + 4) * (V * V - 2 * (7 * V - 2))
    )
    e1 = -2 * V * (
        W * (U * (U * V + 4 * (1 - 2 * V)) + V * V * (6 - V))
        - 4 * (4 * U * (U - V - 4) - (V - 6) * (V * V + 4))
    )
    e0 = W * V * V * (U - V) * (U + V - 4) - 4 * V * (4 * U * (U - 4) - (V - 4) * (V * V + 4))
    return quartic, qpoly([e0, e1, e2, e3, e4])


def build_family(params: FamilyParams) -> Tuple[Poly, Poly]:
    """The sextics (F6, F6') for the given parameters, as displayed (no scaling)."""
    U, V, D = params.U, params.V, params.Delta
    k, kp = kernel_quadratics(params)
    quartic, quartic_p = _sextic_brackets(params)
    F6 = k * quartic * (D * U * V)
    F6p = kp * quartic_p * (D * U * V * (V - 2))
    for name, f in (("F6", F6), ("F6'", F6p)):
        if f.deg < 1:
            raise FamilyError(f"trivial family member: {name} = {f}")
        if f.deg < 5:
            raise FamilyError(f"{name} has degree {f.deg} < 5, not a genus-2 model")
        if not discriminant(f):
            raise FamilyError(f"{name} has a multiple zero")
    return F6, F6p


@dataclass(frozen=True)
class GenusTwoCurve:
    """Y^2 = F2(X) F4(X) over Q."""

    F2: Poly
    F4: Poly
    name: str = "C"

    def __post_init__(self):
        if self.F2.deg > 2 or self.F4.deg > 4:
            raise FamilyError("F2 must have degree <= 2 and F4 degree <= 4")
        if self.f.deg not in (5, 6):
            raise FamilyError(f"F2 F4 has degree {self.f.deg}, expected 5 or 6")
        if not discriminant(self.f):
            raise FamilyError("F2 F4 has a multiple zero")

    @property
    def f(self) -> Poly:
        return self.F2 * self.F4

    @property
    def factors(self) -> Tuple[Poly, Poly]:
        return (self.F2, self.F4)

    def discriminant(self) -> Fraction:
        return discriminant(self.f)

    def bad_primes(self) -> set:
        return {2} | prime_support(self.discriminant())

    def display(self) -> str:
        return f"{self.name}: Y^2 = {display_product(self.F2, self.F4)}"

    def __str__(self):
        return self.display()


def _factor_display(f: Poly) -> Tuple[Fraction, List[str]]:
    content, ints = clear_denominators(f)
    c = Fraction(1) / content
    if ints[-1] < 0:
        c, ints = -c, [-a for a in ints]
    g = qpoly(ints)
    parts = []
    if g.deg == 2 and g.lc == 1:
        roots = rational_roots(g)
        if len(roots) == 2:
            return c, [f"({format_poly(qpoly([-r, 1]))})" for r in roots]
    parts.append(f"({format_poly(g)})")
    return c, parts


def display_product(*polys: Poly) -> str:
    """Human-readable form c(...)(...) with primitive integer factors."""
    const = Fraction(1)
    parts: List[str] = []
    for f in polys:
        c, ps = _factor_display(f)
        const *= c
        parts.extend(ps)
    prefix = "" if const == 1 else "-" if const == -1 else str(const)
    return prefix + "".join(parts)


@dataclass(frozen=True)
class CurvePair:
    C: GenusTwoCurve
    Cprime: GenusTwoCurve
    n: Optional[int] = None
    params: Optional[FamilyParams] = None
    q: Optional[int] = None
    r: Optional[int] = None
    kernel: Tuple[Poly, Poly] = field(default=None, compare=False)

    def bad_primes(self) -> set:
        return bad_primes(self)


def family_q(n: int) -> int:
    return 8 * n + 11


def family_r(n: int) -> int:
    return 256 * n * n - 2912 * n - 2087


@dataclass(frozen=True)
class Admissibility:
    n: int
    q: int
    r: int
    ok: bool
    diagnostics: Tuple[str, ...]

    def __bool__(self):
        return self.ok


def _describe(name: str, v: int) -> Optional[str]:
    if is_prime(abs(v)):
        return None
    if abs(v) < 2:
        return f"{name}={v} is a unit"
    fac = " * ".join(f"{p}^{e}" if e > 1 else str(p) for p, e in sorted(factorint(v).items()))
    return f"{name}={v} composite ({fac})"


def admissible(n: int) -> Admissibility:
    """Whether q = 8n + 11 and r = 256n^2 - 2912n - 2087 are both prime up to sign."""
    if n < 0:
        raise ValueError("n must be non-negative")
    q, r = family_q(n), family_r(n)
    diag = [d for d in (_describe("q", q), _describe("r", r)) if d]
    if not diag:
        F2, F4 = qpoly([-4, 4, 1]), _f4(n)
        if not discriminant(F2 * F4):
            diag.append("F2 F4 has a multiple zero")
    return Admissibility(n, q, r, not diag, tuple(diag))


def _f4(n: int) -> Poly:
    return qpoly([-16 * n - 13, 32 * n + 14, -(16 * n + 9), 20, 4])


def pair_from_params(params: FamilyParams) -> CurvePair:
    """Curves for arbitrary parameters: F2, F2' are the kernel quadratics."""
    F6, F6p = build_family(params)
    k, kp = kernel_quadratics(params)
    return CurvePair(
        GenusTwoCurve(k, F6.exact_div(k), "C"),
        GenusTwoCurve(kp, F6p.exact_div(kp), "C'"),
        params=params,
        kernel=(k, kp),
    )


def specialize(n: int, force: bool = False) -> CurvePair:
    """The normalized pair C, C' for the one-parameter family."""
    adm = admissible(n)
    if not adm.ok and not force:
        raise InadmissibleError(n, list(adm.diagnostics))
    params = FamilyParams.for_n(n)
    F6, F6p = build_family(params)
    k, kp = kernel_quadratics(params)
    F2 = k
    F4 = F6.exact_div(k * 256)
    two_x = qpoly([0, 2])
    F6p_new = F6p.compose(two_x) * Fraction(1, 2**16)
    F2p = kp.compose(two_x) * Fraction(1, 8)
    F4p = F6p_new.exact_div(F2p)
    return CurvePair(
        GenusTwoCurve(F2, F4, "C"),
        GenusTwoCurve(F2p, F4p, "C'"),
        n=n,
        params=params,
        q=adm.q,
        r=adm.r,
        kernel=(F2, F2p),
    )


def bad_primes(pair: CurvePair) -> set:
    """Primes of bad reduction: 2 together with the support of disc(F2 F4)."""
    return pair.C.bad_primes()


def admissible_up_to(bound: int) -> List[int]:
    return [n for n in range(bound + 1) if admissible(n).ok]
