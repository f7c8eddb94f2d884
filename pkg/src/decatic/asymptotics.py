"""Asymptotic factor and reduced ODE for decatic potentials.

Writing ``psi = chi * exp(-phi)`` with ``phi`` the integral of the polynomial
part of ``sqrt(V)`` turns ``-psi'' + (V - E) psi = 0`` into

    chi'' = lambda0(x) chi' + s0(x, E) chi,

with ``lambda0 = 2 phi'`` and ``s0 = phi'' - phi'**2 + V - E``.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction

import numpy as np

from .numerics.poly import BiPoly, UniPoly
from .numerics.scalars import Surd, as_fraction

__all__ = [
    "AsymptoticExponent",
    "Potential",
    "ReducedOde",
    "build_exponent",
    "reduce",
    "simplify",
    "sqrt_polynomial_part",
]


def simplify(value):
    """Collapse a rational :class:`Surd` to a plain Fraction."""
    if isinstance(value, Surd) and value.q == 0:
        return value.p
    if isinstance(value, int) and not isinstance(value, bool):
        return Fraction(value)
    return value


def _coef(value):
    if isinstance(value, Surd):
        return simplify(value)
    return as_fraction(value)


@dataclass(frozen=True)
class Potential:
    """``V(x) = a x^10 + b x^8 + c x^6 + d x^4 + e x^2`` with rational ``a > 0``.

    ``b`` through ``e`` may be rationals or elements of Q(sqrt(a)).  Strings
    such as ``"0.877"`` or ``"-43/8"`` are parsed exactly.
    """

    a: Fraction
    b: Fraction | Surd = Fraction(0)
    c: Fraction | Surd = Fraction(0)
    d: Fraction | Surd = Fraction(0)
    e: Fraction | Surd = Fraction(0)

    def __post_init__(self):
        a = as_fraction(self.a)
        if a <= 0:
            raise ValueError("the x^10 coefficient must be positive")
        object.__setattr__(self, "a", a)
        for name in "bcde":
            v = _coef(getattr(self, name))
            if isinstance(v, Surd) and v.radicand != a:
                raise ValueError(f"{name} lives in Q(sqrt({v.radicand})), expected sqrt({a})")
            object.__setattr__(self, name, v)

    @property
    def sqrt_a(self) -> Surd:
        return Surd.sqrt_of(self.a)

    def coefficients(self):
        return (self.a, self.b, self.c, self.d, self.e)

    def as_poly(self) -> UniPoly:
        a, b, c, d, e = self.coefficients()
        return UniPoly([0, 0, e, 0, d, 0, c, 0, b, 0, a], "x")

    def __call__(self, x):
        x2 = x * x
        return (((((self.a * x2) + self.b) * x2 + self.c) * x2 + self.d) * x2 + self.e) * x2

    def with_(self, **changes) -> "Potential":
        vals = dict(zip("abcde", self.coefficients()))
        vals.update(changes)
        return Potential(**vals)


@dataclass(frozen=True)
class AsymptoticExponent:
    """``phi(x) = c6 x^6 + c4 x^4 + c2 x^2``; the wavefunction carries ``exp(-phi)``."""

    c6: Fraction | Surd
    c4: Fraction | Surd
    c2: Fraction | Surd

    def as_poly(self) -> UniPoly:
        return UniPoly([0, 0, self.c2, 0, self.c4, 0, self.c6], "x")

    def __call__(self, x):
        x2 = x * x
        return ((self.c6 * x2 + self.c4) * x2 + self.c2) * x2


@dataclass(frozen=True)
class ReducedOde:
    """``chi'' = lambda0 chi' + s0 chi``; ``s0`` is a BiPoly in ``(x, E)``."""

    lambda0: UniPoly
    s0: BiPoly

    def s0_at(self, E) -> UniPoly:
        return self.s0.eval_E(E)


def sqrt_polynomial_part(P: UniPoly) -> UniPoly:
    """Polynomial part ``Q`` of ``sqrt(P)``: ``deg(P - Q**2) < deg(P) / 2``.

    ``Q`` has positive leading coefficient and is found by matching the
    upper half of the coefficients of ``Q**2`` against ``P`` from the top.
    """
    n = P.degree()
    if n < 0 or n % 2:
        raise ValueError("polynomial part of a square root needs even degree")
    lead = P.lc()
    if isinstance(lead, Decimal):
        if lead <= 0:
            raise ValueError("leading coefficient must be positive")
        root = lead.sqrt()
    else:
        if lead <= 0:
            raise ValueError("leading coefficient must be positive")
        if isinstance(lead, Surd):
            if lead.q != 0:
                raise ValueError("leading coefficient has no square root in the field")
            lead = lead.p
        root = simplify(Surd.sqrt_of(lead))
    m = n // 2
    q = [0] * (m + 1)
    q[m] = root
    two_root = 2 * root
    for k in range(m - 1, -1, -1):
        acc = P.coeff(m + k)
        for i in range(k + 1, m):
            acc = acc - q[i] * q[m + k - i]
        q[k] = simplify(acc / two_root)
    return UniPoly(q, P.var)


def build_exponent(V: Potential) -> AsymptoticExponent:
    a, b, c = V.a, V.b, V.c
    r = V.sqrt_a
    K = b * b - 4 * a * c
    return AsymptoticExponent(
        simplify(r / 6),
        simplify(b / (8 * r)),
        simplify(-K / (16 * a * r)),
    )


def reduce(V: Potential) -> ReducedOde:
    """Coefficients of the reduced ODE in closed form."""
    a, b, c, d, e = V.coefficients()
    r = V.sqrt_a
    a3 = a * a * a
    K = b * b - 4 * a * c
    lam = UniPoly(
        [0, simplify(-K / (4 * a * r)), 0, simplify(b / r), 0, simplify(2 * r)], "x"
    )
    s_const = simplify((4 * a * c - b * b) / (8 * a * r))
    s_x2 = simplify(
        (64 * a3 * e + 96 * a * a * r * b - b ** 4 + 8 * a * b * b * c - 16 * a * a * c * c)
        / (64 * a3)
    )
    s_x4 = simplify((8 * a * a * d + 40 * a * a * r + b ** 3 - 4 * a * b * c) / (8 * a * a))
    grid = np.full((5, 2), Fraction(0), dtype=object)
    grid[0, 0] = s_const
    grid[0, 1] = Fraction(-1)
    grid[2, 0] = s_x2
    grid[4, 0] = s_x4
    return ReducedOde(lam, BiPoly(grid))
