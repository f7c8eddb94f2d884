"""Polynomial solutions of ``A6(x) y'' + A5(x) y' - T4(x) y = 0``.

The coefficient polynomials are

    A6 = sum a6[j] x^(6-j),  A5 = sum a5[j] x^(5-j),  T4 = sum tau4[j] x^(4-j).

Substituting ``y = sum c_k x^k`` (degree ``n``) and collecting powers
``x^0 .. x^(n+4)`` gives an ``(n+5) x (n+1)`` linear system.  The top row
(power ``x^(n+4)``) is the scalar condition

    tau4[0] = n(n-1) a6[0] + n a5[0],

and the remaining rows must admit a solution with ``c_n != 0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .asymptotics import Potential, reduce, simplify
from .numerics.linalg import determinant, exact_nullspace
from .numerics.poly import UniPoly
from .numerics.scalars import Surd, as_fraction, rational_sqrt, scalar_from_json, scalar_to_json

__all__ = [
    "BandCoefficients",
    "DegenerateInstance",
    "OdeCoefficients",
    "PolynomialSolution",
    "band_coefficients",
    "build_system",
    "determinant_conditions",
    "low_degree_closed_forms",
    "necessary_degrees",
    "ode_from_potential",
    "polynomial_solutions",
    "residual",
]


class DegenerateInstance(ValueError):
    """A closed-form denominator vanishes for this instance."""


def _scalar(v):
    if isinstance(v, Surd):
        return simplify(v)
    return as_fraction(v)


@dataclass(frozen=True)
class OdeCoefficients:
    a6: tuple
    a5: tuple
    tau4: tuple

    def __post_init__(self):
        for name, size in (("a6", 7), ("a5", 6), ("tau4", 5)):
            vals = tuple(_scalar(v) for v in getattr(self, name))
            if len(vals) != size:
                raise ValueError(f"{name} needs {size} entries, got {len(vals)}")
            object.__setattr__(self, name, vals)
        if self.a6[0] * self.a6[0] + self.a5[0] * self.a5[0] == 0:
            raise ValueError("a6[0] and a5[0] cannot both vanish")
        if all(v == 0 for v in self.a6):
            raise ValueError("the second-derivative coefficient is identically zero")

    def g(self, k: int, j: int):
        """Coefficient of ``c_k`` in the equation for power ``x^(k+4-j)``."""
        out = Fraction(0)
        if 0 <= j <= 6:
            out = out + k * (k - 1) * self.a6[j]
        if 0 <= j <= 5:
            out = out + k * self.a5[j]
        if 0 <= j <= 4:
            out = out - self.tau4[j]
        return simplify(out)

    def polys(self):
        A6 = UniPoly(list(reversed(self.a6)), "x")
        A5 = UniPoly(list(reversed(self.a5)), "x")
        T4 = UniPoly(list(reversed(self.tau4)), "x")
        return A6, A5, T4

    def to_json(self) -> dict:
        return {
            "a6": [scalar_to_json(v) for v in self.a6],
            "a5": [scalar_to_json(v) for v in self.a5],
            "tau4": [scalar_to_json(v) for v in self.tau4],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "OdeCoefficients":
        return cls(
            *(tuple(scalar_from_json(v, exact=True) for v in obj[key]) for key in ("a6", "a5", "tau4"))
        )


@dataclass(frozen=True)
class BandCoefficients:
    """The seven band entries for index ``n``; ``None`` outside their range."""

    n: int
    alpha: object
    beta: object
    gamma: object
    delta: object | None
    eta: object | None
    mu: object | None
    zeta: object | None


@dataclass(frozen=True)
class PolynomialSolution:
    degree: int
    coeffs: tuple

    def as_poly(self) -> UniPoly:
        return UniPoly(list(self.coeffs), "x")


def band_coefficients(ode: OdeCoefficients, n: int) -> BandCoefficients:
    g = ode.g
    return BandCoefficients(
        n,
        alpha=g(n, 4),
        beta=g(n + 1, 5),
        gamma=g(n + 2, 6),
        delta=g(n - 1, 3) if n >= 1 else None,
        eta=g(n - 2, 2) if n >= 2 else None,
        mu=g(n - 3, 1) if n >= 3 else None,
        zeta=g(n - 4, 0) if n >= 4 else None,
    )


def _parts(v):
    if isinstance(v, Surd):
        return v.p, v.q
    return Fraction(v), Fraction(0)


def _rational_int_roots(A: Fraction, B: Fraction, C: Fraction, nmax: int):
    """Integers ``0 <= n <= nmax`` with ``A n^2 + B n + C = 0``; None means all."""
    if A == 0 and B == 0:
        return None if C == 0 else set()
    if A == 0:
        roots = [-C / B]
    else:
        disc = B * B - 4 * A * C
        r = rational_sqrt(disc)
        if r is None:
            return set()
        roots = [(-B - r) / (2 * A), (-B + r) / (2 * A)]
    return {int(z) for z in roots if z.denominator == 1 and 0 <= z <= nmax}


def necessary_degrees(ode: OdeCoefficients, nmax: int) -> list[int]:
    """Degrees ``0 <= n <= nmax`` with ``tau4[0] = n(n-1) a6[0] + n a5[0]``.

    Coefficients in Q(sqrt(a)) split into rational and irrational parts, and
    an integer ``n`` must annihilate both.
    """
    A = _parts(ode.a6[0])
    B = _parts(ode.a5[0] - ode.a6[0])
    C = _parts(-ode.tau4[0])
    found = None
    for part in range(2):
        roots = _rational_int_roots(A[part], B[part], C[part], nmax)
        if roots is None:
            continue
        found = roots if found is None else found & roots
    if found is None:
        return list(range(nmax + 1))
    return sorted(found)


def build_system(ode: OdeCoefficients, n: int) -> list[list]:
    """Rows for powers ``x^0 .. x^(n+4)``; columns ``c_0 .. c_n``."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    return [[ode.g(k, k + 4 - m) for k in range(n + 1)] for m in range(n + 5)]


def determinant_conditions(ode: OdeCoefficients, n: int) -> list:
    """The four ``(n+1)``-square determinants built from rows ``0..n-1`` plus row ``n+i``.

    Together with the necessary condition (which is the top row) their
    vanishing characterises a degree-``n`` solution when rows ``0..n-1`` have
    full rank.
    """
    M = build_system(ode, n)
    base = M[:n]
    return [determinant(base + [M[n + i]]) for i in range(4)]


def residual(ode: OdeCoefficients, y: UniPoly) -> UniPoly:
    A6, A5, T4 = ode.polys()
    return A6 * y.diff().diff() + A5 * y.diff() - T4 * y


def _normalize(v: list) -> list:
    pivot = v[0] if v[0] != 0 else next(c for c in v if c != 0)
    return [simplify(c / pivot) for c in v]


def polynomial_solutions(ode: OdeCoefficients, n: int) -> list[PolynomialSolution]:
    """Exact degree-``n`` polynomial solutions (a basis when there are several).

    An empty list means no solution of exact degree ``n``.  Every returned
    solution is checked by substituting it back into the equation.
    """
    if n not in necessary_degrees(ode, n):
        raise ValueError(f"degree {n} violates the necessary condition")
    basis = exact_nullspace(build_system(ode, n))
    top = [v for v in basis if v[n] != 0]
    if not top:
        return []
    # keep the span but make every vector genuinely degree n
    fixed = [v if v[n] != 0 else [x + y for x, y in zip(v, top[0])] for v in basis]
    out = []
    for v in fixed:
        coeffs = _normalize(v)
        sol = PolynomialSolution(n, tuple(coeffs))
        if not residual(ode, sol.as_poly()).is_zero():
            raise ArithmeticError("nullspace vector failed the residual check")
        out.append(sol)
    return out


def low_degree_closed_forms(ode: OdeCoefficients, n: int) -> PolynomialSolution:
    """Explicit solutions for degrees 0, 1 and 2 (normalised ``c_0 = 1``).

    The formulas come from the first ``n`` rows of the band system; they are
    valid when the remaining conditions for degree ``n`` hold.
    """
    a6, a5, t = ode.a6, ode.a5, ode.tau4
    if n == 0:
        return PolynomialSolution(0, (Fraction(1),))
    if n == 1:
        if a5[5] == 0:
            raise DegenerateInstance("a5[5] vanishes")
        return PolynomialSolution(1, (Fraction(1), simplify(t[4] / a5[5])))
    if n == 2:
        den = a5[5] * (a5[5] + a6[5]) + a6[6] * (t[4] - a5[4])
        if den == 0:
            raise DegenerateInstance("vanishing denominator in the degree-2 formula")
        c1 = (-a6[6] * t[3] + (a5[5] + a6[5]) * t[4]) / den
        c2 = (a5[5] * t[3] - a5[4] * t[4] + t[4] * t[4]) / (2 * den)
        return PolynomialSolution(2, (Fraction(1), simplify(c1), simplify(c2)))
    raise ValueError("closed forms exist for degrees 0, 1, 2 only")


def ode_from_potential(V: Potential, E) -> OdeCoefficients:
    """The reduced equation ``chi'' - lambda0 chi' - s0 chi = 0`` at energy ``E``."""
    red = reduce(V)
    lam = red.lambda0
    s = red.s0_at(E)
    a6 = [0] * 6 + [1]
    a5 = [simplify(-lam.coeff(5 - j)) for j in range(6)]
    tau = [simplify(s.coeff(4 - j)) for j in range(5)]
    return OdeCoefficients(tuple(a6), tuple(a5), tuple(tau))
