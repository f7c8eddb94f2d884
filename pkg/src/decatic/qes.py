"""Exact (quasi-exactly solvable) states of decatic potentials.

For ``V = a x^10 + b x^8 + c x^6 + d x^4 + e x^2`` a solution
``psi = chi * exp(-phi)`` with ``chi`` a polynomial of degree ``n`` exists only
when

    8(5 + 2n) a^(5/2) + 8 a^2 d - 4abc + b^3 = 0.

The coefficients of ``chi`` are then fixed by energy polynomials ``P_k(E)``
generated by a four-term recurrence, and ``(E, e)`` must be a common zero of
the terminal polynomial ``P_(n+2)`` and one extra constraint.

Throughout this module ``n`` is the degree of ``chi``; even ``n`` gives an even
wavefunction and odd ``n`` an odd one.
"""

from __future__ import annotations

import decimal
from dataclasses import dataclass, field
from decimal import Decimal
from fractions import Fraction
from math import factorial

from .asymptotics import AsymptoticExponent, Potential, build_exponent, simplify
from .numerics.poly import UniPoly, resultant
from .numerics.roots import real_roots
from .numerics.scalars import Surd, as_fraction, scalar_to_json, to_decimal

__all__ = [
    "EnergyPolySequence",
    "NoSolution",
    "QesSolution",
    "ResidualReport",
    "Wavefunction",
    "admissible_state",
    "closed_form_first",
    "closed_form_ground",
    "constraint_residual",
    "degree_condition_residual",
    "energy_polynomials",
    "solve_potential",
    "solve_state",
    "verify",
    "wavefunction",
]


class NoSolution(ValueError):
    """No real ``(E, e)`` pair exists for the requested state."""


def _parity_of(n: int, parity: str | None) -> str:
    if n < 0:
        raise ValueError("degree must be nonnegative")
    implied = "even" if n % 2 == 0 else "odd"
    if parity is not None and parity != implied:
        raise ValueError(f"degree {n} is {implied}, not {parity}")
    return implied


def _exact(v):
    if isinstance(v, (Surd, Decimal)):
        return simplify(v)
    return as_fraction(v)


def _sqrt_a(a) -> Surd:
    return Surd.sqrt_of(as_fraction(a))


# -- conditions -------------------------------------------------------------------


def degree_condition_residual(V: Potential, parity: str | None, n: int):
    """Left side of the degree condition for a degree-``n`` polynomial factor."""
    _parity_of(n, parity)
    a, b, c, d, _ = V.coefficients()
    r = V.sqrt_a
    return simplify(8 * (5 + 2 * n) * a * a * r + 8 * a * a * d - 4 * a * b * c + b ** 3)


def admissible_state(V: Potential):
    """``(parity, n)`` when the degree condition has a nonnegative integer root, else None."""
    a, b, c, d, _ = V.coefficients()
    r = V.sqrt_a
    a52 = a * a * r
    n = simplify(-(40 * a52 + 8 * a * a * d - 4 * a * b * c + b ** 3) / (16 * a52))
    if not isinstance(n, Fraction) or n.denominator != 1 or n < 0:
        return None
    n = int(n)
    return ("even" if n % 2 == 0 else "odd", n)


def degree_condition_d(a, b, c, n: int):
    """The ``d`` that satisfies the degree condition for degree ``n``."""
    a = as_fraction(a)
    r = _sqrt_a(a)
    return simplify(-(8 * (5 + 2 * n) * a * a * r - 4 * a * b * c + b ** 3) / (8 * a * a))


# -- energy polynomials -----------------------------------------------------------


@dataclass(frozen=True)
class EnergyPolySequence:
    """``P_k(E)`` for ``k`` of the state's parity, up to the terminal index ``n + 2``."""

    parity: str
    degree: int
    polys: dict
    params: tuple

    @property
    def terminal(self) -> UniPoly:
        return self.polys[self.degree + 2]

    def __getitem__(self, k: int) -> UniPoly:
        if k < 0:
            return UniPoly([], "E")
        return self.polys[k]


def _ring(value):
    """Lift a scalar into polynomials in ``e`` whose coefficients are polynomials in ``E``."""
    return UniPoly([UniPoly([value], "E")], "e")


_E_RING = UniPoly([UniPoly([0, 1], "E")], "e")
_e_RING = UniPoly([UniPoly([], "E"), UniPoly([1], "E")], "e")


def _symbolic_polys(a, b, c, n: int) -> dict:
    """Energy polynomials as polynomials in ``e`` with ``E``-polynomial coefficients.

    Degree ``n = 2m`` (even) runs over ``k = 2j``, degree ``n = 2m + 1`` (odd)
    over ``k = 2j + 1``.  With
    ``K = b^2 - 4ac`` and ``r = sqrt(a)``:

        P_(k+2) = (8 r^3 E + (2k + 1) K) P_k
                + k (k - 1) (32 (2k - 1) r^5 b + W(e)) P_(k-2)
                + 2048 a^5 (m + 2 - j) k (k-1) (k-2) (k-3) P_(k-4),

    where ``W(e) = -b^4 + 8 a b^2 c - 16 a^2 c^2 + 64 a^3 e``.  The last
    coefficient depends on the target degree through ``m``; at the final step
    ``j = m`` it reduces to the familiar constant.
    """
    a = as_fraction(a)
    r = _sqrt_a(a)
    K = simplify(b * b - 4 * a * c)
    s = n % 2
    m = (n - s) // 2
    W0 = simplify(-b ** 4 + 8 * a * b * b * c - 16 * a * a * c * c)
    W_e = _ring(W0) + _e_RING * _ring(simplify(64 * a ** 3))
    lin = _E_RING * _ring(simplify(8 * a * r))
    zero = _ring(0)
    P = {s - 4: zero, s - 2: zero, s: _ring(Fraction(1))}
    for j in range(0, m + 1):
        k = 2 * j + s
        t1 = (lin + _ring(simplify((2 * k + 1) * K))) * P[k]
        t2 = zero
        if k >= 2:
            t2 = (W_e + _ring(simplify(32 * (2 * k - 1) * a * a * r * b))) * P[k - 2] * _ring(Fraction(k * (k - 1)))
        t3 = zero
        if k >= 4:
            coef = 2048 * a ** 5 * (m + 2 - j) * k * (k - 1) * (k - 2) * (k - 3)
            t3 = P[k - 4] * _ring(simplify(coef))
        P[k + 2] = t1 + t2 + t3
    return {k: v for k, v in P.items() if k >= s}


def _symbolic_constraint(a, b, c, n: int, P: dict) -> UniPoly:
    """The extra condition (a polynomial in ``e`` over ``E``-polynomials).

    even ``n = 2m``:  (32(4m+3) r^5 b + W(e)) P_(2m)   + 4096 a^5 m (2m-1) P_(2m-2)
    odd ``n = 2m+1``: (32(4m+5) r^5 b + W(e)) P_(2m+1) + 4096 a^5 m (2m+1) P_(2m-1)
    """
    a = as_fraction(a)
    r = _sqrt_a(a)
    s = n % 2
    m = (n - s) // 2
    W0 = simplify(-b ** 4 + 8 * a * b * b * c - 16 * a * a * c * c)
    W_e = _ring(W0) + _e_RING * _ring(simplify(64 * a ** 3))
    first = W_e + _ring(simplify(32 * (4 * m + 3 + 2 * s) * a * a * r * b))
    out = first * P[n]
    if m >= 1:
        out = out + P[n - 2] * _ring(simplify(4096 * a ** 5 * m * (2 * m - 1 + 2 * s)))
    return out


def _at_e(poly_e: UniPoly, e) -> UniPoly:
    acc = UniPoly([], "E")
    for coeff in reversed(poly_e.coeffs):
        acc = acc.scale(e) + _E_part(coeff)
    return acc.map(simplify)


def _E_part(coeff) -> UniPoly:
    # ring arithmetic can leave a bare scalar zero among the coefficients
    return coeff if isinstance(coeff, UniPoly) else UniPoly([coeff], "E")


def _at_E(poly_e: UniPoly, E) -> UniPoly:
    return UniPoly([simplify(_E_part(coeff)(E)) for coeff in poly_e.coeffs], "e")


def energy_polynomials(a, b, c, e, parity: str | None, n: int) -> EnergyPolySequence:
    """Energy polynomials for a degree-``n`` state at fixed ``e``.

    ``d`` does not appear: it has been eliminated through the degree
    condition.  Indices run ``0, 2, ..., n+2`` (even) or ``1, 3, ..., n+2`` (odd).
    """
    parity = _parity_of(n, parity)
    a, b, c, e = (_exact(v) for v in (a, b, c, e))
    if a <= 0:
        raise ValueError("a must be positive")
    sym = _symbolic_polys(a, b, c, n)
    return EnergyPolySequence(parity, n, {k: _at_e(v, e) for k, v in sym.items()}, (a, b, c, e))


def constraint_residual(a, b, c, e, parity: str | None, n: int, E):
    """Value of the extra condition for a degree-``n`` state at ``(E, e)``."""
    parity = _parity_of(n, parity)
    a, b, c, e = (_exact(v) for v in (a, b, c, e))
    sym = _symbolic_polys(a, b, c, n)
    cons = _symbolic_constraint(a, b, c, n, sym)
    return _evaluate(_at_e(cons, e), E)


def _evaluate(p: UniPoly, E):
    if isinstance(E, Decimal):
        return p.to_decimal()(E)
    return simplify(p(E))


# -- closed forms ------------------------------------------------------------------


def closed_form_ground(a, b, c):
    """``(E, d, e)`` of the nodeless state with ``chi = 1``."""
    a, b, c = (_exact(v) for v in (a, b, c))
    r = _sqrt_a(a)
    a32 = a * r
    a52 = a * a * r
    E = (4 * a * c - b * b) / (8 * a32)
    d = -(40 * a52 + b ** 3 - 4 * a * b * c) / (8 * a * a)
    e = -(96 * a52 * b - b ** 4 + 8 * a * b * b * c - 16 * a * a * c * c) / (64 * a ** 3)
    return simplify(E), simplify(d), simplify(e)


def closed_form_first(a, b, c):
    """``(E, d, e)`` of the one-node state with ``chi = x``."""
    a, b, c = (_exact(v) for v in (a, b, c))
    r = _sqrt_a(a)
    a32 = a * r
    a52 = a * a * r
    E = 3 * (4 * a * c - b * b) / (8 * a32)
    d = -(56 * a52 + b ** 3 - 4 * a * b * c) / (8 * a * a)
    e = -(160 * a52 * b - b ** 4 + 8 * a * b * b * c - 16 * a * a * c * c) / (64 * a ** 3)
    return simplify(E), simplify(d), simplify(e)


# -- solutions ------------------------------------------------------------------------


@dataclass(frozen=True)
class QesSolution:
    n: int
    parity: str
    E: object
    d: object
    e: object
    chi: UniPoly
    exponent: AsymptoticExponent
    a: Fraction
    b: object
    c: object

    @property
    def exact(self) -> bool:
        return not isinstance(self.E, Decimal) and not isinstance(self.e, Decimal)

    @property
    def potential(self) -> Potential:
        if not self.exact:
            raise ValueError("potential with decimal coefficients; use coefficients()")
        return Potential(self.a, self.b, self.c, self.d, self.e)

    def coefficients(self):
        return (self.a, self.b, self.c, self.d, self.e)

    def to_json(self) -> dict:
        return {
            "state": self.n,
            "parity": self.parity,
            "E": _json_scalar(self.E),
            "d": _json_scalar(self.d),
            "e": _json_scalar(self.e),
            "chi_coefficients": [_json_scalar(c) for c in _dense(self.chi)],
            "exponent": {
                "c6": _json_scalar(self.exponent.c6),
                "c4": _json_scalar(self.exponent.c4),
                "c2": _json_scalar(self.exponent.c2),
            },
        }


def _dense(p: UniPoly) -> list:
    return list(p.coeffs) if p.coeffs else [Fraction(0)]


def _json_scalar(v):
    if isinstance(v, int) and not isinstance(v, bool):
        v = Fraction(v)
    return scalar_to_json(v)


def chi_coefficients(P: dict, n: int, E, a) -> UniPoly:
    """``chi`` from the energy polynomials evaluated at ``E``.

    even: coefficient of ``x^(2k)`` is ``(-1)^k P_(2k)(E) / ((2k)! (2 sqrt a)^(3k))``
    odd:  coefficient of ``x^(2k+1)`` is ``(-1)^k P_(2k+1)(E) / ((2k+1)! (2 sqrt a)^(3k))``
    """
    s = n % 2
    two_r = 2 * _sqrt_a(a)
    dec = isinstance(E, Decimal)
    coeffs = [Decimal(0) if dec else Fraction(0)] * (n + 1)
    for k in range((n - s) // 2 + 1):
        idx = 2 * k + s
        scale = Fraction((-1) ** k, factorial(idx)) / two_r ** (3 * k)
        if dec:
            coeffs[idx] = P[idx].to_decimal()(E) * to_decimal(scale)
        else:
            coeffs[idx] = simplify(P[idx](E) * scale)
    return UniPoly(coeffs, "x")


def _surd_field_squarefree(R: UniPoly) -> UniPoly:
    g = R.gcd(R.diff())
    return R.exact_div(g) if g.degree() > 0 else R


def _is_rational_poly(p: UniPoly) -> bool:
    return all(not isinstance(c, Surd) or c.q == 0 for c in p.coeffs)


def _candidate_energies(R: UniPoly, digits: int):
    """Real roots of ``R`` as exact scalars when recognisable, else Decimals."""
    S = _surd_field_squarefree(R.map(simplify))
    if S.degree() < 1:
        return []
    if S.degree() == 1:
        return [simplify(-S.coeff(0) / S.coeff(1))]
    out = []
    if _is_rational_poly(S):
        rat = S.map(lambda v: v.p if isinstance(v, Surd) else Fraction(v))
        for root in real_roots(rat, None, digits):
            if root.exact is not None:
                out.append(root.exact)
                continue
            guess = Fraction(root.value).limit_denominator(10 ** max(digits // 3, 6))
            out.append(guess if rat(guess) == 0 else root.value)
        return out
    with decimal.localcontext() as ctx:
        ctx.prec = digits + 20
        Sd = S.to_decimal()
        return [root.value for root in real_roots(Sd, None, digits, precision=ctx.prec)]


def _e_candidates(PT_e: UniPoly, C_e: UniPoly, E, digits: int):
    """Values of ``e`` making both polynomials vanish at fixed ``E``."""
    if not isinstance(E, Decimal):
        PT = PT_e.map(simplify)
        C = C_e.map(simplify)
        if PT.is_zero():
            g = C
        elif C.is_zero():
            g = PT
        else:
            g = PT.gcd(C)
        if g.degree() < 1:
            return []
        if g.degree() == 1:
            return [simplify(-g.coeff(0) / g.coeff(1))]
        if _is_rational_poly(g):
            rat = g.map(lambda v: v.p if isinstance(v, Surd) else Fraction(v))
            return [r.exact if r.exact is not None else r.value for r in real_roots(rat, None, digits)]
        return [r.value for r in real_roots(g.to_decimal(), None, digits)]
    PT = PT_e.to_decimal()
    C = C_e.to_decimal()
    polys = sorted((p for p in (PT, C) if p.degree() >= 1), key=lambda p: p.degree())
    if not polys:
        return []
    primary = polys[0]
    others = [p for p in (PT, C) if p is not primary]
    out = []
    tol = Decimal(10) ** (-(digits // 2))
    for root in real_roots(primary, None, digits):
        ok = True
        for other in others:
            val = abs(other(root.value))
            scale = sum(abs(c) * abs(root.value) ** k for k, c in enumerate(other.coeffs)) or Decimal(1)
            if val > tol * scale:
                ok = False
        if ok:
            out.append(root.value)
    return out


def solve_state(a, b, c, parity: str | None, n: int, digits: int = 30) -> list[QesSolution]:
    """All real exact states of degree ``n`` for the given ``a, b, c``.

    ``d`` follows from the degree condition.  ``(E, e)`` are the common real
    zeros of the terminal energy polynomial and the extra constraint, found by
    eliminating ``e`` with a resultant and isolating the real roots in ``E``.
    Energies that lie in Q(sqrt(a)) are returned exactly; the rest as Decimals
    with ``digits`` significant digits.
    """
    parity = _parity_of(n, parity)
    a, b, c = (_exact(v) for v in (a, b, c))
    if a <= 0:
        raise ValueError("a must be positive")
    d = degree_condition_d(a, b, c, n)
    sym = _symbolic_polys(a, b, c, n)
    PT = sym[n + 2]
    C = _symbolic_constraint(a, b, c, n, sym)
    R = resultant(PT, C)
    if not isinstance(R, UniPoly):
        R = UniPoly([R], "E")
    if R.is_zero():
        raise ArithmeticError("terminal polynomial and constraint share a factor in e")
    V0 = Potential(a, b, c)
    exponent = build_exponent(V0)
    sols = []
    work = digits + 10
    with decimal.localcontext() as ctx:
        ctx.prec = work + 10
        for E in _candidate_energies(R, work):
            if isinstance(E, Decimal):
                PT_E, C_E = _at_E_decimal(PT, E), _at_E_decimal(C, E)
            else:
                PT_E, C_E = _at_E(PT, E), _at_E(C, E)
            for e in _e_candidates(PT_E, C_E, E, work):
                if isinstance(E, Decimal) or isinstance(e, Decimal):
                    E_use, e_use = to_decimal(E), to_decimal(e)
                    polys = {k: _at_e_decimal(v, e_use) for k, v in sym.items()}
                    chi = chi_coefficients(polys, n, E_use, a).map(lambda v: _round(v, digits))
                    E_out, e_out = _round(E_use, digits), _round(e_use, digits)
                else:
                    polys = {k: _at_e(v, e) for k, v in sym.items()}
                    chi = chi_coefficients(polys, n, E, a)
                    E_out, e_out = E, e
                sols.append(QesSolution(n, parity, E_out, d, e_out, chi, exponent, a, b, c))
    if not sols:
        raise NoSolution(f"no real (E, e) pair for a degree-{n} state")
    sols.sort(key=lambda s: to_decimal(s.E))
    return sols


def solve_potential(V: Potential, n: int, digits: int = 30) -> list[QesSolution]:
    """Exact states of degree ``n`` for a fully specified potential.

    Raises :class:`NoSolution` when the degree condition fails or the
    terminal polynomial and the constraint have no common real root.
    """
    parity = _parity_of(n, None)
    if degree_condition_residual(V, parity, n) != 0:
        raise NoSolution(f"the potential admits no degree-{n} polynomial factor")
    a, b, c, d, e = V.coefficients()
    sym = _symbolic_polys(a, b, c, n)
    polys = {k: _at_e(v, e) for k, v in sym.items()}
    PT = polys[n + 2].map(simplify)
    C = _at_e(_symbolic_constraint(a, b, c, n, sym), e).map(simplify)
    if PT.is_zero():
        G = C
    elif C.is_zero():
        G = PT
    else:
        G = PT.gcd(C)
    if G.is_zero() or G.degree() < 1:
        raise NoSolution(f"no energy satisfies both conditions for a degree-{n} state")
    exponent = build_exponent(V)
    sols = []
    with decimal.localcontext() as ctx:
        ctx.prec = digits + 20
        for E in _candidate_energies(G, digits + 10):
            if isinstance(E, Decimal):
                chi = chi_coefficients(polys, n, E, a).map(lambda v: _round(v, digits))
                E = _round(E, digits)
            else:
                chi = chi_coefficients(polys, n, E, a)
            sols.append(QesSolution(n, parity, E, d, e, chi, exponent, a, b, c))
    if not sols:
        raise NoSolution(f"no real energy for a degree-{n} state")
    sols.sort(key=lambda s: to_decimal(s.E))
    return sols


def _round(v: Decimal, digits: int) -> Decimal:
    with decimal.localcontext() as ctx:
        ctx.prec = digits
        return +v


def _at_E_decimal(poly_e: UniPoly, E: Decimal) -> UniPoly:
    return UniPoly([_E_part(coeff).to_decimal()(E) for coeff in poly_e.coeffs], "e")


def _at_e_decimal(poly_e: UniPoly, e: Decimal) -> UniPoly:
    acc = UniPoly([], "E")
    for coeff in reversed(poly_e.coeffs):
        acc = acc.scale(e) + _E_part(coeff).to_decimal()
    return acc


# -- wavefunctions and verification ------------------------------------------------


@dataclass(frozen=True)
class Wavefunction:
    """Un-normalised ``psi(x) = chi(x) * exp(-phi(x))``."""

    chi: UniPoly
    exponent: AsymptoticExponent

    def __call__(self, x, digits: int = 30) -> Decimal:
        with decimal.localcontext() as ctx:
            ctx.prec = digits + 5
            xd = to_decimal(x) if not isinstance(x, Decimal) else x
            chi = self.chi.to_decimal()(xd) if self.chi.coeffs else Decimal(0)
            phi = (
                (to_decimal(self.exponent.c6) * xd * xd + to_decimal(self.exponent.c4)) * xd * xd
                + to_decimal(self.exponent.c2)
            ) * xd * xd
            val = chi * (-phi).exp()
            ctx.prec = digits
            return +val


def wavefunction(sol: QesSolution) -> Wavefunction:
    return Wavefunction(sol.chi, sol.exponent)


@dataclass
class ResidualReport:
    """``-psi'' + (V - E) psi = R(x) exp(-phi)``; ``polynomial`` is ``R``."""

    polynomial: UniPoly
    exact: bool
    max_abs: object = field(default=None)

    @property
    def is_zero(self) -> bool:
        return self.polynomial.is_zero()


def verify(V, E, psi, digits: int = 60) -> ResidualReport:
    """Residual of the Schrodinger equation for ``psi = chi * exp(-phi)``.

    ``V`` is a Potential or a tuple ``(a, b, c, d, e)``; ``psi`` is a
    :class:`Wavefunction`, a :class:`QesSolution`, or a ``(chi, exponent)``
    pair.  The remaining polynomial is

        R = -chi'' + 2 phi' chi' + (phi'' - phi'^2 + V - E) chi.

    With exact inputs ``R`` is exact; if anything is a Decimal the whole
    computation runs in Decimal arithmetic at ``digits`` digits.
    """
    if isinstance(psi, (QesSolution, Wavefunction)):
        chi, exponent = psi.chi, psi.exponent
    else:
        chi, exponent = psi
    a, b, c, d, e = V.coefficients() if isinstance(V, Potential) else tuple(V)
    phi = exponent.as_poly()
    values = [E, a, b, c, d, e, *chi.coeffs, *phi.coeffs]
    if not any(isinstance(v, Decimal) for v in values):
        Vp = UniPoly([0, 0, e, 0, d, 0, c, 0, b, 0, a], "x")
        R = _residual(Vp, E, chi, phi).map(simplify)
        return ResidualReport(R, True, max((abs(v) for v in R.coeffs), default=Fraction(0)))
    with decimal.localcontext() as ctx:
        ctx.prec = digits
        Vp = UniPoly([to_decimal(v) for v in (0, 0, e, 0, d, 0, c, 0, b, 0, a)], "x")
        R = _residual(Vp, to_decimal(E), chi.to_decimal(), phi.to_decimal())
        return ResidualReport(R, False, max((abs(v) for v in R.coeffs), default=Decimal(0)))


def _residual(Vp: UniPoly, E, chi: UniPoly, phi: UniPoly) -> UniPoly:
    dphi = phi.diff()
    s = dphi.diff() - dphi * dphi + Vp - UniPoly([E], "x")
    return -chi.diff().diff() + (dphi * chi.diff()).scale(2) + s * chi
