"""Planted-solution oracle for polynomial-coefficient ODEs.

Instances are built with sympy linear algebra, independently of the module
under test: pick a polynomial ``y`` and solve for ODE coefficients that it
satisfies.
"""

import random
from fractions import Fraction as F

import sympy as sp

from decatic.polyode import OdeCoefficients, polynomial_solutions


def plant(rng: random.Random, n: int):
    """Random ODE with a prescribed degree-n polynomial solution y, y(0)=1."""
    x = sp.Symbol("x")
    cs = [sp.Integer(1)] + [sp.Rational(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(n)]
    if n >= 1 and cs[n] == 0:
        cs[n] = sp.Integer(1)
    y = sum(c * x**k for k, c in enumerate(cs))
    unknowns = sp.symbols("u0:18")
    a6, a5, tau = unknowns[:7], unknowns[7:13], unknowns[13:]
    A6 = sum(a6[j] * x ** (6 - j) for j in range(7))
    A5 = sum(a5[j] * x ** (5 - j) for j in range(6))
    T4 = sum(tau[j] * x ** (4 - j) for j in range(5))
    expr = sp.expand(A6 * sp.diff(y, x, 2) + A5 * sp.diff(y, x) - T4 * y)
    eqs = sp.Poly(expr, x).all_coeffs()
    M = sp.Matrix([[sp.diff(e, u) for u in unknowns] for e in eqs])
    basis = M.nullspace()
    while True:
        v = sum((rng.randint(-3, 3) * b for b in basis), sp.zeros(18, 1))
        vals = [F(int(sp.numer(t)), int(sp.denom(t))) for t in v]
        if (vals[0] != 0 or vals[7] != 0) and any(vals[:7]):
            break
    ode = OdeCoefficients(tuple(vals[:7]), tuple(vals[7:13]), tuple(vals[13:]))
    return ode, [F(int(sp.numer(c)), int(sp.denom(c))) for c in cs]


def proportional(u, v):
    k = next(i for i, c in enumerate(v) if c != 0)
    r = u[k] / v[k]
    return all(a == r * b for a, b in zip(u, v))


def recovered(ode, n, target):
    try:
        sols = polynomial_solutions(ode, n)
    except ValueError:
        return False
    if not sols:
        return False
    if len(sols) == 1:
        return proportional(list(sols[0].coeffs), target)
    # target must lie in the returned span
    Msp = sp.Matrix([[sp.Rational(c.numerator, c.denominator) for c in s.coeffs] for s in sols]).T
    t = sp.Matrix([sp.Rational(c.numerator, c.denominator) for c in target])
    return Msp.rank() == Msp.row_join(t).rank()
