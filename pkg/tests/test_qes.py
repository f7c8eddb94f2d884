from dataclasses import replace
from decimal import Decimal, localcontext
from fractions import Fraction as F

import mpmath
import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from expanded_conditions import holds
from decatic.asymptotics import Potential, build_exponent
from decatic.numerics.scalars import Surd, to_decimal
from decatic.polyode import ode_from_potential, polynomial_solutions
from decatic.qes import (
    NoSolution,
    QesSolution,
    admissible_state,
    closed_form_first,
    closed_form_ground,
    constraint_residual,
    degree_condition_d,
    degree_condition_residual,
    energy_polynomials,
    solve_potential,
    solve_state,
    verify,
    wavefunction,
)

# 60-digit oracles (mpmath, from the cube-root closed forms of the degree-2 states)
E2_PLUS = Decimal("4.10101030639651414119138174607402360307083034421038965041496")
e2_PLUS = Decimal("-5.50644367188913698873890292677893879079197943009817331240561")
E2_MINUS = Decimal("2.85849973374581725120640523178911089842092845545062678102683")
e2_MINUS = Decimal("0.419364336551590349388780916705234062193656339014840680810944")

GROUND = Potential(1, -1, 1, F(-43, 8), F(105, 64))
FIRST = Potential(1, -1, 1, F(-59, 8), F(169, 64))


def _close(x, y, tol="1e-40"):
    with localcontext() as ctx:
        ctx.prec = 80
        return abs(to_decimal(x) - to_decimal(y)) < Decimal(tol)


# -- degree condition / admissibility ------------------------------------------------


def test_degree_condition_examples():
    assert degree_condition_residual(GROUND, "even", 0) == 0
    assert degree_condition_residual(FIRST, "odd", 1) == 0
    pure = Potential(1)
    for n in range(6):
        assert degree_condition_residual(pure, None, n) == 8 * (5 + 2 * n)


def test_parity_mismatch_rejected():
    with pytest.raises(ValueError):
        degree_condition_residual(GROUND, "odd", 0)


def test_admissible_state_examples():
    assert admissible_state(GROUND) == ("even", 0)
    assert admissible_state(FIRST) == ("odd", 1)
    assert admissible_state(Potential(1, 1, 1, F(-69, 8))) == ("even", 2)
    assert admissible_state(Potential(1)) is None
    assert admissible_state(Potential(1, e=7)) is None


@settings(max_examples=50, deadline=None)
@given(
    st.fractions(min_value=F(1, 100), max_value=100),
    st.fractions(min_value=F(1, 100), max_value=100),
    st.fractions(min_value=F(1, 100), max_value=100),
    st.integers(0, 3),
)
def test_no_go_families(a, c, e, family):
    c_on, e_on = family & 1, family & 2
    V = Potential(a, 0, c if c_on else 0, 0, e if e_on else 0)
    assert admissible_state(V) is None


# -- energy polynomials ----------------------------------------------------------------


def _as_sympy(p, E):
    return sum(sp.Rational(F(c).numerator, F(c).denominator) * E**i for i, c in enumerate(p.coeffs))


def test_low_energy_polynomials():
    a, b, c, e = 4, 3, F(1, 2), F(-2, 3)
    r3 = 8  # a^(3/2)
    K = b * b - 4 * a * c
    ev = energy_polynomials(a, b, c, e, "even", 2)
    od = energy_polynomials(a, b, c, e, "odd", 3)
    assert list(ev[0].coeffs) == [1]
    assert list(ev[2].coeffs) == [K, 8 * r3]
    assert list(od[3].coeffs) == [3 * K, 8 * r3]
    W96 = 96 * 32 * b - b**4 + 8 * a * b * b * c - 16 * a * a * c * c + 64 * a**3 * e
    E = sp.Symbol("E")
    want = sp.expand((8 * r3 * E + 5 * K) * (8 * r3 * E + K) + 2 * W96)
    assert sp.expand(_as_sympy(ev[4], E) - want) == 0


@pytest.mark.parametrize("n", [0, 1, 2, 3, 4])
def test_recurrence_matches_series_solution(n):
    # chi from a power series ansatz solved order by order in sympy
    x, E = sp.symbols("x E")
    a, b, c, e = 1, -1, 2, sp.Rational(3, 7)
    d = degree_condition_d(a, b, c, n)
    d = sp.Rational(d.numerator, d.denominator)
    ex = build_exponent(Potential(a, b, c, d, 0))
    phi = sum(sp.Rational(F(v).numerator, F(v).denominator) * x**k for v, k in [(ex.c6, 6), (ex.c4, 4), (ex.c2, 2)])
    V = a * x**10 + b * x**8 + c * x**6 + d * x**4 + e * x**2
    s = n % 2
    N = n + 2
    ks = sp.symbols(f"k0:{N + 1}")
    chi = sum(ks[k] * x**k for k in range(N + 1))
    dp = sp.diff(phi, x)
    R = sp.expand(-sp.diff(chi, x, 2) + 2 * dp * sp.diff(chi, x) + (sp.diff(phi, x, 2) - dp**2 + V - E) * chi)
    sub = {ks[0]: 1 - s, ks[1]: s}
    for k in range(2, N + 1):
        sub[ks[k]] = sp.expand(sp.solve(R.coeff(x, k - 2).subs(sub), ks[k])[0])
    P = energy_polynomials(a, b, c, F(3, 7), None, n)
    for k in sorted(P.polys):
        j = (k - s) // 2
        want = sp.expand(sub[ks[k]] * (-1) ** j * sp.factorial(k) * 2 ** (3 * j))
        assert sp.expand(_as_sympy(P[k], E) - want) == 0


def test_constraint_low_degrees():
    a, b, c = 1, 2, 3
    for e in (F(0), F(5, 3), F(-7)):
        base = -b**4 + 8 * a * b * b * c - 16 * a * a * c * c + 64 * a**3 * e
        assert constraint_residual(a, b, c, e, "even", 0, F(11)) == 96 * b + base
        assert constraint_residual(a, b, c, e, "odd", 1, F(11)) == 160 * b + base


def test_constraint_degree_three_form():
    # odd degree 3: (288 a^(5/2) b + W) P_3 + 12288 a^5 must vanish
    a, b, c, e, Ev = 1, 2, 3, F(5, 3), F(7, 2)
    W288 = 288 * b - b**4 + 8 * a * b * b * c - 16 * a * a * c * c + 64 * a**3 * e
    P3 = 8 * Ev + 3 * (b * b - 4 * a * c)
    assert constraint_residual(a, b, c, e, None, 3, Ev) == W288 * P3 + 12288


# -- closed forms and solve_state ------------------------------------------------------


def test_closed_forms():
    assert closed_form_ground(1, -1, 1) == (F(3, 8), F(-43, 8), F(105, 64))
    assert closed_form_first(1, -1, 1) == (F(9, 8), F(-59, 8), F(169, 64))
    assert closed_form_ground("0.01", "0.1", "1.0") == (F(15, 4), F(13, 4), F(201, 16))
    assert closed_form_first("0.01", "0.1", "1.0") == (F(45, 4), F(61, 20), F(185, 16))
    assert closed_form_ground(1, 1, 1)[0] == F(3, 8)


def test_closed_form_in_surd_field():
    E, d, e = closed_form_ground(2, 1, 0)
    assert isinstance(E, Surd) and E.radicand == 2
    (sol,) = solve_state(2, 1, 0, None, 0)
    assert (sol.E, sol.d, sol.e) == (E, d, e)


def test_solve_state_low_states():
    (g,) = solve_state(1, -1, 1, "even", 0)
    assert (g.E, g.d, g.e) == (F(3, 8), F(-43, 8), F(105, 64))
    assert list(g.chi.coeffs) == [1]
    (f,) = solve_state(1, -1, 1, "odd", 1)
    assert (f.E, f.d, f.e) == (F(9, 8), F(-59, 8), F(169, 64))
    assert list(f.chi.coeffs) == [0, 1]


def test_solve_state_degree_two_cubic_irrational():
    (s,) = solve_state(1, 1, 1, "even", 2, digits=60)
    assert s.d == F(-69, 8) and not s.exact
    assert _close(s.E, E2_PLUS) and _close(s.e, e2_PLUS)
    # x^2 coefficient of chi is -(8E - 3)/16
    with localcontext() as ctx:
        ctx.prec = 80
        assert _close(s.chi.coeff(2), -(8 * E2_PLUS - 3) / 16)
    (m,) = solve_state(1, -1, 1, "even", 2, digits=60)
    assert m.d == F(-75, 8)
    assert _close(m.E, E2_MINUS) and _close(m.e, e2_MINUS)


def test_degree_two_energy_matches_cube_root_formula():
    mpmath.mp.dps = 70
    C = 513 + 8 * mpmath.sqrt(4215)
    E = (7 + 4 * mpmath.cbrt(C) / mpmath.mpf(3) ** (mpmath.mpf(2) / 3) - 52 / mpmath.cbrt(3 * C)) / 8
    assert abs(E - mpmath.mpf(str(E2_MINUS))) < mpmath.mpf("1e-55")
    E = (21 + 4 * mpmath.cbrt(1971 - 24 * mpmath.sqrt(6423)) + 4 * mpmath.cbrt(1971 + 24 * mpmath.sqrt(6423))) / 24
    assert abs(E - mpmath.mpf(str(E2_PLUS))) < mpmath.mpf("1e-55")


def test_solve_state_rejects_nonpositive_a():
    with pytest.raises(ValueError):
        solve_state(0, 1, 1, None, 0)


PARAMS = [(1, 0, 0), (1, -1, 1), (4, 2, 1), (1, 1, 1), (2, 1, 0)]


@pytest.mark.parametrize("abc", PARAMS)
@pytest.mark.parametrize("n", range(5))
def test_expanded_conditions_hold(abc, n):
    sols = solve_state(*abc, None, n, digits=60)
    assert sols
    for s in sols:
        assert holds(s)


def test_expanded_conditions_detect_perturbation():
    for n in range(5):
        s = solve_state(1, 1, 1, None, n, digits=60)[0]
        bump = F(1, 10**30) if s.exact else Decimal("1e-30")
        assert not holds(replace(s, e=s.e + bump))


@pytest.mark.parametrize("n", range(5))
def test_parity_structure(n):
    for s in solve_state(4, 2, 1, None, n, digits=40):
        assert s.parity == ("even" if n % 2 == 0 else "odd")
        assert s.chi.degree() == n
        for k in range(n % 2 == 0, n + 1, 2):
            assert s.chi.coeff(k) == 0


@pytest.mark.parametrize("abc", PARAMS)
@pytest.mark.parametrize("n", range(4))
def test_solutions_verify(abc, n):
    for s in solve_state(*abc, None, n, digits=60):
        rep = verify(s.coefficients(), s.E, s)
        if s.exact:
            assert rep.is_zero
        else:
            assert rep.max_abs < Decimal("1e-40")


# -- fully specified potentials ----------------------------------------------------------


def _rational_degree_two():
    b = F(-15, 4)
    c = b * b / 4
    return Potential(1, b, c, degree_condition_d(1, b, c, 2), F(41, 8))


def test_solve_potential():
    (s,) = solve_potential(GROUND, 0)
    assert s.E == F(3, 8)
    (t,) = solve_potential(_rational_degree_two(), 2)
    assert t.E == 1 and list(t.chi.coeffs) == [1, 0, F(-1, 2)]
    with pytest.raises(NoSolution):
        solve_potential(GROUND, 2)
    with pytest.raises(NoSolution):
        solve_potential(Potential(1, 0, 0, -5, 1), 0)


def test_agreement_with_polyode():
    for V, n in [(GROUND, 0), (FIRST, 1), (_rational_degree_two(), 2)]:
        (s,) = solve_potential(V, n)
        (y,) = polynomial_solutions(ode_from_potential(V, s.E), n)
        lead = s.chi.coeff(n % 2)
        assert [c / lead for c in s.chi.coeffs] == [c / y.coeffs[n % 2] for c in y.coeffs]


# -- verification and wavefunctions ------------------------------------------------------


def test_verify_examples():
    (g,) = solve_state(1, -1, 1, None, 0)
    assert verify(GROUND, F(3, 8), g).is_zero
    rep = verify(GROUND, F(1, 2), g)
    # residual (3/8 - E) with the -psi'' + (V - E) psi orientation
    assert list(rep.polynomial.coeffs) == [F(-1, 8)]


def test_wavefunction_values():
    (g,) = solve_state(1, -1, 1, None, 0)
    (f,) = solve_state(1, -1, 1, None, 1)
    mpmath.mp.dps = 40
    for x in (F(0), F(1, 2), F(-1), F(3, 2)):
        xm = mpmath.mpf(x.numerator) / x.denominator
        want = mpmath.exp(-3 * xm**2 / 16 + xm**4 / 8 - xm**6 / 6)
        assert abs(mpmath.mpf(str(wavefunction(g)(x, 30))) - want) < mpmath.mpf("1e-28")
        assert abs(mpmath.mpf(str(wavefunction(f)(x, 30))) - xm * want) < mpmath.mpf("1e-28")


def test_json_round_trip():
    (g,) = solve_state(1, -1, 1, None, 0)
    out = g.to_json()
    assert out["E"] == "3/8" and out["d"] == "-43/8" and out["chi_coefficients"] == ["1/1"]
    assert isinstance(g, QesSolution) and g.potential == GROUND
