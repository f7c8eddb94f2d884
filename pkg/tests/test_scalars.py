from decimal import Decimal
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from decatic.numerics.scalars import (
    Surd,
    as_fraction,
    rational_sqrt,
    scalar_from_json,
    scalar_to_json,
    to_decimal,
)

rationals = st.fractions(max_denominator=50).filter(lambda f: abs(f) < 10**6)
radicands = st.sampled_from([Fraction(2), Fraction(3), Fraction(1, 25), Fraction(4), Fraction(7, 5)])


def test_as_fraction_parses_decimal_strings_exactly():
    assert as_fraction("0.877") == Fraction(877, 1000)
    assert as_fraction("-43/8") == Fraction(-43, 8)
    assert as_fraction(Decimal("0.04")) == Fraction(1, 25)
    assert as_fraction(3) == Fraction(3)


def test_as_fraction_refuses_floats_and_bools():
    with pytest.raises(TypeError):
        as_fraction(0.1)
    with pytest.raises(TypeError):
        as_fraction(True)
    with pytest.raises(ValueError):
        as_fraction("abc")


def test_rational_sqrt():
    assert rational_sqrt(Fraction(4, 9)) == Fraction(2, 3)
    assert rational_sqrt(Fraction(2)) is None
    assert rational_sqrt(Fraction(-1)) is None


def test_perfect_square_radicand_collapses():
    s = Surd.sqrt_of(Fraction(1, 100))
    assert s.q == 0 and s.p == Fraction(1, 10)
    assert s == Fraction(1, 10)
    assert hash(s) == hash(Fraction(1, 10))


def test_mismatched_radicands_refused():
    with pytest.raises(ValueError):
        Surd.sqrt_of(2) + Surd.sqrt_of(3)
    # a rational surd mixes with anything
    assert Surd(1, 0, 3) + Surd.sqrt_of(2) == Surd(1, 1, 2)


def test_equality_is_exact():
    assert Surd(1, 2, 3) == Surd(Fraction(2, 2), 2, 3)
    assert Surd(1, 2, 3) != Surd(1, 2, 5)
    assert Surd(1, 2, 3) != Surd(1, 3, 3)


@given(rationals, rationals, radicands)
def test_conjugate_product_is_norm(p, q, a):
    s = Surd(p, q, a)
    prod = s * s.conjugate()
    expected = p * p - a * q * q if rational_sqrt(a) is None else s.p * s.p
    assert prod == expected


@given(rationals, rationals, rationals, rationals, radicands)
def test_field_operations(p1, q1, p2, q2, a):
    x, y = Surd(p1, q1, a), Surd(p2, q2, a)
    assert (x + y) - y == x
    assert x * y == y * x
    if y != 0:
        assert (x / y) * y == x


@given(rationals, rationals)
def test_sign_matches_decimal(p, q):
    s = Surd(p, q, 2)
    d = s.to_decimal()
    if s == 0:
        assert s.sign() == 0
    else:
        assert s.sign() == (1 if d > 0 else -1)


def test_pow_and_inverse():
    r = Surd.sqrt_of(2)
    assert r ** 2 == 2
    assert r ** 5 == Surd(0, 4, 2)
    assert (1 + r).inverse() * (1 + r) == 1


def test_decimal_mixing_gives_decimal():
    out = Surd.sqrt_of(2) * Decimal(1)
    assert isinstance(out, Decimal)
    assert abs(out - Decimal(2).sqrt()) < Decimal("1e-25")


def test_to_decimal_and_str():
    assert to_decimal(Fraction(3, 8)) == Decimal("0.375")
    assert str(Surd(Fraction(7, 32), -5, 2)) == "7/32 - 5*sqrt(2)"
    assert str(Surd(0, 1, 2)) == "sqrt(2)"


def test_json_round_trip():
    for v in (Fraction(-43, 8), Surd(1, Fraction(3, 4), 2), Decimal("1.25")):
        back = scalar_from_json(scalar_to_json(v))
        assert back == v
    assert scalar_to_json(Fraction(3, 8)) == "3/8"
    assert scalar_to_json(Surd(1, 2, 3)) == {"p": "1/1", "q": "2/1", "a": "3/1"}
    assert scalar_from_json("0.5", exact=True) == Fraction(1, 2)
