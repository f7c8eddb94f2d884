"""Exact scalars: rationals, elements of Q(sqrt(a)), and decimal conversions.

Rationals are plain :class:`fractions.Fraction` values.  :class:`Surd` holds
``p + q*sqrt(radicand)`` with rational ``p``, ``q``; every exact eigenvalue of
the decatic problem lives in such a field with ``radicand`` equal to the
coefficient of ``x**10``.
"""

from __future__ import annotations

import decimal
from decimal import Decimal
from fractions import Fraction
from math import isqrt
from numbers import Rational as _RationalABC

__all__ = [
    "Surd",
    "as_fraction",
    "is_exact",
    "rational_sqrt",
    "scalar_from_json",
    "scalar_to_json",
    "to_decimal",
]


def as_fraction(value) -> Fraction:
    """Convert ints, Fractions and numeric strings to a Fraction, exactly.

    Strings may be integers, ``"p/q"`` or decimal literals (``"0.877"``).
    Binary floats are refused so that no coefficient is ever silently rounded.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, _RationalABC)):
        return Fraction(value)
    if isinstance(value, Decimal):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except ValueError:
            raise ValueError(f"cannot parse {value!r} as an exact rational") from None
    if isinstance(value, Surd) and value.q == 0:
        return value.p
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


def rational_sqrt(value: Fraction) -> Fraction | None:
    """Return the rational square root of ``value`` or None if it is irrational."""
    value = Fraction(value)
    if value < 0:
        return None
    num, den = value.numerator, value.denominator
    rn, rd = isqrt(num), isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


def _sqrt_upper(value: Fraction) -> Fraction:
    # rational r with r >= sqrt(value)
    num, den = value.numerator, value.denominator
    return Fraction(isqrt(num * den) + 1, den)


class Surd:
    """The number ``p + q*sqrt(radicand)`` with rational ``p``, ``q`` and ``radicand > 0``.

    When the radicand is the square of a rational the value collapses to a
    plain rational (``q`` becomes zero).  Two surds with ``q != 0`` combine
    only when their radicands agree.  A surd with ``q == 0`` behaves as a
    rational and mixes freely with any other surd.
    """

    __slots__ = ("p", "q", "radicand")

    def __init__(self, p=0, q=0, radicand=1):
        p = as_fraction(p)
        q = as_fraction(q)
        radicand = as_fraction(radicand)
        if radicand <= 0:
            raise ValueError("radicand must be positive")
        if q != 0:
            root = rational_sqrt(radicand)
            if root is not None:
                p, q = p + q * root, Fraction(0)
        self.p = p
        self.q = q
        self.radicand = radicand

    @classmethod
    def sqrt_of(cls, radicand) -> "Surd":
        """``sqrt(radicand)`` as a surd (a rational when radicand is a square)."""
        return cls(0, 1, radicand)

    # -- coercion -----------------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Surd):
            if self.q != 0 and other.q != 0 and self.radicand != other.radicand:
                raise ValueError(
                    f"cannot combine sqrt({self.radicand}) and sqrt({other.radicand})"
                )
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Surd(other, 0, self.radicand)
        return None

    def _radicand_with(self, other: "Surd") -> Fraction:
        return self.radicand if self.q != 0 else other.radicand

    @property
    def is_rational(self) -> bool:
        return self.q == 0

    # -- arithmetic ---------------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, Decimal):
            return self.to_decimal() + other
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Surd(self.p + o.p, self.q + o.q, self._radicand_with(o))

    __radd__ = __add__

    def __neg__(self):
        return Surd(-self.p, -self.q, self.radicand)

    def __pos__(self):
        return self

    def __sub__(self, other):
        if isinstance(other, Decimal):
            return self.to_decimal() - other
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Surd(self.p - o.p, self.q - o.q, self._radicand_with(o))

    def __rsub__(self, other):
        if isinstance(other, Decimal):
            return other - self.to_decimal()
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, Decimal):
            return self.to_decimal() * other
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        rad = self._radicand_with(o)
        return Surd(
            self.p * o.p + self.q * o.q * rad,
            self.p * o.q + self.q * o.p,
            rad,
        )

    __rmul__ = __mul__

    def conjugate(self) -> "Surd":
        return Surd(self.p, -self.q, self.radicand)

    def norm(self) -> Fraction:
        """``p**2 - radicand*q**2``, the product with the conjugate."""
        return self.p * self.p - self.radicand * self.q * self.q

    def inverse(self) -> "Surd":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero surd")
        return Surd(self.p / n, -self.q / n, self.radicand)

    def __truediv__(self, other):
        if isinstance(other, Decimal):
            return self.to_decimal() / other
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        if isinstance(other, Decimal):
            return other / self.to_decimal()
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = Surd(1, 0, self.radicand)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    # -- ordering -----------------------------------------------------------------

    def sign(self) -> int:
        """Exact sign of the value."""
        sp = (self.p > 0) - (self.p < 0)
        sq = (self.q > 0) - (self.q < 0)
        if sq == 0:
            return sp
        if sp == 0 or sp == sq:
            return sq
        # opposite signs: compare p**2 with q**2 * radicand
        lhs = self.p * self.p
        rhs = self.q * self.q * self.radicand
        if lhs == rhs:
            return 0
        return sp if lhs > rhs else sq

    def _cmp(self, other) -> int:
        if isinstance(other, Decimal):
            d = self.to_decimal() - other
            return (d > 0) - (d < 0)
        o = self._coerce(other)
        if o is None:
            raise TypeError(f"cannot compare Surd with {type(other).__name__}")
        return (self - o).sign()

    def __eq__(self, other):
        if isinstance(other, Surd):
            if self.q == 0 and other.q == 0:
                return self.p == other.p
            return self.p == other.p and self.q == other.q and self.radicand == other.radicand
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.q == 0 and self.p == other
        return NotImplemented

    def __hash__(self):
        if self.q == 0:
            return hash(self.p)
        return hash((self.p, self.q, self.radicand))

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __bool__(self):
        return self.p != 0 or self.q != 0

    # -- conversions --------------------------------------------------------------

    def to_decimal(self) -> Decimal:
        """Value at the precision of the current decimal context."""
        p = _fraction_to_decimal(self.p)
        if self.q == 0:
            return +p
        return p + _fraction_to_decimal(self.q) * _fraction_to_decimal(self.radicand).sqrt()

    def __float__(self):
        with decimal.localcontext() as ctx:
            ctx.prec = 40
            return float(self.to_decimal())

    def upper_abs(self) -> Fraction:
        """A rational upper bound on ``abs(self)``."""
        if self.q == 0:
            return abs(self.p)
        return abs(self.p) + abs(self.q) * _sqrt_upper(self.radicand)

    def __repr__(self):
        if self.q == 0:
            return f"Surd({self.p})"
        return f"Surd({self.p}, {self.q}, {self.radicand})"

    def __str__(self):
        if self.q == 0:
            return str(self.p)
        root = f"sqrt({self.radicand})" if abs(self.q) == 1 else f"{abs(self.q)}*sqrt({self.radicand})"
        if self.p == 0:
            return root if self.q > 0 else f"-{root}"
        sign = "+" if self.q > 0 else "-"
        return f"{self.p} {sign} {root}"


def _fraction_to_decimal(x: Fraction) -> Decimal:
    return Decimal(x.numerator) / Decimal(x.denominator)


def to_decimal(value) -> Decimal:
    """Convert any supported scalar to a Decimal in the current context."""
    if isinstance(value, Decimal):
        return +value
    if isinstance(value, Surd):
        return value.to_decimal()
    if isinstance(value, (int, Fraction)):
        return _fraction_to_decimal(Fraction(value))
    if isinstance(value, str):
        return _fraction_to_decimal(as_fraction(value))
    raise TypeError(f"cannot convert {type(value).__name__} to Decimal")


def is_exact(value) -> bool:
    return isinstance(value, (int, Fraction, Surd)) and not isinstance(value, bool)


def _fraction_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def scalar_to_json(value):
    """Serialize a scalar: rationals as ``"p/q"``, surds as ``{"p","q","a"}``, decimals as strings."""
    if isinstance(value, Surd):
        return {"p": _fraction_str(value.p), "q": _fraction_str(value.q), "a": _fraction_str(value.radicand)}
    if isinstance(value, (int, Fraction)):
        return _fraction_str(Fraction(value))
    if isinstance(value, Decimal):
        return str(value)
    raise TypeError(f"cannot serialize {type(value).__name__}")


def scalar_from_json(obj, exact: bool = False):
    """Inverse of :func:`scalar_to_json`.

    Strings containing ``/`` parse as Fractions.  Other strings parse as
    Decimals unless ``exact`` is set, in which case they become Fractions.
    """
    if isinstance(obj, dict):
        return Surd(as_fraction(obj["p"]), as_fraction(obj["q"]), as_fraction(obj["a"]))
    if isinstance(obj, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(obj, int):
        return Fraction(obj)
    if isinstance(obj, str):
        if "/" in obj or exact:
            return as_fraction(obj)
        return Decimal(obj)
    raise TypeError(f"cannot parse scalar from {obj!r}")
