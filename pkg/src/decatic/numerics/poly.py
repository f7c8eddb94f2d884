"""Dense univariate and bivariate polynomials over exact or decimal scalars.

Coefficients are stored in ascending order.  Exact scalars (int, Fraction,
Surd) and Decimals are never mixed inside one polynomial; the operations
below refuse to combine them so that exact results stay exact.
Coefficients may themselves be :class:`UniPoly` objects, which gives
polynomials over a polynomial ring (used for resultants).
"""

from __future__ import annotations

from decimal import Decimal
from fractions import Fraction

import numpy as np

from .scalars import Surd

__all__ = [
    "BiPoly",
    "UniPoly",
    "poly_diff",
    "poly_mul",
    "resultant",
    "scalar_kind",
]


def scalar_kind(value) -> str:
    """Return ``"exact"``, ``"decimal"`` or ``"poly"`` for a coefficient."""
    if isinstance(value, Decimal):
        return "decimal"
    if isinstance(value, UniPoly):
        return "poly"
    if isinstance(value, (int, Fraction, Surd)) and not isinstance(value, bool):
        return "exact"
    raise TypeError(f"unsupported coefficient type {type(value).__name__}")


def _is_zero(value) -> bool:
    if isinstance(value, UniPoly):
        return value.is_zero()
    return value == 0


class UniPoly:
    """Polynomial ``sum(coeffs[k] * var**k)``."""

    __slots__ = ("coeffs", "var", "_kind")

    def __init__(self, coeffs=(), var: str = "x"):
        cs = list(coeffs)
        while cs and _is_zero(cs[-1]):
            cs.pop()
        kinds = {scalar_kind(c) for c in cs if not _is_zero(c)}
        if len(kinds) > 1:
            raise TypeError(f"mixed coefficient kinds {sorted(kinds)}")
        self.coeffs = tuple(cs)
        self.var = var
        self._kind = kinds.pop() if kinds else None

    @classmethod
    def constant(cls, value, var: str = "x") -> "UniPoly":
        return cls([value], var)

    @classmethod
    def monomial(cls, degree: int, value=1, var: str = "x") -> "UniPoly":
        return cls([0] * degree + [value], var)

    # -- basic queries --------------------------------------------------------------

    @property
    def kind(self):
        return self._kind

    def degree(self) -> int:
        """Degree, with ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lc(self):
        return self.coeffs[-1] if self.coeffs else 0

    def coeff(self, k: int):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            if self.is_zero() and other.is_zero():
                return True
            return self.var == other.var and self.coeffs == other.coeffs
        if self.degree() <= 0:
            return self.coeff(0) == other
        return False

    def __hash__(self):
        return hash((self.var, self.coeffs))

    def __repr__(self):
        return f"UniPoly({list(self.coeffs)!r}, var={self.var!r})"

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if _is_zero(c):
                continue
            term = f"({c})" if k else str(c)
            if k == 1:
                term += f"*{self.var}"
            elif k > 1:
                term += f"*{self.var}^{k}"
            parts.append(term)
        return " + ".join(parts)

    # -- arithmetic -----------------------------------------------------------------

    def _check(self, other: "UniPoly"):
        if self.is_zero() or other.is_zero():
            return
        if self.var != other.var:
            raise TypeError(f"variable mismatch: {self.var} vs {other.var}")
        if self._kind != other._kind:
            raise TypeError(f"scalar kind mismatch: {self._kind} vs {other._kind}")

    def _lift(self, other) -> "UniPoly":
        if isinstance(other, UniPoly) and other.var == self.var:
            return other
        return UniPoly([other], self.var)

    def __add__(self, other):
        o = self._lift(other)
        self._check(o)
        n = max(len(self.coeffs), len(o.coeffs))
        return UniPoly([self.coeff(k) + o.coeff(k) for k in range(n)], self.var if self.coeffs else o.var)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, UniPoly) or other.var != self.var:
            return UniPoly([c * other for c in self.coeffs], self.var)
        self._check(other)
        if self.is_zero() or other.is_zero():
            return UniPoly([], self.var)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, p in enumerate(self.coeffs):
            if _is_zero(p):
                continue
            for j, q in enumerate(other.coeffs):
                out[i + j] = out[i + j] + p * q
        return UniPoly(out, self.var)

    def __rmul__(self, other):
        return UniPoly([other * c for c in self.coeffs], self.var)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = UniPoly([1], self.var) if self._kind != "decimal" else UniPoly([Decimal(1)], self.var)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, factor) -> "UniPoly":
        return UniPoly([c * factor for c in self.coeffs], self.var)

    def map(self, fn) -> "UniPoly":
        """Apply ``fn`` to every coefficient."""
        return UniPoly([fn(c) for c in self.coeffs], self.var)

    def __call__(self, value):
        """Horner evaluation."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def diff(self) -> "UniPoly":
        return UniPoly([k * c for k, c in enumerate(self.coeffs)][1:], self.var)

    def shift(self, x0) -> "UniPoly":
        """Coefficients of ``p(x0 + t)`` in powers of ``t``."""
        cs = list(self.coeffs)
        n = len(cs)
        for i in range(n):
            for k in range(n - 2, i - 1, -1):
                cs[k] = cs[k] + x0 * cs[k + 1]
        return UniPoly(cs, self.var)

    # -- division (field coefficients) ----------------------------------------------

    def __divmod__(self, other: "UniPoly"):
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree()
        lead = other.lc()
        inv = (1 / lead) if not isinstance(lead, (int, Fraction)) else 1 / Fraction(lead)
        quot = [0] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1 - dq, -1, -1):
            c = rem[k + dq] * inv
            quot[k] = c
            if _is_zero(c):
                continue
            for j, q in enumerate(other.coeffs):
                rem[k + j] = rem[k + j] - c * q
        return UniPoly(quot, self.var), UniPoly(rem[:dq], self.var)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> "UniPoly":
        """Quotient when ``other`` divides ``self`` exactly; ValueError otherwise.

        Works for polynomial-valued coefficients too (the remainder test is
        exact), which is what fraction-free elimination needs.
        """
        if not isinstance(other, UniPoly) or other.var != self.var:
            out = []
            for c in self.coeffs:
                if isinstance(c, UniPoly):
                    out.append(c.exact_div(other))
                elif isinstance(c, (int, Fraction)) and isinstance(other, (int, Fraction)):
                    out.append(Fraction(c) / Fraction(other))
                else:
                    out.append(c / other)
            return UniPoly(out, self.var)
        rem = list(self.coeffs)
        dq = other.degree()
        lead = other.lc()
        quot = [0] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1 - dq, -1, -1):
            top = rem[k + dq]
            if isinstance(top, UniPoly):
                c = top.exact_div(lead)
            elif isinstance(top, (int, Fraction)) and isinstance(lead, (int, Fraction)):
                c = Fraction(top) / Fraction(lead)
            else:
                c = top / lead
            quot[k] = c
            for j, q in enumerate(other.coeffs):
                rem[k + j] = rem[k + j] - c * q
        if any(not _is_zero(r) for r in rem[:dq]):
            raise ValueError("division is not exact")
        return UniPoly(quot, self.var)

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        lead = self.lc()
        inv = 1 / Fraction(lead) if isinstance(lead, (int, Fraction)) else 1 / lead
        return self.scale(inv)

    def gcd(self, other: "UniPoly") -> "UniPoly":
        """Monic greatest common divisor (Euclid over the coefficient field)."""
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def to_decimal(self) -> "UniPoly":
        from .scalars import to_decimal

        return UniPoly([to_decimal(c) for c in self.coeffs], self.var)


def poly_mul(p: UniPoly, q: UniPoly) -> UniPoly:
    """Exact convolution product; refuses mismatched variables or scalar kinds."""
    if isinstance(p, UniPoly) and isinstance(q, UniPoly):
        p._check(q)
    return p * q


def poly_diff(p):
    """Derivative with respect to ``x`` (for :class:`BiPoly`, ``x`` only)."""
    if isinstance(p, BiPoly):
        return p.diff_x()
    return p.diff()


def _det_bareiss(rows):
    """Fraction-free determinant of a square matrix over an integral domain.

    Entries must support ``+``, ``-``, ``*`` and exact division through
    :func:`_exact_div`.
    """
    m = [list(r) for r in rows]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if _is_zero(m[k][k]):
            for i in range(k + 1, n):
                if not _is_zero(m[i][k]):
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                m[i][j] = _exact_div(num, prev)
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return -det if sign < 0 else det


def _exact_div(num, den):
    if _is_zero(num) or (isinstance(den, int) and den == 1):
        return num
    if isinstance(num, UniPoly):
        return num.exact_div(den)
    if isinstance(num, (int, Fraction)) and isinstance(den, (int, Fraction)):
        return Fraction(num) / Fraction(den)
    return num / den


def resultant(p: UniPoly, q: UniPoly):
    """Sylvester resultant of ``p`` and ``q`` in their common variable.

    Coefficients may be scalars or polynomials in another variable; the
    determinant is taken fraction-free so polynomial coefficients stay
    polynomial.
    """
    if p.var != q.var and not (p.is_zero() or q.is_zero()):
        raise TypeError("resultant needs a common variable")
    m, n = p.degree(), q.degree()
    if m < 0 or n < 0:
        return 0
    if m == 0:
        return p.lc() ** n if n else 1
    if n == 0:
        return q.lc() ** m
    size = m + n
    rows = []
    pc = list(reversed(p.coeffs))
    qc = list(reversed(q.coeffs))
    for i in range(n):
        rows.append([0] * i + pc + [0] * (size - i - m - 1))
    for i in range(m):
        rows.append([0] * i + qc + [0] * (size - i - n - 1))
    return _det_bareiss(rows)


class BiPoly:
    """Polynomial in ``x`` and ``E`` stored as a dense object grid.

    ``grid[i, j]`` is the coefficient of ``x**i * E**j``.  Differentiation
    acts on ``x`` only.  The grid is never mutated after construction.
    """

    __slots__ = ("grid", "zero")

    def __init__(self, grid, zero=Fraction(0)):
        g = np.asarray(grid, dtype=object)
        if g.ndim != 2:
            raise ValueError("BiPoly grid must be two-dimensional")
        if g.shape[0] == 0 or g.shape[1] == 0:
            g = np.full((1, 1), zero, dtype=object)
        self.grid = g
        self.zero = zero

    @classmethod
    def from_x_poly(cls, p: UniPoly, zero=Fraction(0)) -> "BiPoly":
        g = np.full((max(len(p.coeffs), 1), 1), zero, dtype=object)
        for k, c in enumerate(p.coeffs):
            g[k, 0] = c
        return cls(g, zero)

    @property
    def shape(self):
        return self.grid.shape

    def degree_x(self) -> int:
        nz = [i for i in range(self.grid.shape[0]) if any(not _is_zero(v) for v in self.grid[i])]
        return nz[-1] if nz else -1

    def degree_E(self) -> int:
        nz = [j for j in range(self.grid.shape[1]) if any(not _is_zero(v) for v in self.grid[:, j])]
        return nz[-1] if nz else -1

    def is_zero(self) -> bool:
        return all(_is_zero(v) for v in self.grid.flat)

    def _padded(self, shape):
        out = np.full(shape, self.zero, dtype=object)
        r, c = self.grid.shape
        out[:r, :c] = self.grid
        return out

    def __add__(self, other: "BiPoly") -> "BiPoly":
        shape = (max(self.shape[0], other.shape[0]), max(self.shape[1], other.shape[1]))
        return BiPoly(self._padded(shape) + other._padded(shape), self.zero)

    def __neg__(self):
        return BiPoly(-self.grid, self.zero)

    def __sub__(self, other: "BiPoly") -> "BiPoly":
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, BiPoly):
            return BiPoly(self.grid * other, self.zero)
        small, big = (self, other) if np.count_nonzero(self.grid != 0) <= np.count_nonzero(other.grid != 0) else (other, self)
        rows = small.shape[0] + big.shape[0] - 1
        cols = small.shape[1] + big.shape[1] - 1
        out = np.full((rows, cols), self.zero, dtype=object)
        br, bc = big.shape
        for (i, j), v in np.ndenumerate(small.grid):
            if _is_zero(v):
                continue
            out[i:i + br, j:j + bc] += v * big.grid
        return BiPoly(out, self.zero)

    __rmul__ = __mul__

    def mul_truncated(self, other: "BiPoly", order: int) -> "BiPoly":
        """Product with all powers of ``x`` above ``order`` dropped."""
        small, big = (self, other) if np.count_nonzero(self.grid != 0) <= np.count_nonzero(other.grid != 0) else (other, self)
        rows = min(small.shape[0] + big.shape[0] - 1, order + 1)
        cols = small.shape[1] + big.shape[1] - 1
        out = np.full((rows, cols), self.zero, dtype=object)
        bc = big.shape[1]
        for (i, j), v in np.ndenumerate(small.grid):
            if i >= rows or _is_zero(v):
                continue
            span = min(big.shape[0], rows - i)
            out[i:i + span, j:j + bc] += v * big.grid[:span]
        return BiPoly(out, self.zero)

    def diff_x(self) -> "BiPoly":
        if self.shape[0] <= 1:
            return BiPoly(np.full((1, self.shape[1]), self.zero, dtype=object), self.zero)
        k = np.arange(1, self.shape[0], dtype=object)[:, None]
        return BiPoly(self.grid[1:] * k, self.zero)

    def truncate_x(self, order: int) -> "BiPoly":
        return BiPoly(self.grid[: order + 1], self.zero)

    def eval_x(self, x0) -> UniPoly:
        """Substitute ``x = x0`` and return a polynomial in ``E``."""
        acc = np.full(self.shape[1], self.zero, dtype=object)
        for i in range(self.shape[0] - 1, -1, -1):
            acc = acc * x0 + self.grid[i]
        return UniPoly(list(acc), "E")

    def eval_E(self, E0) -> UniPoly:
        """Substitute ``E = E0`` and return a polynomial in ``x``."""
        acc = np.full(self.shape[0], self.zero, dtype=object)
        for j in range(self.shape[1] - 1, -1, -1):
            acc = acc * E0 + self.grid[:, j]
        return UniPoly(list(acc), "x")

    def __eq__(self, other):
        if not isinstance(other, BiPoly):
            return NotImplemented
        shape = (max(self.shape[0], other.shape[0]), max(self.shape[1], other.shape[1]))
        a, b = self._padded(shape), other._padded(shape)
        return all(x == y for x, y in zip(a.flat, b.flat))

    __hash__ = None

    def __repr__(self):
        return f"BiPoly(shape={self.shape})"
