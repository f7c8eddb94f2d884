"""Parametric families of exactly solvable decatic potentials and AIM reference data.

Each family is a template in two free positive parameters ``mu`` and ``k``
(and a sign for the ``+-`` families).  Families are grouped by the state
they produce: ``1`` gives the nodeless state (``chi = 1``), ``2`` the
one-node state (``chi = x``).  All arithmetic happens in Q(sqrt(a)).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .asymptotics import Potential, build_exponent, simplify
from .numerics.poly import UniPoly
from .numerics.scalars import Surd, as_fraction

__all__ = [
    "AIM_REFERENCE",
    "TableRowSpec",
    "row_count",
    "signed_rows",
    "table_row",
    "table_rows",
    "verify_row",
]


@dataclass(frozen=True)
class TableRowSpec:
    table: int
    row: int
    mu: Fraction = Fraction(1)
    k: Fraction = Fraction(1)
    sign: int = 1

    def __post_init__(self):
        mu, k = as_fraction(self.mu), as_fraction(self.k)
        if mu <= 0 or k <= 0:
            raise ValueError("mu and k must be positive")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "k", k)


# each template returns (E, a, b, c, d, e)


def _g1(mu, k, s):
    r = Surd.sqrt_of(mu)
    return (3 * r / 8, mu, s * mu, mu, (s * 3 * mu - 40 * r) / 8, Fraction(3, 64) * (3 * mu - s * 32 * r))


def _g2(mu, k, s):
    r = Surd.sqrt_of(mu)
    return (-5 * r / 8, mu, s * mu, -mu, -s * Fraction(5, 8) * (mu + s * 8 * r), (25 * mu - s * 96 * r) / 64)


def _g3(mu, k, s):
    r = Surd.sqrt_of(k * mu)
    return (
        (4 * k - 1) * r / (8 * k * k),
        k * mu,
        mu,
        mu,
        -(40 * k * k * r + (1 - 4 * k) * mu) / (8 * k * k),
        ((1 - 4 * k) ** 2 * mu - 96 * k * k * r) / (64 * k ** 3),
    )


def _g4(mu, k, s):
    r = Surd.sqrt_of(mu)
    return (
        -(k * k - 4) * r / 8,
        mu,
        k * mu,
        mu,
        -k * (k * k - 4) * mu / 8 - 5 * r,
        (k * k - 4) ** 2 * mu / 64 - Fraction(3, 2) * k * r,
    )


def _g5(mu, k, s):
    r = Surd.sqrt_of(mu)
    return (
        (4 * k - 1) * r / 8,
        mu,
        mu,
        k * mu,
        (4 * k - 1) * mu / 8 - 5 * r,
        (1 - 4 * k) ** 2 * mu / 64 - Fraction(3, 2) * r,
    )


def _g6(mu, k, s):
    r = Surd.sqrt_of(k * mu)  # sqrt(mu/k) = r/k
    return (
        r + 5 * k,
        k * mu,
        mu,
        mu / (4 * k) + 2 * k * (mu + 5 * r),
        mu,
        25 * k * k - Fraction(3, 2) * r / k + k * (mu + 10 * r),
    )


def _g7(mu, k, s):
    r = Surd.sqrt_of(mu)
    return (
        (r + 5) / k,
        mu,
        k * mu,
        r / (4 * k) * (40 + r * (8 + k ** 3)),
        mu,
        (2 * mu + (20 - 3 * k ** 3) * r + 50) / (2 * k * k),
    )


def _g8(mu, k, s):
    r = Surd.sqrt_of(mu)
    return (
        5 + k * r,
        mu,
        mu,
        r / 4 * (40 + r * (1 + 8 * k)),
        k * mu,
        k * k * mu + (10 * k - Fraction(3, 2)) * r + 25,
    )


def _f1(mu, k, s):
    r = Surd.sqrt_of(mu)
    return (9 * r / 8, mu, s * mu, mu, (s * 3 * mu - 56 * r) / 8, (9 * mu - s * 160 * r) / 64)


def _f2(mu, k, s):
    r = Surd.sqrt_of(mu)
    return (-15 * r / 8, mu, s * mu, -mu, (-s * 5 * mu - 56 * r) / 8, Fraction(5, 64) * (5 * mu - s * 32 * r))


def _f3(mu, k, s):
    r = Surd.sqrt_of(k * mu)
    return (
        3 * (4 * k - 1) * r / (8 * k * k),
        k * mu,
        mu,
        mu,
        -(56 * k * k * r + mu - 4 * k * mu) / (8 * k * k),
        (-160 * k * k * r + (1 - 4 * k) ** 2 * mu) / (64 * k ** 3),
    )


def _f4(mu, k, s):
    r = Surd.sqrt_of(mu)
    return (
        -Fraction(3, 8) * (k * k - 4) * r,
        mu,
        k * mu,
        mu,
        -k * (k * k - 4) * mu / 8 - 7 * r,
        (k * k - 4) ** 2 * mu / 64 - Fraction(5, 2) * k * r,
    )


def _f5(mu, k, s):
    r = Surd.sqrt_of(mu)
    return (
        Fraction(3, 8) * (4 * k - 1) * r,
        mu,
        mu,
        k * mu,
        -mu / 8 + k * mu / 2 - 7 * r,
        mu / 64 - k * mu / 8 + k * k * mu / 4 - Fraction(5, 2) * r,
    )


def _f6(mu, k, s):
    r = Surd.sqrt_of(k * mu)
    km = k * mu
    return (
        3 * r + 21 * k,
        km,
        mu,
        (56 * km * km * r + mu ** 3 * (1 + 8 * k * k)) / (4 * k * mu * mu),
        mu,
        (-5 * r + 98 * k ** 3 + 28 * k * k * r + 2 * k * k * mu) / (2 * k),
    )


def _f7(mu, k, s):
    r = Surd.sqrt_of(mu)
    return (
        3 * (r + 7) / k,
        mu,
        k * mu,
        r / (4 * k) * (56 + r * (k ** 3 + 8)),
        mu,
        (98 + (28 - 5 * k ** 3) * r + 2 * mu) / (2 * k * k),
    )


def _f8(mu, k, s):
    r = Surd.sqrt_of(mu)
    return (
        3 * (7 + k * r),
        mu,
        mu,
        (56 * r + mu * (1 + 8 * k)) / 4,
        k * mu,
        k * k * mu + 14 * k * r - Fraction(5, 2) * r + 49,
    )


_TEMPLATES = {
    1: (_g1, _g2, _g3, _g4, _g5, _g6, _g7, _g8),
    2: (_f1, _f2, _f3, _f4, _f5, _f6, _f7, _f8),
}

# rows whose b (and d, e) carry an explicit sign choice
signed_rows = frozenset({1, 2})


def row_count(table: int) -> int:
    if table not in _TEMPLATES:
        raise ValueError(f"unknown table {table}")
    return len(_TEMPLATES[table])


def table_row(spec: TableRowSpec):
    """``(Potential, E)`` for one family member."""
    if spec.table not in _TEMPLATES:
        raise ValueError(f"unknown table {spec.table}")
    rows = _TEMPLATES[spec.table]
    if not 1 <= spec.row <= len(rows):
        raise ValueError(f"unknown row {spec.row} for table {spec.table}")
    E, a, b, c, d, e = (simplify(v) for v in rows[spec.row - 1](spec.mu, spec.k, spec.sign))
    return Potential(a, b, c, d, e), E


def table_rows(table: int, mu=1, k=1):
    """All rows of a family table, expanding both signs where applicable."""
    out = []
    for row in range(1, row_count(table) + 1):
        for sign in ((1, -1) if row in signed_rows else (1,)):
            spec = TableRowSpec(table, row, mu, k, sign)
            V, E = table_row(spec)
            out.append((spec, V, E))
    return out


def chi_for(table: int) -> UniPoly:
    return UniPoly([1], "x") if table == 1 else UniPoly([0, 1], "x")


def verify_row(spec: TableRowSpec):
    from .qes import verify

    V, E = table_row(spec)
    return verify(V, E, (chi_for(spec.table), build_exponent(V)))


# AIM reference eigenvalues: (a, b, c, d, e) as exact decimal strings, then
# (value, iterations) per level; exact levels are flagged with None iterations.
AIM_REFERENCE = [
    {
        "potential": ("0.04", "0.877", "5.5", "-7.5", "2"),
        "levels": [
            ("1.342322779564646216", 189),
            ("5.136482243202476766", 196),
            ("11.304205821188349432", 203),
            ("19.577677092617956963", 208),
            ("29.438055052333889749", 215),
            ("40.723083272298272621", 222),
        ],
    },
    {
        "potential": ("0.04", "0.877", "5.5", "-7.5", "-2"),
        "levels": [
            ("0.135429448914739200", 187),
            ("2.708255201038304023", 194),
            ("8.719471783294745896", 199),
            ("16.684057789758348655", 204),
            ("26.234813143437435201", 213),
            ("37.249467272037347758", 234),
        ],
    },
    {
        "potential": ("0.01", "0.1", "1.0", "3.250", "12.5625"),
        "levels": [
            ("3.750000000000000000", None),
            ("11.653048680350115469", 104),
            ("20.358948672177131878", 113),
            ("29.850701419298223478", 130),
            ("40.098623827649000672", 139),
            ("51.071414767832192856", 152),
        ],
    },
    {
        "potential": ("0.01", "0.1", "1.0", "3.050", "11.5625"),
        "levels": [
            ("3.611850704712528538", 83),
            ("11.250000000000000000", None),
            ("19.713587721031462373", 109),
            ("28.983552585573622185", 122),
            ("39.026595688356661175", 143),
            ("49.808260402594522700", 146),
        ],
    },
]
