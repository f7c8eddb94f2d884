"""Exact linear algebra over Q and Q(sqrt(a))."""

from __future__ import annotations

from fractions import Fraction

from .poly import _det_bareiss

__all__ = ["determinant", "exact_nullspace", "mat_vec", "rank"]


def _div(num, den):
    if isinstance(num, int) and isinstance(den, int):
        return Fraction(num, den)
    return num / den


def _echelon(rows: list[list], ncols: int):
    """Fraction-free (Bareiss) row echelon form.

    Returns the reduced rows and the pivot columns.  Entries stay in the
    ring generated by the input; the only divisions are exact by the previous
    pivot.
    """
    m = [list(r) for r in rows]
    pivots = []
    prev = 1
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][col]
        for i in range(r + 1, len(m)):
            f = m[i][col]
            for j in range(ncols):
                m[i][j] = _div(m[i][j] * p - f * m[r][j], prev)
        prev = p
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def exact_nullspace(M) -> list[list]:
    """Basis of ``{v : M v = 0}`` for a matrix given as a list of rows.

    An empty list means only the trivial solution exists.  Each basis vector
    has a 1 in one free column and zeros in the other free columns.
    """
    rows = [list(r) for r in M]
    if not rows:
        raise ValueError("matrix needs at least one row")
    ncols = len(rows[0])
    if ncols == 0:
        raise ValueError("matrix needs at least one column")
    ech, pivots = _echelon(rows, ncols)
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i in range(len(pivots) - 1, -1, -1):
            pc = pivots[i]
            acc = 0
            for j in range(pc + 1, ncols):
                if v[j] != 0 and ech[i][j] != 0:
                    acc = acc + ech[i][j] * v[j]
            v[pc] = _div(-acc, ech[i][pc]) if acc != 0 else Fraction(0)
        basis.append(v)
    return basis


def rank(M) -> int:
    rows = [list(r) for r in M]
    if not rows:
        return 0
    return len(_echelon(rows, len(rows[0]))[1])


def determinant(M):
    """Exact determinant of a square matrix (fraction-free elimination)."""
    rows = [list(r) for r in M]
    if any(len(r) != len(rows) for r in rows):
        raise ValueError("determinant needs a square matrix")
    return _det_bareiss(rows)


def mat_vec(M, v) -> list:
    out = []
    for row in M:
        acc = Fraction(0)
        for a, b in zip(row, v):
            acc = acc + a * b
        out.append(acc)
    return out
