"""Exact and decimal scalars, polynomials, root isolation and linear algebra."""

from .linalg import determinant, exact_nullspace, mat_vec, rank
from .poly import BiPoly, UniPoly, poly_diff, poly_mul, resultant
from .roots import PrecisionError, Root, real_roots
from .scalars import Surd, as_fraction, scalar_from_json, scalar_to_json, to_decimal

__all__ = [
    "BiPoly",
    "PrecisionError",
    "Root",
    "Surd",
    "UniPoly",
    "as_fraction",
    "determinant",
    "exact_nullspace",
    "mat_vec",
    "poly_diff",
    "poly_mul",
    "rank",
    "real_roots",
    "resultant",
    "scalar_from_json",
    "scalar_to_json",
    "to_decimal",
]
