"""Exact and numerical bound states of decatic anharmonic oscillators.

``V(x) = a x^10 + b x^8 + c x^6 + d x^4 + e x^2``.  Exact (quasi-exactly
solvable) states live in :mod:`decatic.qes`, arbitrary-parameter spectra
from the asymptotic iteration method in :mod:`decatic.aim`.
"""

from .aim import AimConfig, aim_eigenvalues, qes_certificate
from .asymptotics import Potential, build_exponent, reduce
from .qes import (
    NoSolution,
    admissible_state,
    closed_form_first,
    closed_form_ground,
    solve_potential,
    solve_state,
    verify,
    wavefunction,
)

__version__ = "0.1.0"

__all__ = [
    "AimConfig",
    "NoSolution",
    "Potential",
    "admissible_state",
    "aim_eigenvalues",
    "build_exponent",
    "closed_form_first",
    "closed_form_ground",
    "qes_certificate",
    "reduce",
    "solve_potential",
    "solve_state",
    "verify",
    "wavefunction",
]
