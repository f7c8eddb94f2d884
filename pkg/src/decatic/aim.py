"""Asymptotic iteration method for the reduced decatic equation.

Starting from ``chi'' = lambda0 chi' + s0 chi`` the sequences

    lambda_n = lambda_{n-1}' + s_{n-1} + lambda0 lambda_{n-1}
    s_n      = s_{n-1}'      + s0 lambda_{n-1}

are built as polynomials in ``(x, E)``.  Eigenvalues are the roots in ``E``
of ``delta_n(x0; E) = s_n lambda_{n-1} - s_{n-1} lambda_n`` at a fixed point
``x0``, tracked across iterations until they settle.

Two representations are available.  ``"full"`` keeps every power of ``x``;
``"taylor"`` expands about ``x0`` and drops powers above ``max_iters - n``,
which is all the remaining iterations can ever differentiate down to order
zero.  Both produce identical ``delta_n(x0; E)`` up to rounding.
"""

from __future__ import annotations

import decimal
import math
from dataclasses import dataclass, field
from decimal import Decimal
from fractions import Fraction

import numpy as np

from .asymptotics import Potential, reduce, simplify
from .numerics.poly import BiPoly, UniPoly
from .numerics.roots import real_roots
from .numerics.scalars import Surd, as_fraction, to_decimal

__all__ = [
    "AimConfig",
    "AimEigenvalue",
    "AimResult",
    "AimState",
    "Certificate",
    "ConvergenceTrace",
    "aim_delta",
    "aim_eigenvalues",
    "aim_init",
    "aim_step",
    "default_window",
    "qes_certificate",
]


@dataclass(frozen=True)
class AimConfig:
    x0: Fraction = Fraction(0)
    max_iters: int = 60
    digits: int = 12
    precision: int | None = None
    energy_window: tuple | None = None
    convergence_tol: Decimal | None = None
    representation: str = "taylor"
    min_persistence: int = 3
    confirmations: int = 2

    def __post_init__(self):
        object.__setattr__(self, "x0", as_fraction(self.x0))
        if self.max_iters < 1:
            raise ValueError("max_iters must be at least 1")
        if self.representation not in ("taylor", "full"):
            raise ValueError("representation must be 'taylor' or 'full'")
        if self.precision is None:
            object.__setattr__(
                self, "precision", self.digits + 30 + math.ceil(self.max_iters / 4)
            )
        if self.precision < 30:
            raise ValueError("precision must be at least 30 digits")
        if self.convergence_tol is None:
            object.__setattr__(self, "convergence_tol", Decimal(10) ** -self.digits)
        else:
            object.__setattr__(self, "convergence_tol", Decimal(str(self.convergence_tol)))
        if self.energy_window is not None:
            lo, hi = (Decimal(str(v)) for v in self.energy_window)
            if not lo < hi:
                raise ValueError("energy window needs low < high")
            object.__setattr__(self, "energy_window", (lo, hi))


@dataclass(frozen=True)
class AimState:
    """Iteration ``n`` with the current and previous ``(lambda, s)`` pairs.

    In the Taylor representation the grids are in powers of ``x - center``
    and hold orders ``0..order`` only; ``center`` is None for the full form.
    """

    n: int
    lam: BiPoly
    s: BiPoly
    prev_lam: BiPoly | None
    prev_s: BiPoly | None
    lam0: BiPoly
    s0: BiPoly
    center: object = None
    order: int | None = None


@dataclass
class ConvergenceTrace:
    estimates: list = field(default_factory=list)
    converged: bool = False
    digits: int = 0

    @property
    def last(self) -> Decimal:
        return self.estimates[-1][1]

    @property
    def persistence(self) -> int:
        return len(self.estimates)

    def last_change(self) -> Decimal | None:
        if len(self.estimates) < 2:
            return None
        return abs(self.estimates[-1][1] - self.estimates[-2][1])


@dataclass(frozen=True)
class AimEigenvalue:
    value: Decimal
    converged: bool
    digits: int
    iterations: int
    trace: ConvergenceTrace


@dataclass
class AimResult:
    eigenvalues: list
    iterations_used: int
    config: AimConfig

    @property
    def all_converged(self) -> bool:
        return bool(self.eigenvalues) and all(ev.converged for ev in self.eigenvalues)


# -- iteration -----------------------------------------------------------------


def _to_decimal_grid(p: BiPoly) -> BiPoly:
    return BiPoly(np.vectorize(to_decimal, otypes=[object])(p.grid), Decimal(0))


def _exact(v):
    return simplify(v) if isinstance(v, Surd) else v


def aim_init(V: Potential, x0=None, order: int | None = None, decimal_coeffs: bool = False) -> AimState:
    """``n = 0`` state from the reduced equation.

    With ``x0`` and ``order`` the state is a Taylor expansion about ``x0``
    kept to ``order``; otherwise the full polynomials are used.  Decimal
    coefficients are rounded in the current context.
    """
    red = reduce(V)
    lam0 = red.lambda0
    s0 = red.s0
    center = None
    if x0 is not None:
        center = as_fraction(x0)
        lam0 = lam0.shift(center).map(_exact)
        cols = []
        for j in range(s0.shape[1]):
            col = UniPoly(list(s0.grid[:, j]), "x").shift(center)
            cols.append([_exact(col.coeff(i)) for i in range(s0.shape[0])])
        grid = np.full((s0.shape[0], s0.shape[1]), Fraction(0), dtype=object)
        for j, col in enumerate(cols):
            for i, v in enumerate(col):
                grid[i, j] = v
        s0 = BiPoly(grid)
    L0 = BiPoly.from_x_poly(lam0)
    S0 = s0
    if decimal_coeffs:
        L0, S0 = _to_decimal_grid(L0), _to_decimal_grid(S0)
    if order is not None:
        L0, S0 = L0.truncate_x(order), S0.truncate_x(order)
    return AimState(0, L0, S0, None, None, L0, S0, center, order)


def aim_step(state: AimState) -> AimState:
    """One application of the iteration; Taylor states lose one order."""
    lam, s = state.lam, state.s
    if state.order is None:
        new_lam = lam.diff_x() + s + state.lam0 * lam
        new_s = s.diff_x() + state.s0 * lam
        order = None
    else:
        order = state.order - 1
        if order < 0:
            raise ValueError("Taylor expansion exhausted; raise max_iters")
        new_lam = (
            lam.diff_x().truncate_x(order)
            + s.truncate_x(order)
            + state.lam0.mul_truncated(lam, order)
        )
        new_s = s.diff_x().truncate_x(order) + state.s0.mul_truncated(lam, order)
    return AimState(state.n + 1, new_lam, new_s, lam, s, state.lam0, state.s0, state.center, order)


def aim_delta(state: AimState, x0=None) -> UniPoly:
    """``s_n lambda_{n-1} - s_{n-1} lambda_n`` at ``x = x0`` as a polynomial in E."""
    if state.n < 1:
        raise ValueError("delta needs at least one iteration")
    if state.center is not None:
        if x0 is not None and as_fraction(x0) != state.center:
            raise ValueError("Taylor state can only be evaluated at its centre")
        at = 0
    else:
        at = Fraction(0) if x0 is None else as_fraction(x0)
        if state.lam.zero == Decimal(0) and isinstance(state.lam.zero, Decimal):
            at = to_decimal(at)
    lam = state.lam.eval_x(at)
    s = state.s.eval_x(at)
    plam = state.prev_lam.eval_x(at)
    ps = state.prev_s.eval_x(at)
    return (s * plam - ps * lam).map(_exact)


# -- eigenvalue extraction ------------------------------------------------------------


def default_window(V: Potential, width: int = 100):
    """``(min V, min V + width)``; eigenvalues lie strictly above ``min V``."""
    coeffs = [float(to_decimal(v)) for v in V.as_poly().diff().coeffs]
    crit = [0.0] + [z.real for z in np.roots(coeffs[::-1]) if abs(z.imag) < 1e-9]
    vmin = min(to_decimal(V(Fraction(x))) for x in crit)
    lo = vmin.to_integral_value(rounding=decimal.ROUND_FLOOR)
    return lo, lo + width


def _match(tracks: list, roots: list, n: int):
    """Greedy nearest-neighbour pairing; ties go to the smaller energy."""
    pairs = sorted(
        (abs(t.last - r), r, ti, ri)
        for ti, t in enumerate(tracks)
        for ri, r in enumerate(roots)
    )
    used_t, used_r = set(), set()
    for _, _, ti, ri in pairs:
        if ti in used_t or ri in used_r:
            continue
        used_t.add(ti)
        used_r.add(ri)
        tracks[ti].estimates.append((n, roots[ri]))
    survivors = [t for i, t in enumerate(tracks) if i in used_t]
    fresh = [ConvergenceTrace([(n, r)]) for i, r in enumerate(roots) if i not in used_r]
    dropped = [t for i, t in enumerate(tracks) if i not in used_t]
    return survivors + fresh, dropped


def _settled(t: ConvergenceTrace, cfg: AimConfig) -> bool:
    if t.persistence < max(cfg.min_persistence, cfg.confirmations + 1):
        return False
    vals = [v for _, v in t.estimates[-(cfg.confirmations + 1):]]
    scale = max(Decimal(1), abs(vals[-1]))
    return all(abs(x - y) < cfg.convergence_tol * scale for x, y in zip(vals, vals[1:]))


def _digits_agreed(t: ConvergenceTrace, window: int) -> int:
    """Digits on which the last ``window + 1`` estimates agree."""
    vals = [v for _, v in t.estimates[-(window + 1):]]
    if len(vals) < 2:
        return 0
    ch = max(abs(x - y) for x, y in zip(vals, vals[1:]))
    if ch == 0:
        return len(t.last.as_tuple().digits)
    scale = max(Decimal(1), abs(t.last))
    return max(0, int((-(ch / scale).log10()).to_integral_value(rounding=decimal.ROUND_FLOOR)))


def aim_eigenvalues(V: Potential, cfg: AimConfig | None = None, count: int = 1) -> AimResult:
    """Lowest ``count`` eigenvalues in the window, with convergence traces.

    Iteration stops early once the ``count`` lowest persistent roots have all
    settled.  If ``max_iters`` runs out first, whatever is available is
    returned with ``converged`` flags set accordingly.
    """
    if count < 1:
        raise ValueError("count must be at least 1")
    cfg = cfg or AimConfig()
    window = cfg.energy_window or default_window(V)
    lo, hi = (Fraction(w) for w in window)
    tracks: list[ConvergenceTrace] = []
    with decimal.localcontext() as ctx:
        ctx.prec = cfg.precision
        if cfg.representation == "taylor":
            state = aim_init(V, cfg.x0, cfg.max_iters, decimal_coeffs=True)
        else:
            state = aim_init(V, decimal_coeffs=True)
        n = 0
        for n in range(1, cfg.max_iters + 1):
            state = aim_step(state)
            delta = aim_delta(state, None if state.center is not None else cfg.x0)
            if delta.is_zero():
                # terminated exactly at every energy: nothing to isolate
                continue
            found = real_roots(
                delta, interval=(lo, hi), digits=cfg.digits + 8, precision=cfg.precision
            )
            roots = [r.value for r in found if not r.cluster]
            tracks, _ = _match(tracks, roots, n)
            persistent = sorted(
                (t for t in tracks if t.persistence >= cfg.min_persistence), key=lambda t: t.last
            )
            low = persistent[:count]
            if len(low) == count and all(_settled(t, cfg) for t in low):
                break
        persistent = sorted(
            (t for t in tracks if t.persistence >= cfg.min_persistence), key=lambda t: t.last
        )
        out = []
        for t in persistent[:count]:
            t.converged = _settled(t, cfg)
            t.digits = _digits_agreed(t, cfg.confirmations)
            out.append(AimEigenvalue(+t.last, t.converged, t.digits, t.estimates[-1][0], t))
        return AimResult(out, n, cfg)


# -- exact termination certificate ---------------------------------------------------


@dataclass(frozen=True)
class Certificate:
    holds: bool
    witness: int | None
    max_abs: object


def _x_poly_decimal(p: UniPoly) -> UniPoly:
    return UniPoly([to_decimal(c) for c in p.coeffs] or [Decimal(0)], "x")


def qes_certificate(V, E, m: int, digits: int = 60, threshold: Decimal = Decimal("1e-40")) -> Certificate:
    """Whether ``delta_m(x; E)`` vanishes identically in ``x``.

    ``V`` is a Potential, or a coefficient tuple when ``e`` (or ``E``) is a
    Decimal.  With exact data the test is exact; otherwise the sequences
    run at ``digits`` digits and ``delta_k`` counts as zero when its largest
    coefficient is below ``threshold`` relative to ``lambda_k s_{k-1}``.
    ``witness`` is the first vanishing index ``k <= m``.
    """
    if m < 1:
        raise ValueError("m must be at least 1")
    coeffs = V.coefficients() if isinstance(V, Potential) else tuple(V)
    numeric = isinstance(E, Decimal) or any(isinstance(v, Decimal) for v in coeffs)
    with decimal.localcontext() as ctx:
        ctx.prec = digits
        if numeric:
            a = as_fraction(coeffs[0])
            base = Potential(a, *(c if not isinstance(c, Decimal) else Fraction(0) for c in coeffs[1:]))
            red = reduce(base)
            lam0 = _x_poly_decimal(red.lambda0)
            # rebuild s0 with the decimal coefficients
            r = to_decimal(base.sqrt_a)
            ad, bd, cd, dd, ed = (to_decimal(v) for v in coeffs)
            K = bd * bd - 4 * ad * cd
            s_x2 = (64 * ad ** 3 * ed + 96 * ad * ad * r * bd - bd ** 4 + 8 * ad * bd * bd * cd - 16 * ad * ad * cd * cd) / (64 * ad ** 3)
            s_x4 = (8 * ad * ad * dd + 40 * ad * ad * r + bd ** 3 - 4 * ad * bd * cd) / (8 * ad * ad)
            s0 = UniPoly([-K / (8 * ad * r) - to_decimal(E), 0, s_x2, 0, s_x4], "x")
            s0 = UniPoly([to_decimal(c) for c in s0.coeffs], "x")
        else:
            red = reduce(V)
            lam0 = red.lambda0
            s0 = red.s0_at(E).map(simplify)
        lam, s = lam0, s0
        witness = None
        last_abs = None
        for k in range(1, m + 1):
            plam, ps = lam, s
            lam = plam.diff() + ps + lam0 * plam
            s = ps.diff() + s0 * plam
            delta = s * plam - ps * lam
            if numeric:
                ref = s * plam
                scale = max((abs(c) for c in ref.coeffs), default=Decimal(0))
                size = max((abs(c) for c in delta.coeffs), default=Decimal(0))
                zero = size == 0 or (scale > 0 and size / scale < threshold)
                last_abs = size
            else:
                delta = delta.map(simplify)
                zero = delta.is_zero()
                last_abs = max((abs(c) for c in delta.coeffs), default=Fraction(0))
            if zero and witness is None:
                witness = k
            if k == m:
                return Certificate(bool(zero), witness, last_abs)
    raise AssertionError("unreachable")
