"""Complete real-root isolation and refinement.

Exact (rational) input goes through a squarefree decomposition and Sturm
sequences.  Decimal input is converted to the exact rational it represents,
scaled to integer coefficients, and isolated by Descartes-rule bisection
(Vincent-Collins-Akritas).  Either way every real root in the interval is
found; refinement is bisection on exact signs.
"""

from __future__ import annotations

import decimal
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from math import gcd, lcm

from .poly import UniPoly
from .scalars import Surd

__all__ = [
    "PrecisionError",
    "Root",
    "cauchy_bound",
    "real_roots",
    "squarefree_decomposition",
    "sturm_sequence",
]


class PrecisionError(ArithmeticError):
    """Requested digits exceed what the coefficients can support."""


@dataclass(frozen=True)
class Root:
    value: Decimal
    multiplicity: int
    lo: Fraction
    hi: Fraction
    exact: Fraction | None = None
    cluster: bool = False


def _as_rational_coeffs(p: UniPoly) -> list[Fraction]:
    out = []
    for c in p.coeffs:
        if isinstance(c, Surd):
            if c.q != 0:
                raise TypeError("irrational coefficients: convert to Decimal first")
            c = c.p
        out.append(Fraction(c))
    return out


def _integer_coeffs(cs: list[Fraction]) -> list[int]:
    den = 1
    for c in cs:
        den = lcm(den, c.denominator)
    ints = [int(c * den) for c in cs]
    g = 0
    for v in ints:
        g = gcd(g, v)
    return [v // g for v in ints] if g > 1 else ints


def cauchy_bound(p: UniPoly) -> Fraction:
    """Rational bound ``B`` with every root satisfying ``|z| < B``."""
    cs = _as_rational_coeffs(p) if p.kind != "decimal" else [Fraction(c) for c in p.coeffs]
    lead = abs(cs[-1])
    return 1 + max((abs(c) / lead for c in cs[:-1]), default=Fraction(0))


# -- exact helpers ----------------------------------------------------------------


def _peval(cs, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(cs):
        acc = acc * x + c
    return acc


def _sign_int_at(cs: list[int], x: Fraction) -> int:
    # sign of sum c_k x^k using homogeneous integer Horner
    num, den = x.numerator, x.denominator
    acc = 0
    dpow = 1
    for c in reversed(cs):
        acc = acc * num + c * dpow
        dpow *= den
    return (acc > 0) - (acc < 0)


def _primitive(cs: list[int]) -> list[int]:
    while cs and cs[-1] == 0:
        cs = cs[:-1]
    g = 0
    for v in cs:
        g = gcd(g, v)
    return [v // g for v in cs] if g > 1 else list(cs)


def _prem(a: list[int], b: list[int]) -> list[int]:
    """Remainder of ``|lc(b)|**k * a`` by ``b``; a positive multiple of ``a mod b``."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    mult = abs(lb)
    sgn = 1 if lb > 0 else -1
    while len(r) - 1 >= db and any(r):
        k = len(r) - 1 - db
        top = r[-1]
        r = [v * mult for v in r]
        f = top * sgn
        for j, v in enumerate(b):
            r[k + j] -= f * v
        r = r[:-1]
        while r and r[-1] == 0:
            r.pop()
    return r


def _int_gcd(a: list[int], b: list[int]) -> list[int]:
    a, b = _primitive(a), _primitive(b)
    while b:
        a, b = b, _primitive(_prem(a, b))
    return a


def _int_diff(cs: list[int]) -> list[int]:
    return [k * c for k, c in enumerate(cs)][1:]


def squarefree_decomposition(p: UniPoly) -> list[tuple[UniPoly, int]]:
    """Yun's algorithm: ``p = lc * prod f_i**i`` with squarefree coprime ``f_i``.

    Gcds are taken on primitive integer polynomials so coefficients stay small.
    """
    if p.degree() < 1:
        return []
    var = p.var

    def up(cs):
        return UniPoly([Fraction(v) for v in cs], var)

    def gcd_poly(a: UniPoly, b: UniPoly) -> UniPoly:
        if b.is_zero():
            return a
        return up(_int_gcd(_integer_coeffs(list(a.coeffs)), _integer_coeffs(list(b.coeffs))))

    f = up(_integer_coeffs(_as_rational_coeffs(p)))
    df = f.diff()
    g = gcd_poly(f, df)
    if g.degree() == 0:
        return [(f, 1)]
    out = []
    b = f.exact_div(g)
    c = df.exact_div(g)
    d = c - b.diff()
    i = 1
    while b.degree() > 0:
        a = gcd_poly(b, d)
        b = b.exact_div(a)
        c = d.exact_div(a)
        if a.degree() > 0:
            out.append((a, i))
        i += 1
        d = c - b.diff()
    return out


def sturm_sequence(p: UniPoly) -> list[UniPoly]:
    """Sturm sequence with every member replaced by a positive multiple.

    Positive rescaling leaves all sign patterns unchanged, so the variation
    counts are those of the classical sequence.
    """
    return [UniPoly([Fraction(v) for v in cs], p.var) for cs in _int_sturm(_integer_coeffs(_as_rational_coeffs(p)))]


def _int_sturm(f: list[int]) -> list[list[int]]:
    seq = [f, _primitive(_int_diff(f))]
    while len(seq[-1]) > 1:
        r = _prem(seq[-2], seq[-1])
        if not r:
            break
        seq.append(_primitive([-v for v in r]))
    return seq


def _variations(values) -> int:
    signs = [v for v in values if v != 0]
    return sum(1 for s, t in zip(signs, signs[1:]) if (s > 0) != (t > 0))


def _sturm_isolate(cs: list[Fraction], lo: Fraction, hi: Fraction):
    """Isolating intervals (or exact hits) for a squarefree rational polynomial."""
    f = _integer_coeffs(cs)
    seq = _int_sturm(f)

    def var(x):
        return _variations([_sign_int_at(q, x) for q in seq])

    def zero_at(x):
        return _sign_int_at(f, x) == 0

    exact, intervals = [], []
    if zero_at(lo):
        exact.append(lo)
    if hi != lo and zero_at(hi):
        exact.append(hi)
    stack = [(lo, hi, var(lo), var(hi))]
    while stack:
        l, h, vl, vh = stack.pop()
        # vl - vh counts distinct roots in (l, h]
        count = vl - vh - (1 if zero_at(h) else 0)
        if count <= 0:
            continue
        if count == 1 and not zero_at(l):
            intervals.append((l, h))
            continue
        m = (l + h) / 2
        vm = var(m)
        if zero_at(m):
            exact.append(m)
        stack.append((l, m, vl, vm))
        stack.append((m, h, vm, vh))
    return exact, intervals


# -- Descartes isolation on integer coefficients ----------------------------------


def _taylor_shift_one(cs: list[int]) -> list[int]:
    # coefficients of p(t + 1)
    a = list(cs)
    n = len(a)
    for i in range(n - 1):
        for k in range(n - 2, i - 1, -1):
            a[k] += a[k + 1]
    return a


def _descartes_variations(cs: list[int]) -> int:
    return _variations(cs)


def _vca_isolate(cs: list[int], lo: Fraction, hi: Fraction, min_width: Fraction):
    """Vincent-Collins-Akritas bisection on ``[lo, hi]``.

    Returns exact hits, isolating intervals, and clusters (intervals narrower
    than ``min_width`` that still carry more than one sign variation).
    """
    exact, intervals, clusters = [], [], []
    for end in (lo, hi):
        if _sign_int_at(cs, end) == 0 and end not in exact:
            exact.append(end)
    n = len(cs) - 1
    # map [lo, hi] onto [0, 1]: q(t) = p(lo + (hi - lo) t)
    width = hi - lo
    q = _compose_affine(cs, lo, width)
    stack = [(q, lo, width)]
    while stack:
        q, l, w = stack.pop()
        # roots in (0, 1) of q counted by variations of (1+t)^n q(1/(1+t))
        rev = list(reversed(q))
        v = _descartes_variations(_taylor_shift_one(rev))
        if v == 0:
            continue
        if v == 1 and q[0] != 0:
            intervals.append((l, l + w))
            continue
        # a root sitting on the left end would stall the sign-based refinement,
        # so such intervals are split until the interior root is clear of it
        if w < min_width and v > 1:
            clusters.append((l, l + w, v))
            continue
        # halves: q1(t) = 2^n q(t/2), q2(t) = q1(t+1)
        q1 = [c * (1 << (n - k)) for k, c in enumerate(q)]
        q2 = _taylor_shift_one(q1)
        mid = l + w / 2
        if q2[0] == 0:
            # root exactly at the midpoint; Descartes counts on the open halves skip it
            exact.append(mid)
        stack.append((q1, l, w / 2))
        stack.append((q2, mid, w / 2))
    return exact, intervals, clusters


def _compose_affine(cs: list[int], shift: Fraction, scale: Fraction) -> list[int]:
    """Integer coefficients proportional to ``p(shift + scale*t)``."""
    n = len(cs) - 1
    # p(shift + scale t) * den^n with shift = s/den, scale = w/den
    den = lcm(shift.denominator, scale.denominator)
    s = int(shift * den)
    w = int(scale * den)
    # expand sum c_k (s + w t)^k den^(n-k)
    out = [0] * (n + 1)
    powers = [1]  # coefficients of (s + w t)^k
    for k, c in enumerate(cs):
        if k > 0:
            nxt = [0] * (k + 1)
            for i, v in enumerate(powers):
                nxt[i] += v * s
                nxt[i + 1] += v * w
            powers = nxt
        if c:
            f = c * den ** (n - k)
            for i, v in enumerate(powers):
                out[i] += f * v
    g = 0
    for v in out:
        g = gcd(g, v)
    return [v // g for v in out] if g > 1 else out


# -- refinement --------------------------------------------------------------------


def _refine(sign_at, l: Fraction, h: Fraction, digits: int):
    sl = sign_at(l)
    abs_floor = Fraction(1, 10 ** (2 * digits + 2))
    while True:
        w = h - l
        scale = max(abs(l), abs(h))
        if w <= scale / 10 ** (digits + 2) or w <= abs_floor:
            return l, h, None
        m = (l + h) / 2
        sm = sign_at(m)
        if sm == 0:
            return m, m, m
        if sm == sl:
            l, sl = m, sm
        else:
            h = m


def _to_decimal(x: Fraction, digits: int) -> Decimal:
    with decimal.localcontext() as ctx:
        ctx.prec = digits
        return Decimal(x.numerator) / Decimal(x.denominator)


def _make_root(l, h, exact, mult, digits, cluster=False) -> Root:
    val = exact if exact is not None else (l + h) / 2
    return Root(_to_decimal(val, digits), mult, l, h, exact, cluster)


def real_roots(
    p: UniPoly,
    interval=None,
    digits: int = 30,
    precision: int | None = None,
    guard: int = 5,
) -> list[Root]:
    """All real roots of ``p`` in the closed ``interval``, ascending.

    Exact coefficients (Fraction, int, rational Surd) use Sturm sequences on
    each squarefree factor; multiplicities are exact.  Decimal coefficients
    use Descartes bisection; roots that cannot be separated at the working
    width are reported once as a cluster whose multiplicity is the number of
    sign variations left.  ``precision`` is the number of significant digits
    the coefficients carry (defaults to the current decimal context) and only
    matters for Decimal input.
    """
    if p.is_zero():
        raise ValueError("the zero polynomial has no isolated roots")
    if p.kind == "decimal":
        precision = decimal.getcontext().prec if precision is None else precision
        if digits > precision - guard:
            raise PrecisionError(
                f"{digits} digits requested from coefficients carrying {precision}"
            )
        cs = [Fraction(c) for c in p.coeffs]
    else:
        cs = _as_rational_coeffs(p)
    if interval is None:
        b = cauchy_bound(UniPoly(cs, p.var))
        lo, hi = -b, b
    else:
        lo, hi = (Fraction(v) if not isinstance(v, Decimal) else Fraction(v) for v in interval)
    if lo > hi:
        raise ValueError("empty interval")
    if len(cs) == 1:
        return []

    roots: list[Root] = []
    if p.kind != "decimal":
        for factor, mult in squarefree_decomposition(UniPoly(cs, p.var)):
            fcs = [Fraction(c) for c in factor.coeffs]
            ints = _integer_coeffs(fcs)
            exact, intervals = _sturm_isolate(fcs, lo, hi)
            for x in exact:
                roots.append(_make_root(x, x, x, mult, digits))
            for l, h in intervals:
                rl, rh, ex = _refine(lambda t: _sign_int_at(ints, t), l, h, digits)
                roots.append(_make_root(rl, rh, ex, mult, digits))
    else:
        ints = _integer_coeffs(cs)
        # strip exact zero roots first so the bisection never straddles them
        zero_mult = 0
        while ints and ints[0] == 0:
            ints = ints[1:]
            zero_mult += 1
        if zero_mult and lo <= 0 <= hi:
            roots.append(Root(Decimal(0), zero_mult, Fraction(0), Fraction(0), Fraction(0)))
        if len(ints) > 1:
            span = max(abs(lo), abs(hi), Fraction(1))
            min_width = span / 10 ** (digits + 2)
            exact, intervals, clusters = _vca_isolate(ints, lo, hi, min_width)
            for x in exact:
                roots.append(_make_root(x, x, x, 1, digits))
            for l, h in intervals:
                rl, rh, ex = _refine(lambda t: _sign_int_at(ints, t), l, h, digits)
                roots.append(_make_root(rl, rh, ex, 1, digits))
            for l, h, v in clusters:
                roots.append(_make_root(l, h, None, v, digits, cluster=True))
    roots.sort(key=lambda r: (r.lo + r.hi) / 2)
    return roots
