"""Command-line front end.

Exit codes: 0 success, 1 bad input, 2 no exact solution, 3 AIM did not converge.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from decimal import Decimal
from fractions import Fraction

from .aim import AimConfig, aim_eigenvalues, qes_certificate
from .asymptotics import Potential
from .numerics.scalars import as_fraction, scalar_to_json, to_decimal
from .polyode import (
    OdeCoefficients,
    determinant_conditions,
    necessary_degrees,
    polynomial_solutions,
)
from .qes import (
    NoSolution,
    admissible_state,
    solve_potential,
    solve_state,
    wavefunction,
)
from .tables import AIM_REFERENCE, TableRowSpec, row_count, signed_rows, table_row, verify_row

EXIT_OK, EXIT_INPUT, EXIT_NO_SOLUTION, EXIT_NO_CONVERGENCE = 0, 1, 2, 3


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _precision_default() -> int | None:
    raw = os.environ.get("DECATIC_PRECISION")
    if raw is None:
        return None
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"DECATIC_PRECISION must be an integer, got {raw!r}")


def _coef(text: str, name: str) -> Fraction:
    try:
        return as_fraction(text)
    except (ValueError, TypeError, ZeroDivisionError):
        raise InputError(f"cannot parse --{name} {text!r} as an exact number")


def _abc(args):
    a = _coef(args.a, "a")
    if a <= 0:
        raise InputError("--a must be positive")
    return a, _coef(args.b, "b"), _coef(args.c, "c")


def _potential(args) -> Potential:
    a, b, c = _abc(args)
    return Potential(a, b, c, _coef(args.d, "d"), _coef(args.e, "e"))


def _num(v) -> str:
    return str(v) if isinstance(v, Decimal) else str(to_decimal(v)) if not isinstance(v, Fraction) else str(v)


def _json(v):
    if isinstance(v, int) and not isinstance(v, bool):
        v = Fraction(v)
    return scalar_to_json(v)


def _emit(args, payload, rows=None, header=None):
    """JSON payload, or CSV rows when ``--format csv``."""
    if args.format == "csv" and rows is not None:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\r\n")
        w.writerow(header)
        w.writerows(rows)
        text = buf.getvalue()
    else:
        text = json.dumps(payload, indent=2) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- subcommands ----------------------------------------------------------------


def cmd_exact(args) -> int:
    a, b, c = _abc(args)
    try:
        if args.d is not None or args.e is not None:
            if args.d is None or args.e is None:
                raise InputError("--d and --e must be given together")
            V = Potential(a, b, c, _coef(args.d, "d"), _coef(args.e, "e"))
            sols = solve_potential(V, args.n, args.digits)
        else:
            sols = solve_state(a, b, c, args.parity, args.n, args.digits)
    except NoSolution as exc:
        print(f"no solution: {exc}", file=sys.stderr)
        return EXIT_NO_SOLUTION
    except ValueError as exc:
        raise InputError(str(exc))
    rows = [
        [s.n, s.parity, _num(s.E), _num(s.d), _num(s.e)]
        for s in sols
    ]
    _emit(args, [s.to_json() for s in sols], rows, ["n", "parity", "E", "d", "e"])
    return EXIT_OK


def _certificates(V: Potential, m: int = 4):
    state = admissible_state(V)
    if state is None:
        return []
    try:
        sols = solve_potential(V, state[1])
    except NoSolution:
        return []
    out = []
    for s in sols:
        if not s.exact:
            continue
        cert = qes_certificate(V, s.E, m)
        out.append({"E": _json(s.E), "holds": cert.holds, "witness": cert.witness})
    return out


def _aim_config(args) -> AimConfig:
    window = tuple(args.window) if args.window else None
    precision = args.precision if args.precision is not None else _precision_default()
    return AimConfig(
        x0=_coef(args.x0, "x0"),
        max_iters=args.iters,
        digits=args.digits,
        precision=precision,
        energy_window=window,
        representation=args.representation,
    )


def cmd_aim(args) -> int:
    V = _potential(args)
    try:
        cfg = _aim_config(args)
    except ValueError as exc:
        raise InputError(str(exc))
    result = aim_eigenvalues(V, cfg, args.count)
    evs = result.eigenvalues
    payload = {
        "potential": [_json(v) for v in V.coefficients()],
        "x0": _json(cfg.x0),
        "iterations_used": result.iterations_used,
        "eigenvalues": [
            {
                "value": str(ev.value),
                "digits_converged": ev.digits,
                "iterations": ev.iterations,
                "converged": ev.converged,
            }
            for ev in evs
        ],
        "certificates": _certificates(V),
    }
    rows = [[i, str(ev.value), ev.digits, ev.iterations, ev.converged] for i, ev in enumerate(evs)]
    _emit(args, payload, rows, ["index", "E", "digits_converged", "iterations", "converged"])
    if not any(ev.converged for ev in evs):
        print("no eigenvalue converged", file=sys.stderr)
        return EXIT_NO_CONVERGENCE
    return EXIT_OK


def cmd_conditions(args) -> int:
    try:
        with open(args.file, encoding="utf-8") as fh:
            ode = OdeCoefficients.from_json(json.load(fh))
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise InputError(f"cannot read {args.file}: {exc}")
    degrees = necessary_degrees(ode, args.nmax)
    report = {"admissible_degrees": degrees, "determinants": {}, "solutions": []}
    for n in range(1, min(args.nmax, 2) + 1):
        report["determinants"][str(n)] = [_json(v) for v in determinant_conditions(ode, n)]
    for n in degrees:
        for sol in polynomial_solutions(ode, n):
            report["solutions"].append({"degree": n, "coefficients": [_json(v) for v in sol.coeffs]})
    if not degrees:
        report["message"] = f"no admissible degree <= {args.nmax}"
    rows = [[s["degree"], " ".join(json.dumps(c) for c in s["coefficients"])] for s in report["solutions"]]
    _emit(args, report, rows, ["degree", "coefficients"])
    return EXIT_OK


def _table_family(args):
    mu, k = _coef(args.mu, "mu"), _coef(args.k, "k")
    if mu <= 0 or k <= 0:
        raise InputError("--mu and --k must be positive")
    rows = []
    for row in range(1, row_count(args.which) + 1):
        signs = (args.sign,) if args.sign is not None else (1, -1)
        for sign in (signs if row in signed_rows else (1,)):
            spec = TableRowSpec(args.which, row, mu, k, sign)
            V, E = table_row(spec)
            ok = verify_row(spec).is_zero
            rows.append([row, sign if row in signed_rows else "", str(E), *(str(v) for v in V.coefficients()), ok])
    header = ["row", "sign", "E", "a", "b", "c", "d", "e", "verified"]
    payload = [dict(zip(header, r)) for r in rows]
    return payload, rows, header


def _table_aim(args):
    rows = []
    for block, ref in enumerate(AIM_REFERENCE):
        V = Potential(*ref["potential"])
        cfg = AimConfig(max_iters=args.iters, digits=args.digits, precision=_precision_default())
        result = aim_eigenvalues(V, cfg, args.count)
        for i, ev in enumerate(result.eigenvalues):
            reference, iters = ref["levels"][i] if i < len(ref["levels"]) else ("", "")
            rows.append([block, i, str(ev.value), ev.digits, ev.iterations, ev.converged, reference, iters if iters is not None else "exact"])
    header = ["block", "level", "E", "digits_converged", "iterations", "converged", "reference", "reference_iterations"]
    return [dict(zip(header, r)) for r in rows], rows, header


def cmd_table(args) -> int:
    if args.which in (1, 2):
        payload, rows, header = _table_family(args)
    else:
        payload, rows, header = _table_aim(args)
    if args.format == "json":
        _emit(args, payload)
    else:
        _emit(args, payload, rows, header)
    return EXIT_OK


def cmd_plot_data(args) -> int:
    V = _potential(args)
    lo, hi = _coef(args.x_min, "x-min"), _coef(args.x_max, "x-max")
    if args.samples < 1 or lo > hi:
        raise InputError("need samples >= 1 and x-min <= x-max")
    psi = None
    if args.n is not None:
        try:
            sols = solve_potential(V, args.n)
        except NoSolution as exc:
            print(f"no solution: {exc}", file=sys.stderr)
            return EXIT_NO_SOLUTION
        psi = wavefunction(sols[args.root] if args.root < len(sols) else sols[-1])
    xs = [lo] if args.samples == 1 else [lo + (hi - lo) * i / (args.samples - 1) for i in range(args.samples)]
    rows = []
    for x in xs:
        xd = to_decimal(x)
        v = to_decimal(V(x))
        rows.append([str(+xd), str(+v), "" if psi is None else str(psi(x, args.digits))])
    payload = [dict(zip(("x", "V", "psi"), r)) for r in rows]
    _emit(args, payload, rows, ["x", "V", "psi"])
    return EXIT_OK


# -- parser ----------------------------------------------------------------------


def _add_output(p):
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", help="write to this path instead of stdout")


def _add_potential(p, with_de=True):
    p.add_argument("--a", required=True)
    p.add_argument("--b", default="0")
    p.add_argument("--c", default="0")
    if with_de:
        p.add_argument("--d", default="0")
        p.add_argument("--e", default="0")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="decatic", description="Exact and AIM spectra of decatic potentials.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("exact", help="exact states with a polynomial factor of degree n")
    _add_potential(p, with_de=False)
    p.add_argument("--d", default=None, help="fix d (requires --e); otherwise d and e are solved for")
    p.add_argument("--e", default=None)
    p.add_argument("--parity", choices=("even", "odd"))
    p.add_argument("--n", type=int, required=True, help="degree of the polynomial factor")
    p.add_argument("--digits", type=int, default=30)
    _add_output(p)
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("aim", help="eigenvalues by the asymptotic iteration method")
    _add_potential(p)
    p.add_argument("--count", type=int, default=3)
    p.add_argument("--digits", type=int, default=10)
    p.add_argument("--iters", type=int, default=120)
    p.add_argument("--x0", default="0")
    p.add_argument("--precision", type=int, default=None)
    p.add_argument("--window", nargs=2, metavar=("LOW", "HIGH"))
    p.add_argument("--representation", choices=("taylor", "full"), default="taylor")
    _add_output(p)
    p.set_defaults(func=cmd_aim)

    p = sub.add_parser("conditions", help="polynomial solutions of a general ODE from JSON")
    p.add_argument("--file", required=True)
    p.add_argument("--nmax", type=int, default=6)
    _add_output(p)
    p.set_defaults(func=cmd_conditions)

    p = sub.add_parser("table", help="exact families (1, 2) or AIM reference runs (5)")
    p.add_argument("--which", type=int, choices=(1, 2, 5), required=True)
    p.add_argument("--mu", default="1")
    p.add_argument("--k", default="1")
    p.add_argument("--sign", type=int, choices=(1, -1))
    p.add_argument("--count", type=int, default=3)
    p.add_argument("--digits", type=int, default=6)
    p.add_argument("--iters", type=int, default=80)
    _add_output(p)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("plot-data", help="sampled x, V(x), psi(x) columns")
    _add_potential(p)
    p.add_argument("--n", type=int, help="degree of an exact state to sample")
    p.add_argument("--root", type=int, default=0, help="which energy when several exist")
    p.add_argument("--x-min", default="-2")
    p.add_argument("--x-max", default="2")
    p.add_argument("--samples", type=int, default=400)
    p.add_argument("--digits", type=int, default=20)
    p.add_argument("--format", choices=("json", "csv"), default="csv")
    p.add_argument("--out")
    p.set_defaults(func=cmd_plot_data)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
