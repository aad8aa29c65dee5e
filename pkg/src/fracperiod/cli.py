"""Command-line front end: ``fracperiod <command> ...``.

Exit codes: 0 on success, 1 if a verification fails, 2 on usage or input
errors. Tabular output goes to ``--out`` (or stdout) as CSV or JSON.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from collections.abc import Sequence
from typing import IO

import numpy as np

from fracperiod import acceptance, fodesolve, laplace, periodicity, specfun
from fracperiod.config import Config, load_config
from fracperiod.errors import FracPeriodError
from fracperiod.fracops import GridFunction, UniformGrid, caputo_derivative, frac_integral, rl_derivative

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

PSI_TIMES = (0.0, 1.0, 10.0, 100.0, 1e4)


class UsageError(Exception):
    pass


# {{{ output


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, (float, np.floating)):
        return f"{float(v):.17g}"
    return str(v)


def _json_safe(v):
    if isinstance(v, (float, np.floating)):
        v = float(v)
        return v if math.isfinite(v) else None
    if isinstance(v, np.integer):
        return int(v)
    return v


def write_table(rows: list[dict], columns: Sequence[str], fmt: str, dest: IO[str]) -> None:
    if fmt == "json":
        json.dump([{c: _json_safe(r.get(c)) for c in columns} for r in rows], dest, indent=2)
        dest.write("\n")
        return
    dest.write(",".join(columns) + "\n")
    for r in rows:
        dest.write(",".join(_cell(r.get(c)) for c in columns) + "\n")


def _emit(rows: list[dict], columns: Sequence[str], args: argparse.Namespace) -> None:
    if getattr(args, "out", None):
        with open(args.out, "w", newline="") as fh:
            write_table(rows, columns, args.format, fh)
    else:
        write_table(rows, columns, args.format, sys.stdout)


# }}}

# {{{ signals


def _parse_float(text: str, what: str) -> float:
    try:
        return float(text)
    except ValueError as exc:
        raise UsageError(f"bad {what}: {text!r}") from exc


def grid_signal(signal: str, t_end: float, n: int) -> GridFunction:
    """``sin``, ``cos``, ``const:C``, ``poly:P`` (``t**P``) or ``csv:PATH``."""
    if signal.startswith("csv:"):
        return GridFunction.from_csv(signal[4:])
    grid = UniformGrid(t_end, n)
    if signal == "sin":
        return GridFunction.from_callable(np.sin, grid)
    if signal == "cos":
        return GridFunction.from_callable(np.cos, grid)
    if signal.startswith("const:"):
        c = _parse_float(signal[6:], "constant")
        return GridFunction.from_callable(lambda t: np.full_like(t, c), grid)
    if signal.startswith("poly:"):
        p = _parse_float(signal[5:], "power")
        if p < 0:
            raise UsageError("poly:P needs P >= 0")
        return GridFunction.from_callable(lambda t: t**p, grid)
    raise UsageError(f"unknown signal {signal!r}")


def periodic_signal(signal: str, period: float) -> periodicity.PeriodicSignal:
    """``sin`` and ``cos`` are ``sin(2 pi t / P)`` and ``cos(2 pi t / P)``; ``const:C`` is constant."""
    if signal == "sin":
        return periodicity.PeriodicSignal.sine(period)
    if signal == "cos":
        return periodicity.PeriodicSignal.cosine(period)
    if signal.startswith("const:"):
        return periodicity.PeriodicSignal.constant(_parse_float(signal[6:], "constant"), period)
    raise UsageError(f"unknown periodic signal {signal!r}")


# }}}

# {{{ commands


def cmd_specfun_eval(args: argparse.Namespace, cfg: Config) -> int:
    fn, vals = args.fn, args.args
    arity = {"gamma": 1, "igamma": 2, "1f2": 4, "mlf": 3}[fn]
    if len(vals) != arity:
        raise UsageError(f"{fn} takes {arity} arguments, got {len(vals)}")
    tol = args.tol if args.tol is not None else cfg.series_tol
    row: dict = {"fn": fn}
    if fn == "gamma":
        row.update(value=specfun.gamma(_parse_float(vals[0], "x")), tail_bound=0.0)
    elif fn == "igamma":
        a, z = (_parse_float(v, "argument") for v in vals)
        row.update(value=specfun.upper_incomplete_gamma(a, z), tail_bound=None)
    elif fn == "1f2":
        a, b, c, z = (_parse_float(v, "argument") for v in vals)
        r = specfun.hyp1f2(a, b, c, z, tol)
        row.update(value=r.value, tail_bound=r.tail_bound, terms=r.terms_used, converged=r.converged)
    else:
        alpha, beta = (_parse_float(v, "argument") for v in vals[:2])
        try:
            z = complex(vals[2].replace(" ", ""))
        except ValueError as exc:
            raise UsageError(f"bad z: {vals[2]!r}") from exc
        r = specfun.mittag_leffler(alpha, beta, z.real if z.imag == 0 else z, tol, cfg.ml_radius)
        value = r.value
        row.update(tail_bound=r.tail_bound, terms=r.terms_used, converged=r.converged)
        if isinstance(value, complex):
            row.update(value=value.real, imag=value.imag)
        else:
            row.update(value=value)
    _emit([row], ["fn", "value", "imag", "tail_bound", "terms", "converged"], args)
    return EXIT_OK if row.get("converged", True) else EXIT_FAIL


def cmd_fracop_apply(args: argparse.Namespace, cfg: Config) -> int:
    n = args.n if args.n is not None else cfg.default_n
    f = grid_signal(args.signal, args.t_end, n)
    op = {"integral": frac_integral, "caputo": caputo_derivative, "rl": rl_derivative}[args.op]
    g = op(f, args.alpha)
    rows = [{"t": t, "value": v} for t, v in zip(g.t, g.values)]
    _emit(rows, ["t", "value"], args)
    return EXIT_OK


def cmd_periodicity_lemmas(args: argparse.Namespace, cfg: Config) -> int:
    f = periodic_signal(args.signal, args.period)
    tol = cfg.quadrature_tol
    rows: list[dict] = []
    mean, cp, cm = periodicity.mean_abs_parts(f, atol=tol)
    rows += [
        {"quantity": "mean", "value": mean},
        {"quantity": "c_plus", "value": cp},
        {"quantity": "c_minus", "value": cm},
    ]
    for k in range(1, args.n_max + 1):
        rows.append({"quantity": "kernel_moment", "index": k, "value": periodicity.kernel_moment(f, args.alpha, k, tol)})
    ok = True
    for t in PSI_TIMES:
        psi = periodicity.psi_integral(f, args.alpha, t, tol)
        row = {"quantity": "psi", "index": t, "value": psi}
        if abs(mean) <= periodicity.MEAN_ZERO_TOL:
            lo, hi = periodicity.psi_bound(f, args.alpha, t, parts=(mean, cp, cm))
            inside = lo <= psi <= hi
            ok &= inside
            row.update(lo=lo, hi=hi, holds=inside)
        rows.append(row)
    _emit(rows, ["quantity", "index", "value", "lo", "hi", "holds"], args)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_periodicity_scan(args: argparse.Namespace, cfg: Config) -> int:
    g = GridFunction.from_csv(args.input)
    reports = periodicity.defect_scan(g, args.t_lo, args.t_hi, args.steps)
    _emit([r.row() for r in reports], periodicity.REPORT_COLUMNS, args)
    return EXIT_OK


def cmd_laplace_check(args: argparse.Namespace, cfg: Config) -> int:
    rows, ok = [], True
    tail = laplace.PowerTail(1.0, args.period, args.alpha)
    for s in args.s_grid:
        closed = laplace.varphi_transform_closed(args.alpha, args.period, s)
        num = laplace.laplace_numeric(
            lambda t: (args.period + t) ** args.alpha, s, 40.0 / s, tail, cfg.quadrature_tol
        )
        diff = abs(num - closed)
        passed = diff <= 1e-6 and closed > 0
        ok &= passed
        rows.append({"s": s, "closed": closed, "numeric": num, "abs_diff": diff, "passed": passed})
    _emit(rows, ["s", "closed", "numeric", "abs_diff", "passed"], args)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_solve(args: argparse.Namespace, cfg: Config) -> int:
    n = args.n if args.n is not None else cfg.default_n
    sweeps = args.corrector_sweeps if args.corrector_sweeps is not None else cfg.corrector_sweeps
    rhs = fodesolve.rhs_from_name(args.rhs, args.alpha)
    res = fodesolve.solve_caputo(rhs, args.alpha, args.u0, UniformGrid(args.t_end, n), sweeps)
    traj = res.trajectory
    if args.out and args.format == "csv":
        res.to_csv(args.out)
    else:
        rows = [{"t": t, "u": u} for t, u in zip(traj.t, traj.values)]
        if args.format == "json":
            payload = {**res.metadata(), "t": traj.t.tolist(), "u": traj.values.tolist()}
            text = json.dumps(payload, indent=2) + "\n"
            if args.out:
                with open(args.out, "w") as fh:
                    fh.write(text)
            else:
                sys.stdout.write(text)
        else:
            write_table(rows, ["t", "u"], "csv", sys.stdout)
    status = EXIT_FAIL if res.blew_up else EXIT_OK
    if args.certify:
        lo, hi, steps = args.certify
        reports = fodesolve.nonperiodicity_certificate(res, lo, hi, int(steps))
        dest = (args.out + ".certificate." + args.format) if args.out else None
        if dest:
            with open(dest, "w", newline="") as fh:
                write_table([r.row() for r in reports], periodicity.REPORT_COLUMNS, args.format, fh)
        best = reports[0]
        print(
            f"certificate: min sup_defect {best.sup_defect:.6g} at T = {best.T_tilde:.6g} over [{lo:g}, {hi:g}]",
            file=sys.stderr,
        )
    return status


def cmd_verify_all(args: argparse.Namespace, cfg: Config) -> int:
    results = acceptance.run_all(cfg)
    if args.format == "json":
        rows = [{"criterion": r.number, "name": r.name, "passed": r.passed, "detail": r.detail} for r in results]
        _emit(rows, ["criterion", "name", "passed", "detail"], args)
    else:
        for r in results:
            print(r.line())
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


# }}}

# {{{ parser


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--config", help="TOML settings file (default: ./fracperiod.toml if present)")
    p.add_argument("--quadrature-tol", type=float)
    p.add_argument("--series-tol", type=float)
    p.add_argument("--ml-radius", type=float)
    p.add_argument("--default-n", type=int)
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="fracperiod", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    sf = sub.add_parser("specfun", help="special functions").add_subparsers(dest="action", required=True)
    p = sf.add_parser("eval", parents=[common], help="evaluate gamma, igamma, 1f2 or mlf")
    p.add_argument("--fn", choices=("gamma", "igamma", "1f2", "mlf"), required=True)
    p.add_argument("--args", nargs="+", required=True, help="gamma: x; igamma: a z; 1f2: a b c z; mlf: alpha beta z")
    p.add_argument("--tol", type=float)
    p.add_argument("--out")
    p.set_defaults(handler=cmd_specfun_eval)

    fo = sub.add_parser("fracop", help="fractional operators").add_subparsers(dest="action", required=True)
    p = fo.add_parser("apply", parents=[common], help="apply an operator to a sampled signal")
    p.add_argument("--op", choices=("integral", "caputo", "rl"), required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--signal", required=True, help="sin, cos, const:C, poly:P (t**P) or csv:PATH")
    p.add_argument("--t-end", type=float, default=1.0)
    p.add_argument("--n", type=int)
    p.add_argument("--out")
    p.set_defaults(handler=cmd_fracop_apply)

    pe = sub.add_parser("periodicity", help="vanishing-integral chain and defect scans").add_subparsers(dest="action", required=True)
    p = pe.add_parser("lemmas", parents=[common], help="kernel moments, psi and its bounds, mean and parts")
    p.add_argument("--signal", default="sin", help="sin, cos (period P) or const:C")
    p.add_argument("--period", type=float, default=2 * math.pi)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--n-max", type=int, default=5)
    p.add_argument("--out")
    p.set_defaults(handler=cmd_periodicity_lemmas)
    p = pe.add_parser("scan", parents=[common], help="defect scan of a t,value CSV")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--t-lo", type=float, required=True)
    p.add_argument("--t-hi", type=float, required=True)
    p.add_argument("--steps", type=int, default=100)
    p.add_argument("--out")
    p.set_defaults(handler=cmd_periodicity_scan)

    la = sub.add_parser("laplace", help="Laplace transform checks").add_subparsers(dest="action", required=True)
    p = la.add_parser("check", parents=[common], help="closed form against quadrature")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--period", type=float, default=2 * math.pi)
    p.add_argument("--s-grid", type=float, nargs="+", default=[0.5, 1.0, 2.0, 5.0])
    p.add_argument("--out")
    p.set_defaults(handler=cmd_laplace_check)

    p = sub.add_parser("solve", parents=[common], help="solve a Caputo initial value problem")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--rhs", required=True, help="linear:K, logistic or paper-example")
    p.add_argument("--u0", type=float, required=True)
    p.add_argument("--t-end", type=float, required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--corrector-sweeps", type=int)
    p.add_argument("--out")
    p.add_argument("--certify", nargs=3, type=float, metavar=("T_LO", "T_HI", "STEPS"))
    p.set_defaults(handler=cmd_solve)

    ve = sub.add_parser("verify", help="acceptance suite").add_subparsers(dest="action", required=True)
    p = ve.add_parser("all", parents=[common], help="run every acceptance criterion")
    p.add_argument("--corrector-sweeps", type=int)
    p.add_argument("--out")
    p.set_defaults(handler=cmd_verify_all)
    return parser


def resolve_config(args: argparse.Namespace) -> Config:
    cfg = load_config(args.config)
    return cfg.merged(
        quadrature_tol=args.quadrature_tol,
        series_tol=args.series_tol,
        ml_radius=args.ml_radius,
        default_n=args.default_n,
        corrector_sweeps=getattr(args, "corrector_sweeps", None),
    )


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = resolve_config(args)
        return args.handler(args, cfg)
    except (UsageError, FracPeriodError, ValueError, OSError) as exc:
        print(f"fracperiod: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


# }}}

if __name__ == "__main__":
    sys.exit(main())
