"""Command-line front end: ``oscquad <subcommand> [flags]``.

Exit codes: 0 success, 2 usage, 3 degenerate/indeterminate existence,
4 numerical failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import exactpoly, hankel, orthopoly, quadrule
from .errors import ConvergenceError, ExistenceError
from .integrands import IntegrandSpec
from .moments import moments

EXIT_USAGE = 2
EXIT_EXISTENCE = 3
EXIT_NUMERICAL = 4

GOLDEN = (math.sqrt(5) - 1) / 2
REFINE_WIDTH = 1e-10


def fmt(x):
    """17 significant digits; -0.0 prints as 0."""
    return format(float(x) + 0.0, ".17g")


class UsageError(Exception):
    pass


# -- scan -------------------------------------------------------------------


@dataclass
class ScanResult:
    n: int
    rows: list  # (omega, abs_delta, rel_delta, verdict)
    minima: list = field(default_factory=list)  # (omega, abs_delta)


def _scan_point(args):
    n, omega, tol_exist, tol_zero = args
    rep = hankel.existence(omega, n, tol_exist, tol_zero)
    return omega, abs(rep.delta), rep.relative_delta, rep.verdict


def abs_delta_sq(omega, n):
    return abs(hankel.hankel_det(omega, n)) ** 2


def golden_minimize(f, a, b, width=REFINE_WIDTH):
    """Golden-section search on [a, b] down to ``width``, then one parabolic step.

    The closing parabola through the last bracket pins down quadratic
    minima (simple zeros of Delta) far below the bracket width.
    """
    c = b - GOLDEN * (b - a)
    d = a + GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    while b - a > width:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + GOLDEN * (b - a)
            fd = f(d)
    best, fbest = (c, fc) if fc <= fd else (d, fd)
    # parabola through (a, c, d) or (c, d, b) around the best point
    x1, x2, x3 = (a, c, d) if best == c else (c, d, b)
    y1, y2, y3 = f(x1), f(x2), f(x3)
    den = (x2 - x1) * (y2 - y3) - (x2 - x3) * (y2 - y1)
    if den != 0:
        x = x2 - 0.5 * ((x2 - x1) ** 2 * (y2 - y3) - (x2 - x3) ** 2 * (y2 - y1)) / den
        if a <= x <= b:
            fx = f(x)
            if fx < fbest:
                best, fbest = x, fx
    return best, fbest


def scan(n, omega_min, omega_max, points, refine=False, jobs=1,
         tol_exist=hankel.TOL_EXIST, tol_zero=hankel.TOL_ZERO):
    if not 0 < omega_min < omega_max:
        raise UsageError("need 0 < omega-min < omega-max")
    if points < 2:
        raise UsageError("need at least 2 points")
    grid = np.linspace(omega_min, omega_max, points)
    tasks = [(n, float(w), tol_exist, tol_zero) for w in grid]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_scan_point, tasks, chunksize=max(1, points // (4 * jobs))))
    else:
        rows = [_scan_point(t) for t in tasks]
    result = ScanResult(n, rows)
    if refine:
        vals = [r[1] for r in rows]
        for i in range(1, len(rows) - 1):
            if vals[i] <= vals[i - 1] and vals[i] <= vals[i + 1]:
                w, f2 = golden_minimize(lambda x: abs_delta_sq(x, n), rows[i - 1][0], rows[i + 1][0])
                result.minima.append((w, math.sqrt(f2)))
    return result


def _gnuplot_script(csv_path, ns):
    name = Path(csv_path).name
    lines = [
        "set datafile separator ','",
        "set logscale y",
        "set xlabel 'omega'",
        "set ylabel '|Delta_n|'",
        "set key top right",
    ]
    plots = [
        f"\"< awk -F, '$1 == {n} && $2 == \\\"grid\\\"' {name}\" using 3:4 with lines title 'n = {n}'"
        for n in ns
    ]
    lines.append("plot " + ", \\\n     ".join(plots))
    return "\n".join(lines) + "\n"


# -- output helpers ---------------------------------------------------------


def _emit(args, text):
    if args.out in (None, "-"):
        sys.stdout.write(text)
    else:
        try:
            Path(args.out).write_text(text)
        except OSError as exc:
            raise UsageError(f"cannot write {args.out}: {exc}") from exc


def _csv(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _json(obj):
    return json.dumps(obj, indent=2) + "\n"


def _cplx(z):
    return {"re": float(z.real) + 0.0, "im": float(z.imag) + 0.0}


# -- subcommands ------------------------------------------------------------


def cmd_moments(args):
    if args.omega < 0 or args.kmax < 0:
        raise UsageError("omega and kmax must be non-negative")
    m = moments(args.omega, args.kmax)
    if args.format == "json":
        return _json({
            "omega": m.omega,
            "values": [dict(k=k, method=m.methods[k], **_cplx(v)) for k, v in enumerate(m.values)],
        })
    rows = [(k, fmt(v.real), fmt(v.imag), m.methods[k]) for k, v in enumerate(m.values)]
    return _csv(("k", "re", "im", "method"), rows)


def cmd_hankel(args):
    reports = [hankel.existence(args.omega, n, args.tol_exist, args.tol_zero) for n in args.n]
    if args.format == "json":
        return _json([
            {
                "omega": r.omega, "n": r.n, "delta": _cplx(r.delta), "scale": r.scale,
                "verdict": r.verdict, "condition_estimate": r.condition_estimate,
            }
            for r in reports
        ])
    rows = [
        (r.n, fmt(r.omega), fmt(r.delta.real), fmt(r.delta.imag), fmt(abs(r.delta)),
         fmt(r.scale), r.verdict, fmt(r.condition_estimate))
        for r in reports
    ]
    return _csv(("n", "omega", "delta_re", "delta_im", "abs_delta", "scale", "verdict",
                 "condition_estimate"), rows)


def cmd_poly(args):
    p = orthopoly.monic_op(args.omega, args.n, args.tol_exist, args.tol_zero)
    res = orthopoly.orthogonality_residuals(p)
    if args.format == "json":
        data = p.to_dict()
        data["orthogonality_residuals"] = [float(r) for r in res]
        return _json(data)
    rows = [(m, fmt(c.real), fmt(c.imag)) for m, c in enumerate(p.full_coeffs())]
    return _csv(("power", "re", "im"), rows)


def _rule(args):
    return quadrule.gauss_rule(args.omega, args.n, args.cluster_tol, args.tol_exist, args.tol_zero)


def cmd_rule(args):
    rule = _rule(args)
    if args.format == "json":
        return _json({
            "omega": rule.omega,
            "n": rule.n,
            "nodes": [_cplx(x) for x in rule.nodes],
            "multiplicities": list(rule.multiplicities),
            "weights": [[_cplx(w) for w in ws] for ws in rule.weights],
            "exactness_residual": quadrule.exactness_check(rule),
        })
    rows = []
    for i, (x, m, ws) in enumerate(zip(rule.nodes, rule.multiplicities, rule.weights)):
        for k, w in enumerate(ws):
            rows.append((i, fmt(x.real), fmt(x.imag), m, k, fmt(w.real), fmt(w.imag)))
    return _csv(("node", "node_re", "node_im", "multiplicity", "derivative", "weight_re",
                 "weight_im"), rows)


def _integrand(args):
    kind = args.kind
    if kind == "monomial":
        return IntegrandSpec.monomial(int(args.param[0]) if args.param else 0)
    if kind == "polynomial":
        return IntegrandSpec.polynomial(args.param or [0.0])
    if kind == "exponential":
        return IntegrandSpec.exponential()
    if kind == "cosine":
        return IntegrandSpec.cosine(args.param[0] if args.param else 1.0)
    return IntegrandSpec.runge(args.param[0] if args.param else 25.0)


def cmd_integrate(args):
    from .oracle import oracle_integrate

    f = _integrand(args)
    rule = _rule(args)
    value = quadrule.integrate(rule, f)
    out = {"omega": rule.omega, "n": rule.n, "kind": f.kind, "value": _cplx(value)}
    if args.check:
        ref = oracle_integrate(f, rule.omega)
        out["reference"] = _cplx(ref)
        out["abs_error"] = abs(value - ref)
    if args.format == "json":
        return _json(out)
    header = ["omega", "n", "kind", "re", "im"]
    row = [fmt(rule.omega), rule.n, f.kind, fmt(value.real), fmt(value.imag)]
    if args.check:
        header += ["ref_re", "ref_im", "abs_error"]
        row += [fmt(ref.real), fmt(ref.imag), fmt(out["abs_error"])]
    return _csv(header, [row])


def cmd_certify(args):
    t = exactpoly.parse_fraction(args.t)
    det = exactpoly.symbolic_hankel(args.n, t)
    verdict = exactpoly.CERTIFIED if not det.is_zero() else exactpoly.NOT_CERTIFIED
    if args.format == "json":
        return _json({
            "n": args.n,
            "t": exactpoly.format_fraction(t),
            "verdict": verdict,
            "coefficients": [exactpoly.format_fraction(c) for c in det.coeffs],
        })
    return f"{verdict}; Δ̂_{args.n} = {exactpoly.format_poly(det)}\n"


def cmd_scan(args):
    if args.plot and args.out in (None, "-"):
        raise UsageError("--plot needs --out PATH for the CSV it references")
    results = [
        scan(n, args.omega_min, args.omega_max, args.points, args.refine, args.jobs,
             args.tol_exist, args.tol_zero)
        for n in args.n
    ]
    if args.format == "json":
        text = _json([
            {
                "n": r.n,
                "rows": [{"omega": w, "abs_delta": d, "rel_delta": rel, "verdict": v}
                         for w, d, rel, v in r.rows],
                "minima": [{"omega": w, "abs_delta": d} for w, d in r.minima],
            }
            for r in results
        ])
    else:
        rows = []
        for r in results:
            rows += [(r.n, "grid", fmt(w), fmt(d), fmt(rel), v) for w, d, rel, v in r.rows]
            rows += [(r.n, "minimum", fmt(w), fmt(d), "", "") for w, d in r.minima]
        text = _csv(("n", "kind", "omega", "abs_delta", "rel_delta", "verdict"), rows)
    _emit(args, text)
    if args.plot:
        Path(args.out).with_suffix(".gp").write_text(_gnuplot_script(args.out, args.n))
    return None


# -- parser -----------------------------------------------------------------


def _int_list(text):
    try:
        vals = [int(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers: {text!r}") from exc
    if not vals or any(v < 1 for v in vals):
        raise argparse.ArgumentTypeError("orders must be positive integers")
    return vals


def _positive_int(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--out", default=None, help="output path (default: stdout)")
    common.add_argument("--tol-exist", type=float, default=hankel.TOL_EXIST)
    common.add_argument("--tol-zero", type=float, default=hankel.TOL_ZERO)
    common.add_argument("--cluster-tol", type=float, default=quadrule.CLUSTER_TOL)

    parser = argparse.ArgumentParser(
        prog="oscquad",
        description="Orthogonal polynomials and Gaussian rules for exp(i omega x) on [-1, 1].",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("moments", parents=[common], help="moments mu_0..mu_kmax")
    p.add_argument("--omega", type=float, required=True)
    p.add_argument("--kmax", type=int, required=True)
    p.set_defaults(func=cmd_moments)

    p = sub.add_parser("hankel", parents=[common], help="Hankel determinants and verdicts")
    p.add_argument("--omega", type=float, required=True)
    p.add_argument("--n", type=_int_list, required=True)
    p.set_defaults(func=cmd_hankel)

    p = sub.add_parser("poly", parents=[common], help="monic orthogonal polynomial")
    p.add_argument("--omega", type=float, required=True)
    p.add_argument("--n", type=_positive_int, required=True)
    p.set_defaults(func=cmd_poly)

    p = sub.add_parser("rule", parents=[common], help="Gaussian quadrature rule")
    p.add_argument("--omega", type=float, required=True)
    p.add_argument("--n", type=_positive_int, required=True)
    p.set_defaults(func=cmd_rule)

    p = sub.add_parser("integrate", parents=[common], help="apply a Gaussian rule")
    p.add_argument("--omega", type=float, required=True)
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--kind", choices=("monomial", "polynomial", "exponential", "cosine", "runge"),
                   default="exponential")
    p.add_argument("--param", type=float, nargs="*", default=[],
                   help="degree / coefficients (lowest first) / c / a, by kind")
    p.add_argument("--check", action="store_true", help="compare with the oracle integrator")
    p.set_defaults(func=cmd_integrate)

    p = sub.add_parser("certify", parents=[common], help="exact existence certificate")
    p.add_argument("--t", required=True, help="tan(omega)/omega as an exact fraction p/q")
    p.add_argument("--n", type=_positive_int, required=True)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("scan", parents=[common], help="|Delta_n| over an omega grid")
    p.add_argument("--n", type=_int_list, required=True)
    p.add_argument("--omega-min", type=float, required=True)
    p.add_argument("--omega-max", type=float, required=True)
    p.add_argument("--points", type=int, required=True)
    p.add_argument("--refine", action="store_true", help="polish interior local minima")
    p.add_argument("--plot", action="store_true", help="also write a gnuplot script next to --out")
    p.add_argument("--jobs", type=_positive_int, default=1)
    p.set_defaults(func=cmd_scan)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text = args.func(args)
        if text is not None:
            _emit(args, text)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"oscquad: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"oscquad: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ExistenceError as exc:
        print(f"oscquad: error: {exc}", file=sys.stderr)
        return EXIT_EXISTENCE
    except (ConvergenceError, ArithmeticError, np.linalg.LinAlgError) as exc:
        print(f"oscquad: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    return 0


if __name__ == "__main__":
    sys.exit(main())
