"""``sphero`` command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or domain error,
3 numeric non-convergence.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from xml.sax.saxutils import escape

import numpy as np

from . import curve, mp_polys, oracle
from .curve import CurveParams
from .errors import (ConvergenceError, DomainError, NonFiniteError, PoleError,
                     SingularityError, SpheroOverflowError)
from .special import SeriesControl

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_NONCONV = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# ---------------------------------------------------------------- output

def _fmt(v, precision):
    if isinstance(v, str):
        return v
    if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
        return str(int(v))
    return format(float(v) + 0.0, f".{precision}g")  # + 0.0 drops negative zero


def _json_value(v, precision):
    if isinstance(v, str):
        return v
    if isinstance(v, complex):
        return {"re": _json_value(v.real, precision), "im": _json_value(v.imag, precision)}
    if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
        return int(v)
    v = float(v)
    if not math.isfinite(v):
        return None
    return float(format(v + 0.0, f".{precision}g"))


def render_table(columns, rows, fmt, precision):
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        for row in rows:
            w.writerow([_fmt(v, precision) for v in row])
        return buf.getvalue()
    if fmt == "json":
        objs = [{c: _json_value(v, precision) for c, v in zip(columns, row)} for row in rows]
        return json.dumps(objs, indent=2, allow_nan=False) + "\n"
    raise UsageError(f"format {fmt!r} is not available for this command")


def _emit(text, path):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _grid(args):
    if args.samples < 2:
        raise UsageError("--samples must be >= 2")
    if not args.s_min <= args.s_max:
        raise UsageError("--s-min must not exceed --s-max")
    return np.linspace(args.s_min, args.s_max, args.samples)


def _params(args):
    try:
        return CurveParams(args.alpha)
    except ValueError as exc:
        raise DomainError(str(exc)) from exc


# ---------------------------------------------------------------- commands

CURVE_COLUMNS = ("s", "x", "y", "z", "kappa", "tau", "kappa_g", "sphere_residual")


def curve_rows(p, grid, ctrl):
    rows = []
    for s in grid:
        smp = curve.frenet(p, float(s), ctrl)
        x, y, z = smp.position
        rows.append((float(s), x, y, z, smp.kappa, smp.tau, smp.kappa_g,
                     x * x + (y - 1.0) ** 2 + z * z - 1.0))
    return rows


def cmd_curve(args, ctrl):
    p = _params(args)
    rows = curve_rows(p, _grid(args), ctrl)
    _emit(render_table(CURVE_COLUMNS, rows, args.format, args.precision), args.out)
    return EXIT_OK


def _projection(p, s, ctrl):
    # the parabolic-cylinder form needs alpha > 0; zeta(-alpha) = conj(zeta(alpha))
    z1 = curve.stereographic(p, s, ctrl)
    if p.alpha > 0:
        z2 = curve.stereographic_pcf(p, s, ctrl)
    else:
        z2 = curve.stereographic_pcf(CurveParams(-p.alpha), s, ctrl).conjugate()
    return z1, z2


def cmd_project(args, ctrl):
    p = _params(args)
    rows = []
    for s in _grid(args):
        z1, z2 = _projection(p, float(s), ctrl)
        rows.append((float(s), z1.real, z1.imag, z2.real, z2.imag, abs(z1 - z2)))
    cols = ("s", "X", "Y", "X_pcf", "Y_pcf", "disagreement")
    _emit(render_table(cols, rows, args.format, args.precision), args.out)
    return EXIT_OK


def cmd_verify(args, ctrl):
    from .verify import run_checks
    if args.format != "json":
        raise UsageError("verify emits a JSON report; use --format json")
    report = run_checks(seed=args.seed, n_random=args.random, tol=args.tol)
    _emit(json.dumps(report, indent=2, allow_nan=False) + "\n", args.out)
    if not report["passed"]:
        failed = [c["check"] for c in report["checks"] if not c["passed"]]
        failed += [r["name"] for r in report["identities"] if not r["passed"]]
        print(f"verification failed: {len(failed)} check(s)", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_oracle(args, ctrl):
    p = _params(args)
    if args.s_max < 0:
        raise UsageError("--s-max must be nonnegative for the oracle")
    if not args.step > 0:
        raise UsageError("--step must be positive")
    rows = []
    ode = oracle.ode_deviation(p, args.s_max, args.step) if args.s_max > 0 else 0.0
    rows.append(("ode", args.step, ode))
    for route in ("rotation", "spinor"):
        rows.append((f"kinematic_{route}", args.step,
                     oracle.kinematic_deviation(p, args.s_max, args.step, route)))
    _emit(render_table(("oracle", "step", "max_deviation"), rows, args.format, args.precision),
          args.out)
    return EXIT_OK


def cmd_polys(args, ctrl):
    if args.c <= -1:
        raise DomainError("c must exceed -1")
    if args.n_max < 0:
        raise UsageError("--n-max must be >= 0")
    seq = mp_polys.mp_sequence(mp_polys.MPParams(0.0, args.x, math.pi / 2.0, args.c), args.n_max)
    res = mp_polys.recurrence_residuals(seq)
    rows = [(n, float(q), float(r)) for n, (q, r) in enumerate(zip(seq.values, res))]
    _emit(render_table(("n", "Q_n", "residual"), rows, args.format, args.precision), args.out)
    return EXIT_OK


def _fit_viewbox(xs, ys, margin=0.05):
    x0, x1 = float(np.min(xs)), float(np.max(xs))
    y0, y1 = float(np.min(ys)), float(np.max(ys))
    w = max(x1 - x0, 1e-12)
    h = max(y1 - y0, 1e-12)
    return x0 - margin * w, y0 - margin * h, w * (1 + 2 * margin), h * (1 + 2 * margin)


def _panel(xs, ys, title, offset, size, precision):
    ys = -np.asarray(ys)  # SVG y axis points down
    vb = _fit_viewbox(xs, ys)
    pts = " ".join(f"{_fmt(x, precision)},{_fmt(y, precision)}" for x, y in zip(xs, ys))
    vbs = " ".join(_fmt(v, precision) for v in vb)
    return (f'  <svg x="{offset}" y="0" width="{size}" height="{size}" viewBox="{vbs}" '
            f'preserveAspectRatio="xMidYMid meet">\n'
            f'    <title>{escape(title)}</title>\n'
            f'    <polyline fill="none" stroke="black" stroke-width="1.5" '
            f'vector-effect="non-scaling-stroke" points="{pts}"/>\n'
            f'  </svg>\n')


def plot_grid(s_min, s_max, n):
    grid = np.linspace(s_min, s_max, n)
    if s_min <= 0.0 <= s_max:
        # snap the nearest sample to 0 so the projection polyline hits the origin
        grid[int(np.argmin(np.abs(grid)))] = 0.0
    return grid


def render_svg(p, grid, views, ctrl, precision=10, size=400):
    proj = [_projection(p, float(s), ctrl)[0] for s in grid]
    panels = [(np.array([z.real for z in proj]), np.array([z.imag for z in proj]),
               "stereographic projection (X, Y)")]
    if views:
        pos = np.array([curve.eval_position(p, float(s), ctrl) for s in grid])
        panels += [(pos[:, 0], pos[:, 1], "orthographic view (x, y)"),
                   (pos[:, 0], pos[:, 2], "orthographic view (x, z)"),
                   (pos[:, 1], pos[:, 2], "orthographic view (y, z)")]
    width = size * len(panels)
    body = "".join(_panel(xs, ys, t, i * size, size, precision)
                   for i, (xs, ys, t) in enumerate(panels))
    return (f'<?xml version="1.0" encoding="UTF-8"?>\n'
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{size}" '
            f'viewBox="0 0 {width} {size}">\n{body}</svg>\n')


def cmd_plot(args, ctrl):
    if args.format != "svg":
        raise UsageError("plot only writes svg")
    p = _params(args)
    if args.samples < 2:
        raise UsageError("--samples must be >= 2")
    if not args.s_min <= args.s_max:
        raise UsageError("--s-min must not exceed --s-max")
    grid = plot_grid(args.s_min, args.s_max, args.samples)
    _emit(render_svg(p, grid, args.views, ctrl, args.precision), args.out)
    return EXIT_OK


# ---------------------------------------------------------------- parser

def build_parser():
    ap = _Parser(prog="sphero", description="Spherical clothoid toolkit.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, fmt_default="csv", choices=("csv", "json", "svg")):
        sp.add_argument("--format", choices=choices, default=fmt_default)
        sp.add_argument("--out", default=None, help="output path (default stdout)")
        sp.add_argument("--precision", type=int, default=15, help="significant digits")

    def sampling(sp, s_min, s_max, n):
        sp.add_argument("--alpha", type=float, default=1.0)
        sp.add_argument("--s-min", type=float, default=s_min)
        sp.add_argument("--s-max", type=float, default=s_max)
        sp.add_argument("-n", "--samples", type=int, default=n)

    sp = sub.add_parser("curve", help="sample position and Frenet data")
    sampling(sp, -5.0, 5.0, 101)
    common(sp)
    sp.set_defaults(func=cmd_curve)

    sp = sub.add_parser("project", help="stereographic projection, two routes")
    sampling(sp, 0.0, 5.0, 51)
    common(sp)
    sp.set_defaults(func=cmd_project)

    sp = sub.add_parser("verify", help="run the full verification sweep")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--random", type=int, default=50, help="random draws per identity")
    sp.add_argument("--tol", type=float, default=None, help="override every tolerance")
    common(sp, "json")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("oracle", help="closed form against the RK4 oracles")
    sp.add_argument("--alpha", type=float, default=1.0)
    sp.add_argument("--s-max", type=float, default=3.0)
    sp.add_argument("--step", type=float, default=1e-3)
    common(sp)
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("polys", help="Meixner-Pollaczek table, lambda = 0, phi = pi/2")
    sp.add_argument("--x", type=float, default=0.25)
    sp.add_argument("--c", type=float, default=0.5)
    sp.add_argument("--n-max", type=int, default=10)
    common(sp)
    sp.set_defaults(func=cmd_polys)

    sp = sub.add_parser("plot", help="SVG of the projection")
    sampling(sp, 0.0, 5.0, 201)
    sp.add_argument("--views", action="store_true", help="add three orthographic views")
    common(sp, "svg")
    sp.set_defaults(func=cmd_plot)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.precision < 1 or args.precision > 17:
        print("sphero: --precision must be in 1..17", file=sys.stderr)
        return EXIT_USAGE
    try:
        ctrl = SeriesControl.from_env()
        return args.func(args, ctrl)
    except (ConvergenceError, NonFiniteError) as exc:
        print(f"sphero: non-convergence: {exc}", file=sys.stderr)
        return EXIT_NONCONV
    except (UsageError, DomainError, PoleError, SingularityError,
            SpheroOverflowError, ValueError) as exc:
        print(f"sphero: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"sphero: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
