"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 validation error, 3 convergence
failure (``solve`` without ``--allow-unconverged``, ``sweep``/``gap`` with
``--strict``).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from fractions import Fraction

from . import __version__
from .bounds import bounds_report, limits_table
from .gap import gap_trend
from .radial import (
    HessianOrder, ProfileValidationError, RadialGrid, is_k_admissible,
    load_profile, quadratic_profile, rayleigh_cone_limit, rayleigh_quotient,
    smoothed_cone,
)
from .solver import SolverConfig, solve, sweep

EXIT_OK, EXIT_USAGE, EXIT_VALIDATION, EXIT_CONVERGENCE = 0, 1, 2, 3

SOLVE_COLUMNS = ["k", "n", "lambda", "lambda_pow_k", "iterations", "residual_ode",
                 "residual_identity", "converged"]
BOUNDS_COLUMNS = ["k", "n", "ma_lower", "ma_upper", "k_lower_simple", "k_lower_holder",
                  "k_upper_exact", "k_upper", "bp_gamma1", "bp_gamma2"]


class UsageError(Exception):
    pass


class ValidationError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _fmt(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    if isinstance(v, float):
        return format(v, ".17g")
    if v is None:
        return ""
    return str(v)


def _json_value(v):
    if isinstance(v, bool) or v is None:
        return json.dumps(v)
    if isinstance(v, float):
        return format(v, ".17g") if math.isfinite(v) else "null"
    if isinstance(v, Fraction):
        return json.dumps(_fmt(v))
    if isinstance(v, int):
        return str(v)
    return json.dumps(str(v))


def render(rows, columns, fmt, echo):
    """Serialize flat rows; floats always carry 17 significant digits."""
    if fmt == "json":
        objs = ["{" + ", ".join(f"{json.dumps(c)}: {_json_value(r.get(c))}" for c in columns)
                + "}" for r in rows]
        return "[" + ",\n ".join(objs) + "]\n"
    buf = io.StringIO()
    buf.write(f"# khessian {__version__} {echo}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([_fmt(r.get(c)) for c in columns])
    return buf.getvalue()


def _int_set(text):
    """``"3"``, ``"2:6"`` (inclusive) or ``"2,4,8"``."""
    out = []
    try:
        for part in text.split(","):
            part = part.strip()
            if not part:
                continue
            if ":" in part:
                a, b = part.split(":")
                out.extend(range(int(a), int(b) + 1))
            else:
                out.append(int(part))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad integer list {text!r}") from None
    return out


def _orders(ks, ns):
    if not ns:
        raise UsageError("--n is required")
    pairs = []
    for n in ns:
        for k in (ks if ks else range(1, n + 1)):
            if n >= 2 and 1 <= k <= n:
                pairs.append(HessianOrder(k, n))
    if not pairs:
        raise UsageError("no valid (k, n) with 1 <= k <= n and n >= 2")
    return pairs


def _config(args):
    try:
        return SolverConfig(grid_size=args.grid, tol_lambda=args.tol,
                            tol_profile=args.tol_profile, max_iters=args.max_iters,
                            quad_tol=args.quad_tol)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _solve_row(res):
    return {
        "k": res.order.k, "n": res.order.n, "lambda": float(res.lam),
        "lambda_pow_k": float(res.lam_pow_k), "iterations": res.iterations,
        "residual_ode": float(res.residual_ode),
        "residual_identity": float(res.residual_identity),
        "converged": bool(res.converged),
    }


def cmd_bounds(args):
    rows = []
    for order in _orders(args.k, args.n):
        rep = bounds_report(order, args.quad_tol)
        rows.append({
            "k": order.k, "n": order.n, "ma_lower": rep.ma_lower, "ma_upper": rep.ma_upper,
            "k_lower_simple": rep.k_lower_simple, "k_lower_holder": rep.k_lower_holder,
            "k_upper_exact": rep.k_upper_exact, "k_upper": rep.k_upper,
            "bp_gamma1": rep.bp_lower, "bp_gamma2": rep.bp_upper,
        })
    return rows, BOUNDS_COLUMNS, EXIT_OK


def cmd_solve(args):
    if args.k is None or args.n is None:
        raise UsageError("solve needs --k and --n")
    try:
        order = HessianOrder(args.k, args.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    res = solve(order, _config(args))
    if args.dump_profile:
        p = res.profile
        with open(args.dump_profile, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["r", "u", "u_prime"])
            for row in zip(p.r, p.values, p.slopes):
                w.writerow([format(float(x), ".17g") for x in row])
    code = EXIT_OK if res.converged or args.allow_unconverged else EXIT_CONVERGENCE
    return [_solve_row(res)], SOLVE_COLUMNS, code


def _read_pairs(path):
    try:
        with open(path, newline="") as fh:
            rows = [r for r in csv.reader(fh) if r and not r[0].startswith("#")]
    except OSError as exc:
        raise UsageError(f"cannot read pairs file: {exc}") from None
    if not rows:
        return []
    header = [h.strip() for h in rows[0]]
    if header[:2] != ["k", "n"]:
        raise ValidationError(f"pairs file header must be 'k,n', got {','.join(header)}")
    out = []
    for line, r in enumerate(rows[1:], start=2):
        try:
            out.append(HessianOrder(int(r[0]), int(r[1])))
        except (ValueError, IndexError) as exc:
            raise ValidationError(f"pairs file line {line}: {exc}") from None
    return out


def cmd_sweep(args):
    if args.pairs:
        orders = _read_pairs(args.pairs)
    else:
        orders = _orders(args.k, args.n)
    results = sweep(orders, _config(args), args.jobs)
    rows = []
    failed = False
    for res in results:
        row = _solve_row(res)
        ok = bool(res.converged) and bounds_report(res.order).contains(res.lam)
        row["sandwich_ok"] = ok
        failed |= not res.converged
        rows.append(row)
    code = EXIT_CONVERGENCE if (failed and args.strict) else EXIT_OK
    return rows, SOLVE_COLUMNS + ["sandwich_ok"], code


def cmd_gap(args):
    ns = args.n_list
    if not ns or any(n < 2 for n in ns):
        raise UsageError("--n-list needs dimensions n >= 2")
    recs = gap_trend(ns, _config(args), args.jobs)
    rows = [{"n": g.n, "distance": g.distance, "attained_radius": g.attained_radius,
             "alpha0": g.alpha0, "converged": g.converged} for g in recs]
    failed = any(not g.converged for g in recs)
    code = EXIT_CONVERGENCE if (failed and args.strict) else EXIT_OK
    return rows, ["n", "distance", "attained_radius", "alpha0", "converged"], code


def cmd_rayleigh(args):
    if args.k is None or args.n is None:
        raise UsageError("rayleigh needs --k and --n")
    try:
        order = HessianOrder(args.k, args.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    spec = args.profile
    grid = RadialGrid.uniform(args.grid)
    if spec.startswith("cone(") and spec.endswith(")"):
        try:
            args.epsilon = float(spec[5:-1])
        except ValueError:
            raise UsageError(f"bad epsilon in {spec!r}") from None
        spec = "cone"
    if spec in ("cone", "cone-limit") and not args.epsilon > 0:
        raise UsageError("epsilon must be positive")
    if spec == "cone":
        prof = smoothed_cone(args.epsilon, grid)
        quotient = rayleigh_quotient(prof, order, args.quad_tol)
        label = f"cone({format(args.epsilon, '.17g')})"
    elif spec == "cone-limit":
        prof = smoothed_cone(args.epsilon, grid)
        quotient = rayleigh_cone_limit(order, args.epsilon)
        label = "cone-limit"
    elif spec == "quadratic":
        prof = quadratic_profile(grid)
        quotient = rayleigh_quotient(prof, order, args.quad_tol)
        label = "quadratic"
    elif spec.startswith("file:"):
        try:
            prof = load_profile(spec[5:])
        except OSError as exc:
            raise UsageError(f"cannot read profile: {exc}") from None
        except ProfileValidationError as exc:
            raise ValidationError(str(exc)) from None
        quotient = rayleigh_quotient(prof, order, args.quad_tol)
        label = spec
    else:
        raise UsageError("profile must be cone, cone-limit, quadratic or file:<path>")
    row = {"k": order.k, "n": order.n, "profile": label, "quotient": float(quotient),
           "quotient_root": float(quotient ** (1.0 / order.k)),
           "admissible": bool(is_k_admissible(prof, order))}
    return [row], ["k", "n", "profile", "quotient", "quotient_root", "admissible"], EXIT_OK


def cmd_limits(args):
    if args.n_max < 2:
        raise UsageError("--n-max must be at least 2")
    rows = [{"n": n, "lower_floor": lo, "upper_root": up, "gap": g}
            for n, lo, up, g in limits_table(args.n_max)]
    return rows, ["n", "lower_floor", "upper_root", "gap"], EXIT_OK


def build_parser():
    parser = _Parser(prog="khessian", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"khessian {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    d = SolverConfig()

    def common(p, solver=True):
        p.add_argument("--format", choices=["csv", "json"], default="csv")
        p.add_argument("--quad-tol", type=float, default=d.quad_tol)
        if solver:
            p.add_argument("--grid", type=int, default=d.grid_size)
            p.add_argument("--tol", type=float, default=d.tol_lambda,
                           help="relative eigenvalue tolerance")
            p.add_argument("--tol-profile", type=float, default=d.tol_profile)
            p.add_argument("--max-iters", type=int, default=d.max_iters)
            p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("bounds", help="closed-form bounds per (k, n)")
    p.add_argument("--k", type=_int_set, help="k values, e.g. 2 or 1:5 (default: all)")
    p.add_argument("--n", type=_int_set, required=True)
    common(p, solver=False)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("solve", help="principal eigenpair of the unit ball")
    p.add_argument("--k", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--dump-profile", metavar="PATH")
    p.add_argument("--allow-unconverged", action="store_true")
    common(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("sweep", help="solve many (k, n) pairs")
    p.add_argument("--pairs", metavar="CSV", help="file with header 'k,n'")
    p.add_argument("--k", type=_int_set)
    p.add_argument("--n", type=_int_set)
    p.add_argument("--strict", action="store_true")
    common(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("gap", help="distance of eigenfunctions to the cone")
    p.add_argument("--n-list", type=_int_set, required=True)
    p.add_argument("--strict", action="store_true")
    common(p)
    p.set_defaults(func=cmd_gap)

    p = sub.add_parser("rayleigh", help="Rayleigh quotient of a test profile")
    p.add_argument("--profile", default="cone",
                   help="cone, cone-limit, quadratic or file:<path>")
    p.add_argument("--k", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--epsilon", type=float, default=1e-8)
    common(p)
    p.set_defaults(func=cmd_rayleigh)

    p = sub.add_parser("limits", help="diagonal bound table toward the limit 4")
    p.add_argument("--n-max", type=int, required=True)
    common(p, solver=False)
    p.set_defaults(func=cmd_limits)
    return parser


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    try:
        rows, columns, code = args.func(args)
    except UsageError as exc:
        print(f"khessian: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValidationError as exc:
        print(f"khessian: validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    sys.stdout.write(render(rows, columns, args.format, " ".join(["khessian", *argv])))
    return code


if __name__ == "__main__":
    sys.exit(main())
