"""Command-line interface.

Exit codes: 0 success, 1 failed self-check, 2 domain error, 3 input error.
Every printed number comes from a library call; this module only formats.
"""

from __future__ import annotations

import argparse
import sys
import warnings

from . import __version__
from .bernoulli import generic_deltas, solve_bernoulli
from .checks import run_checks
from .cumulant import solve_profile
from .errors import DomainError, PMFParseError, UnderflowRiskError
from .exactmax import MAX_N, max_law
from .helix import helix_point, report_row, report_to_csv
from .lattice import bernoulli, read_pmf
from .petrov import compare_with_exact, tail_approx

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_DOMAIN = 2
EXIT_INPUT = 3


def _num(x):
    if isinstance(x, int):
        return str(x)
    return f"{x:.15g}"


def _table(rows):
    width = max(len(k) for k, _ in rows)
    return "".join(f"{k.ljust(width)}  {_num(v)}\n" for k, v in rows)


def _csv(header, rows):
    lines = [",".join(header)]
    lines.extend(",".join(_num(c) for c in row) for row in rows)
    return "\n".join(lines) + "\n"


def _step_law(args):
    if args.pmf is not None:
        return read_pmf(args.pmf)
    return bernoulli(args.p)


def cmd_profile(args):
    a = _step_law(args)
    prof = solve_profile(a, args.base, tol=args.tol)
    return _table(
        [
            ("gamma_star", prof.gamma_star),
            ("rho_star", prof.rho_star),
            ("sigma_star", prof.sigma_star),
            ("omega", prof.omega),
            ("p_omega", prof.p_omega),
            ("mean", prof.mean),
            ("base", prof.base),
            ("residual", prof.residual),
        ]
    )


def cmd_tail(args):
    a = _step_law(args)
    if args.n <= MAX_N:
        est, exact, ratio = compare_with_exact(a, args.n, args.m)
        extra = [("exact", exact), ("ratio", ratio)]
    else:
        est = tail_approx(a, args.n, args.m)
        extra = []
    return _table(
        [
            ("n", est.n),
            ("m", est.m),
            ("x", est.x),
            ("gamma", est.gamma),
            ("rate", est.rate),
            ("log_estimate", est.log_estimate),
            ("estimate", est.estimate),
        ]
        + extra
    )


def cmd_maxlaw(args):
    a = _step_law(args)
    law = max_law(a, args.n, args.base)
    ms = range(law.m_lo, law.m_hi + 1)
    rows = [(m, float(law.cdf_strict(m)), float(law.pmf(m))) for m in ms]
    return _csv(("m", "cdf_strict", "pmf"), rows)


def cmd_helix(args):
    a = _step_law(args)
    prof = solve_profile(a, args.base, tol=args.tol)
    point = helix_point(prof, args.a)
    lo, hi = point.essential_window()
    rows = [(m, float(point.cdf_strict(m)), float(point.pmf(m))) for m in range(lo, hi + 1)]
    return _csv(("m", "cdf_strict", "pmf"), rows)


def cmd_sweep(args):
    a = _step_law(args)
    if args.n_min > args.n_max:
        raise ValueError("--n-min must not exceed --n-max")
    prof = solve_profile(a, args.base, tol=args.tol)
    rows = []
    for n in range(args.n_min, args.n_max + 1):
        try:
            rows.append(report_row(a, n, args.base, prof))
        except UnderflowRiskError as exc:
            print(f"warning: n={n}: {exc}", file=sys.stderr)
            rows.append((n, None, None, None, None))
    return report_to_csv(rows)


def cmd_bernoulli(args):
    if args.p is None:
        raise ValueError("bernoulli needs --p")
    prof = solve_bernoulli(args.p)
    deltas = generic_deltas(prof, tol=args.tol)
    return _table(
        [
            ("p", prof.p),
            ("rho_star", prof.rho_star),
            ("kappa", prof.kappa),
            ("beta", prof.beta),
            ("gamma_star", prof.gamma_star),
            ("sigma_star", prof.sigma_star),
        ]
        + [(f"delta_{k}", v) for k, v in deltas.items()]
    )


def cmd_check(args):
    a = _step_law(args)
    results = run_checks(a, args.base, seed=args.seed)
    lines = [f"{'PASS' if r.passed else 'FAIL'}  {r.name}: {r.detail}" for r in results]
    failed = sum(not r.passed for r in results)
    lines.append("all invariants passed" if not failed else f"{failed} invariant(s) failed")
    return "\n".join(lines) + "\n", (EXIT_OK if not failed else EXIT_CHECK_FAILED)


COMMANDS = {
    "profile": (cmd_profile, "solve the threshold equation and print the constants"),
    "tail": (cmd_tail, "large-deviation estimate of P(S_n >= m), with the exact value when n is small"),
    "maxlaw": (cmd_maxlaw, "exact law of the maximum of b**n copies of S_n"),
    "helix": (cmd_helix, "CDF and pmf of the helix point F^a"),
    "sweep": (cmd_sweep, "CSV of Kolmogorov distances between exact maxima and the helix"),
    "bernoulli": (cmd_bernoulli, "closed-form constants for the {0,1} Bernoulli step"),
    "check": (cmd_check, "run the invariant self-test suite"),
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser():
    parser = _Parser(prog="cyclicmax", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    common = _Parser(add_help=False)
    src = common.add_mutually_exclusive_group()
    src.add_argument("--pmf", help="step law file: '<integer> <probability>' per line")
    src.add_argument("--p", type=float, help="Bernoulli step on {0,1} with P(1) = p")
    common.add_argument("--base", type=float, default=2.0, help="copy-count base b (default 2)")
    common.add_argument("--tol", type=float, default=1e-12)
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--seed", type=int, default=0)

    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_text)
        if name in ("tail", "maxlaw"):
            p.add_argument("--n", type=int, required=True)
        if name == "tail":
            p.add_argument("--m", type=int, required=True)
        if name == "helix":
            p.add_argument("--a", type=float, default=0.0)
        if name == "sweep":
            p.add_argument("--n-min", type=int, required=True)
            p.add_argument("--n-max", type=int, required=True)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command != "bernoulli" and (args.pmf is None) == (args.p is None):
        parser.error("exactly one of --pmf or --p is required")
    handler = COMMANDS[args.command][0]
    status = EXIT_OK
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("always")
            result = handler(args)
        if isinstance(result, tuple):
            result, status = result
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except PMFParseError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN

    if args.out:
        try:
            with open(args.out, "w", newline="") as fh:
                fh.write(result)
        except OSError as exc:
            print(f"output error: {exc}", file=sys.stderr)
            return EXIT_INPUT
    else:
        sys.stdout.write(result)
    return status


if __name__ == "__main__":
    sys.exit(main())
