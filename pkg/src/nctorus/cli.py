"""Command-line front end.

Every subcommand computes its result fully before writing anything.
Exit status is 0 on success, 1 on a domain error and 2 on a usage error;
diagnostics go to stderr prefixed with ``error:``.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from . import dynamics, ktheory, serialize, spectral
from .algebra import RotationParameter
from .axioms import axiom_report
from .errors import NCTorusError
from .serialize import format_float


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _param(text: str) -> RotationParameter:
    try:
        return RotationParameter.parse(text)
    except NCTorusError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="nctorus", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("verify-axioms", help="random-element property suite")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=_positive_int, default=200)

    p = sub.add_parser("rieffel", help="build a Rieffel projection and report its defects")
    p.add_argument("--lambda", dest="lam", type=_param, required=True)
    p.add_argument("--eps", type=float, default=0.05)
    p.add_argument("--trunc", type=_positive_int, default=256)
    p.add_argument("--ramp", choices=sorted(ktheory.RAMPS), default="smooth")

    p = sub.add_parser("trace-range", help="values m + n*lambda in [0, 1]")
    p.add_argument("--lambda", dest="lam", type=_param, required=True)
    p.add_argument("--mmax", type=_positive_int, required=True)
    p.add_argument("--nmax", type=_positive_int, required=True)

    p = sub.add_parser("k0", help="recover (m, n) from a trace value")
    p.add_argument("--lambda", dest="lam", type=_param, required=True)
    p.add_argument("--tau", type=float, required=True)
    p.add_argument("--nmax", type=int, default=5)
    p.add_argument("--tol", type=float, default=1e-6)

    p = sub.add_parser("canon", help="canonical parameter in [0, 1/2]")
    p.add_argument("--x", required=True)

    p = sub.add_parser("morita", help="GL(2,Z) orbit test via continued fractions")
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--mu", required=True)
    p.add_argument("--depth", type=_positive_int, default=40)

    p = sub.add_parser("orbit", help="rotation orbit with discrepancy and gap statistics")
    p.add_argument("--lambda", dest="lam", type=_param, required=True)
    p.add_argument("--theta0", type=float, default=0.0)
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--out")

    p = sub.add_parser("leaf", help="trace a Kronecker-flow leaf")
    p.add_argument("--lambda", dest="lam", type=_param, required=True)
    p.add_argument("--t0", type=float, default=0.0)
    p.add_argument("--wraps", type=_positive_int, required=True)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--out")

    p = sub.add_parser("butterfly", help="Hofstadter butterfly dataset as CSV")
    p.add_argument("--qmax", type=_positive_int, required=True)
    p.add_argument("--mu", type=float, default=1.0)
    p.add_argument("--grid", type=_positive_int, default=16)
    p.add_argument("--out")

    p = sub.add_parser("gaps", help="labelled spectral gaps at lambda = p/q")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=_positive_int, required=True)
    p.add_argument("--mu", type=float, default=1.0)
    p.add_argument("--grid", type=_positive_int, default=32)
    p.add_argument("--min-width", type=float, default=0.05)
    p.add_argument("--nmax", type=int)
    p.add_argument("--tol", type=float, default=1e-3)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--out")
    return parser


def _emit(text: str, out: str | None, stdout) -> None:
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        stdout.write(text)


def _cmd_verify_axioms(args, stdout) -> int:
    checks = axiom_report(seed=args.seed, trials=args.trials)
    lines = [f"{'check':<28} {'worst':>12} {'tol':>8}  result"]
    for c in checks:
        lines.append(f"{c.name:<28} {c.worst:12.3e} {c.tol:8.0e}  {'PASS' if c.passed else 'FAIL'}")
    stdout.write("\n".join(lines) + "\n")
    return 0 if all(c.passed for c in checks) else 1


def _cmd_rieffel(args, stdout) -> int:
    r = ktheory.build_rieffel_projection(args.lam, args.eps, args.trunc, ramp=args.ramp)
    doc = {
        "lambda": str(args.lam),
        "eps": args.eps,
        "trunc": args.trunc,
        "ramp": args.ramp,
        "trace": r.trace,
        "trace_error": abs(r.trace - args.lam.value),
        "idempotent_defect": r.idempotent_defect,
        "selfadjoint_defect": r.selfadjoint_defect,
        "truncation_error": r.truncation_error,
    }
    stdout.write(serialize.dumps(doc))
    return 0


def _cmd_trace_range(args, stdout) -> int:
    vals = ktheory.trace_range_sample(args.lam, args.mmax, args.nmax)
    stdout.write("".join(format_float(v) + "\n" for v in vals))
    return 0


def _cmd_k0(args, stdout) -> int:
    c = ktheory.k0_from_trace(args.tau, args.lam, args.nmax, args.tol)
    stdout.write(f"({c.m},{c.n})\n")
    return 0


def _cmd_canon(args, stdout) -> int:
    stdout.write(format_float(ktheory.canonical_parameter(args.x)) + "\n")
    return 0


def _cmd_morita(args, stdout) -> int:
    r = ktheory.morita_equivalent(args.lam, args.mu, args.depth)
    doc = {
        "lambda": args.lam,
        "mu": args.mu,
        "depth": args.depth,
        "equivalent": r.equivalent,
        "witness": list(r.witness) if r.witness else None,
        "terms_lambda": list(r.terms_lambda),
        "terms_mu": list(r.terms_mu),
    }
    stdout.write(serialize.dumps(doc))
    return 0


def _cmd_orbit(args, stdout) -> int:
    o = dynamics.orbit(args.theta0, args.lam, args.n)
    disc = dynamics.discrepancy(o)
    try:
        gaps = dynamics.three_gap_stats(o)
    except NCTorusError:
        # rational angles revisit points once n exceeds q
        gaps = None
    if args.format == "csv":
        text = "k,point\n" + "".join(f"{k},{format_float(x)}\n" for k, x in enumerate(o.points.tolist()))
    else:
        text = serialize.dumps({
            "lambda": str(args.lam),
            "theta0": o.theta0,
            "n": args.n,
            "points": o.points.tolist(),
            "discrepancy": disc,
            "gaps": gaps,
        })
    _emit(text, args.out, stdout)
    return 0


def _cmd_leaf(args, stdout) -> int:
    lt = dynamics.leaf_trace(args.lam, args.t0, args.wraps, args.tol)
    text = serialize.dumps({
        "lambda": str(args.lam),
        "t0": lt.t0,
        "wraps": args.wraps,
        "closed": lt.closed,
        "period": lt.period,
        "min_return_distance": lt.min_return_distance,
        "return_heights": lt.return_heights.tolist(),
        "segments": [[list(a), list(b)] for a, b in lt.segments],
    })
    _emit(text, args.out, stdout)
    return 0


def _cmd_butterfly(args, stdout) -> int:
    samples = spectral.butterfly_dataset(args.qmax, args.mu, args.grid)
    _emit(serialize.butterfly_csv(samples), args.out, stdout)
    return 0


def _cmd_gaps(args, stdout) -> int:
    s = spectral.spectrum_sweep(args.p, args.q, args.mu, args.grid)
    labels = spectral.gap_labels(s, args.min_width, args.nmax, args.tol)
    if args.format == "csv":
        text = serialize.gap_labels_csv(labels)
    else:
        text = serialize.gap_labels_to_json(labels, s.p, s.q, args.mu, args.grid, args.min_width)
    _emit(text, args.out, stdout)
    return 0


COMMANDS = {
    "verify-axioms": _cmd_verify_axioms,
    "rieffel": _cmd_rieffel,
    "trace-range": _cmd_trace_range,
    "k0": _cmd_k0,
    "canon": _cmd_canon,
    "morita": _cmd_morita,
    "orbit": _cmd_orbit,
    "leaf": _cmd_leaf,
    "butterfly": _cmd_butterfly,
    "gaps": _cmd_gaps,
}


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        stderr.write(f"error: {exc}\n")
        return 2
    except SystemExit as exc:
        # --help exits through here
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args, stdout)
    except NCTorusError as exc:
        stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return 1
    except OSError as exc:
        stderr.write(f"error: {exc}\n")
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
