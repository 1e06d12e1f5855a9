"""Command-line front end.

Subcommands::

    tailsmith bound   --dist D --a A --method M [--t T|auto] [--side S]
                      [--smoothing MODE] [--n N]
    tailsmith compare --dist D --a A --method M [--t T|auto] [--side S]
    tailsmith sweep   --dist D --a-min LO --a-max HI --steps K --method M
    tailsmith verify  [--samples N] [--seed S] [--workers W]

``--output`` selects ``table`` (default), ``csv`` or ``json``.  The seed falls
back to the ``TAILSMITH_SEED`` environment variable, then 0.  Distribution
literals follow the grammar in :mod:`tailsmith.literals`.

Exit codes: 0 success; 1 a bound was violated (``verify``); 2 the request
could not be parsed; 3 a bound's hypothesis failed (the message names it);
4 a Monte Carlo estimate disagreed with its exact value (``verify``).
"""
from __future__ import annotations

import argparse
import csv
import json
import os
import sys

import numpy as np

from . import __version__
from .bounds import iid_chernoff, optimize_chernoff
from .distributions import tail_probability
from .errors import DomainError, ParseError, PreconditionError
from .literals import parse_distribution
from .verification import (
    METHODS,
    Smoothing,
    Verdict,
    bounded_event,
    compute_bound,
    mc_tail,
    method_tail,
    verify_corpus,
)

EXIT_OK, EXIT_VIOLATION, EXIT_PARSE, EXIT_PRECONDITION, EXIT_MC = 0, 1, 2, 3, 4

SWEEP_COLUMNS = ["a", "method", "classical", "smoothed", "exact_tail", "exact_smoothed_tail", "t", "drop_u"]


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


def fmt(x):
    """17 significant digits so floats survive a CSV round trip."""
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return f"{x:.17g}"
    return str(x)


def _t_arg(text):
    if text == "auto":
        return "auto"
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"--t must be a number or 'auto', got {text!r}")


def build_parser():
    p = _Parser(prog="tailsmith", description="Classical and uniform-smoothed tail bounds.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, need_a=True):
        sp.add_argument("--dist", required=True, help="distribution literal, e.g. exp:1")
        if need_a:
            sp.add_argument("--a", type=float, required=True, help="threshold")
        sp.add_argument("--method", choices=METHODS, required=True)
        sp.add_argument("--t", type=_t_arg, default=None, help="Chernoff exponent or 'auto'")
        sp.add_argument("--side", choices=["upper", "lower", "two-sided"], default=None)
        sp.add_argument("--output", choices=["table", "csv", "json"], default="table")

    b = sub.add_parser("bound", help="compute one bound")
    common(b)
    b.add_argument("--smoothing", choices=[m.value for m in Smoothing], default="classical")
    b.add_argument("--n", type=int, default=1, help="i.i.d. sample size for the sample-mean Chernoff bound")

    c = sub.add_parser("compare", help="classical vs smoothed bound, exact and MC tails")
    common(c)
    c.add_argument("--samples", type=int, default=1_000_000)
    c.add_argument("--seed", type=int, default=None)

    s = sub.add_parser("sweep", help="CSV of bounds over a grid of thresholds")
    common(s, need_a=False)
    s.add_argument("--a-min", type=float, required=True)
    s.add_argument("--a-max", type=float, required=True)
    s.add_argument("--steps", type=int, required=True)

    v = sub.add_parser("verify", help="run the verification corpus")
    v.add_argument("--samples", type=int, default=1_000_000)
    v.add_argument("--seed", type=int, default=None)
    v.add_argument("--workers", type=int, default=1)
    v.add_argument("--output", choices=["table", "csv", "json"], default="table")
    return p


def _seed(args):
    if args.seed is not None:
        return args.seed
    env = os.environ.get("TAILSMITH_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise ParseError(f"TAILSMITH_SEED={env!r} is not an integer") from None


def _side(method, side):
    """Check --side against the method; returns the Chernoff side."""
    if method == "chernoff":
        if side == "two-sided":
            raise ParseError("chernoff bounds one tail; use --side upper or lower")
        return side or "upper"
    natural = "upper" if method == "markov" else "two-sided"
    if side not in (None, natural):
        raise ParseError(f"{method} bounds the {natural} tail, not {side}")
    return "upper"


def _emit(rows, columns, output, out):
    if output == "json":
        out.write(json.dumps(rows if len(rows) != 1 else rows[0], indent=2) + "\n")
    elif output == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(columns)
        for r in rows:
            w.writerow([fmt(r.get(k)) for k in columns])
    else:
        if len(rows) == 1:
            width = max(len(k) for k in columns)
            for k in columns:
                out.write(f"{k:<{width}}  {_show(rows[0].get(k))}\n")
        else:
            table = [[_show(r.get(k)) for k in columns] for r in rows]
            widths = [max(len(k), *(len(row[i]) for row in table)) for i, k in enumerate(columns)]
            out.write("  ".join(k.ljust(wd) for k, wd in zip(columns, widths)).rstrip() + "\n")
            for row in table:
                out.write("  ".join(v.ljust(wd) for v, wd in zip(row, widths)).rstrip() + "\n")


def _show(x):
    if x is None:
        return "-"
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return f"{x:.6g}"
    return str(x)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_bound(args, out):
    dist = parse_distribution(args.dist)
    side = _side(args.method, args.side)
    if args.n < 1:
        raise ParseError("--n must be at least 1")
    if args.n > 1:
        if args.method != "chernoff" or args.smoothing != "classical" or side != "upper":
            raise ParseError("--n > 1 is supported for the classical upper Chernoff bound only")
        t = args.t
        if t is None or t == "auto":
            t = optimize_chernoff(dist, args.a, "upper").t_used
        res = iid_chernoff(dist, args.n, args.a, t)
    else:
        res = compute_bound(dist, args.a, args.method, args.smoothing, args.t, side)
    kind, _ = method_tail(args.method, side)
    row = {
        "dist": str(dist),
        "a": args.a,
        "method": res.method.value,
        "tail": kind.value,
        "event": bounded_event(res, args.smoothing),
        "bound": res.value,
        "raw": res.raw_value,
        "t": res.t_used,
        "n": res.n,
        "window": None if res.window is None else res.window.half_width,
        "drop_u": res.smoothing_free,
        "at_boundary": res.at_boundary,
        "exact_smoothed_tail": getattr(res, "exact_smoothed_tail", None),
    }
    _emit([row], list(row), args.output, out)
    return EXIT_OK


def _compare_row(dist, a, method, t, side, samples=None, seed=0):
    kind, center = method_tail(method, side)
    classical = compute_bound(dist, a, method, "classical", t, side)
    if method == "chernoff" and (t is None or t == "auto"):
        t = classical.t_used
    smoothed = None
    if method != "gauss":
        if method == "chernoff" and t == 0:
            smoothed = None
        else:
            smoothed = compute_bound(dist, a, method, "smoothed", t, side)
    row = {
        "dist": str(dist),
        "a": a,
        "method": method,
        "tail": kind.value,
        "t": classical.t_used,
        "classical": classical.value,
        "smoothed": None if smoothed is None else smoothed.value,
        "drop_u": None if smoothed is None else smoothed.smoothing_free,
        "smoothed_event": None if smoothed is None else bounded_event(smoothed, "auto-drop-u"),
        "exact_tail": tail_probability(dist, a, kind, center=center),
        "exact_smoothed_tail": None if smoothed is None else smoothed.exact_smoothed_tail,
    }
    if samples:
        mc, se = mc_tail(dist, None, a, kind, n=samples, seed=seed, center=center)
        row["mc_tail"] = mc
        row["mc_stderr"] = se
    return row


def cmd_compare(args, out):
    dist = parse_distribution(args.dist)
    side = _side(args.method, args.side)
    row = _compare_row(dist, args.a, args.method, args.t, side, args.samples, _seed(args))
    _emit([row], list(row), args.output, out)
    return EXIT_OK


def sweep_row(dist, a, method, t=None, side="upper"):
    """One sweep row; bounds whose hypotheses fail at this ``a`` are left empty."""
    kind, center = method_tail(method, side)
    row = {"a": a, "method": method, "exact_tail": tail_probability(dist, a, kind, center=center)}
    try:
        classical = compute_bound(dist, a, method, "classical", t, side)
    except (PreconditionError, DomainError):
        return row
    row["classical"] = classical.value
    row["t"] = classical.t_used
    if method == "gauss" or (method == "chernoff" and classical.t_used == 0):
        return row
    tt = classical.t_used if method == "chernoff" else t
    smoothed = compute_bound(dist, a, method, "smoothed", tt, side)
    row["smoothed"] = smoothed.value
    row["exact_smoothed_tail"] = smoothed.exact_smoothed_tail
    row["drop_u"] = smoothed.smoothing_free
    return row


def cmd_sweep(args, out):
    dist = parse_distribution(args.dist)
    side = _side(args.method, args.side)
    if args.steps < 1:
        raise ParseError("--steps must be at least 1")
    if not args.a_max >= args.a_min:
        raise ParseError("--a-max must not be below --a-min")
    grid = np.linspace(args.a_min, args.a_max, args.steps)
    rows = [sweep_row(dist, float(a), args.method, args.t, side) for a in grid]
    output = "csv" if args.output == "table" else args.output
    _emit(rows, SWEEP_COLUMNS, output, out)
    return EXIT_OK


def cmd_verify(args, out):
    if args.samples < 1:
        raise ParseError("--samples must be at least 1")
    reports = verify_corpus(n=args.samples, seed=_seed(args), workers=args.workers)
    if args.output == "json":
        out.write("[\n" + ",\n".join(r.to_json() for r in reports) + "\n]\n")
    else:
        rows = []
        for r in reports:
            rows.append({
                "dist": str(r.query.dist),
                "a": r.query.a,
                "method": r.bound.method.value if r.bound else r.method,
                "event": r.event,
                "bound": r.bound.value if r.bound else None,
                "exact": r.exact_tail,
                "mc": r.mc_estimate,
                "stderr": r.mc_stderr,
                "mc_agrees": r.mc_agrees,
                "verdict": r.verdict.value,
            })
        columns = list(rows[0])
        if args.output == "csv":
            _emit(rows, columns, "csv", out)
        else:
            _emit(rows, columns, "table", out)
            bad = sum(r.verdict is Verdict.VIOLATED for r in reports)
            out.write(f"{len(reports)} cells, {bad} violated\n")
    if any(r.verdict is Verdict.VIOLATED for r in reports):
        return EXIT_VIOLATION
    if any(r.mc_agrees is False for r in reports):
        return EXIT_MC
    return EXIT_OK


COMMANDS = {"bound": cmd_bound, "compare": cmd_compare, "sweep": cmd_sweep, "verify": cmd_verify}


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args, out)
    except ParseError as exc:
        err.write(f"tailsmith: error: {exc}\n")
        return EXIT_PARSE
    except PreconditionError as exc:
        err.write(f"tailsmith: hypothesis failed: {exc.hypothesis}\n  {exc}\n")
        return EXIT_PRECONDITION
    except DomainError as exc:
        err.write(f"tailsmith: hypothesis failed: {exc}\n")
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
