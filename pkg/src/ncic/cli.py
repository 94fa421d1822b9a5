"""Command-line front end: region reports, sweeps, rate tables, slope checks, validation.

Output is CSV (header row, 6-decimal floats, LF endings) or, for ``gdof``,
optionally JSON with the same keys.  The default Monte-Carlo seed is 0 and
can be overridden with the ``NCIC_SEED`` environment variable.

Exit codes: 0 success, 1 validation failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from typing import Iterable, Sequence

import numpy as np

from .finite_snr import DEFAULT_SAMPLES, rate_table
from .gdof_schemes import SchemeId, TermId, prelog_expected, prelog_numeric, region, sym_gdof
from .polytope import is_null, vertices_2d
from .validation import run_all

SEED_ENV = "NCIC_SEED"
SCHEMES = [s.value for s in SchemeId]
RATE_SCHEMES = ("train", "tdm")

GDOF_COLUMNS = ("kind", "a", "b", "c")
SWEEP_COLUMNS = ("alpha", "scheme", "sym_gdof")
RATES_COLUMNS = ("snr_db", "scheme", "rate", "stderr")
SLOPE_COLUMNS = ("term", "alpha", "coherence", "numeric", "expected", "abs_diff")


class UsageError(Exception):
    """Bad flag value; reported with the flag name and exit code 2."""

    def __init__(self, flag: str, message: str):
        super().__init__(f"{flag}: {message}")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(2)


def fmt(value) -> str:
    """Render a cell: floats with 6 decimals (no negative zero), everything else via str."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        text = f"{float(value):.6f}"
        return "0.000000" if text == "-0.000000" else text
    return str(value)


def write_csv(stream, columns: Sequence[str], rows: Iterable[Sequence]) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([fmt(v) for v in row])


def write_json(stream, columns: Sequence[str], rows: Iterable[Sequence]) -> None:
    records = [dict(zip(columns, (fmt(v) for v in row))) for row in rows]
    stream.write(json.dumps(records, indent=2) + "\n")


def _emit(args, columns, rows) -> None:
    buf = io.StringIO(newline="")
    if getattr(args, "format", "csv") == "json":
        write_json(buf, columns, rows)
    else:
        write_csv(buf, columns, rows)
    text = buf.getvalue()
    out = getattr(args, "out", None)
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- flag parsing --------------------------------------------------------------

def _float_list(flag: str, text: str) -> list[float]:
    try:
        values = [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(flag, f"expected comma-separated numbers, got {text!r}") from None
    if not values:
        raise UsageError(flag, "empty list")
    if not all(math.isfinite(v) for v in values):
        raise UsageError(flag, f"values must be finite, got {text!r}")
    return values


def _choice_list(flag: str, text: str, allowed: Sequence[str]) -> list[str]:
    items = [x.strip() for x in text.split(",") if x.strip()]
    if not items:
        raise UsageError(flag, "empty list")
    for item in items:
        if item not in allowed:
            raise UsageError(flag, f"unknown value {item!r}; choose from {', '.join(allowed)}")
    if len(set(items)) != len(items):
        raise UsageError(flag, f"duplicate entries in {text!r}")
    return items


def _check_alpha(flag: str, alpha: float) -> None:
    if not (math.isfinite(alpha) and alpha >= 0):
        raise UsageError(flag, f"must be finite and >= 0, got {alpha!r}")


def _check_coherence(T: int) -> None:
    if T < 2:
        raise UsageError("--coherence", f"must be >= 2, got {T}")


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None or raw == "":
        return 0
    try:
        seed = int(raw)
    except ValueError:
        raise UsageError(SEED_ENV, f"must be a nonnegative integer, got {raw!r}") from None
    if seed < 0:
        raise UsageError(SEED_ENV, f"must be a nonnegative integer, got {raw!r}")
    return seed


# -- commands ------------------------------------------------------------------

def cmd_gdof(args) -> int:
    _check_alpha("--alpha", args.alpha)
    _check_coherence(args.coherence)
    reg = region(args.scheme, args.alpha, args.coherence)
    rows: list[tuple] = [("row", float(a), float(b), float(c)) for a, b, c in reg.rows]
    rows += [("vertex", x, y, "") for x, y in vertices_2d(reg)]
    rows.append(("sym_gdof", "", "", sym_gdof(args.scheme, args.alpha, args.coherence)))
    rows.append(("empty", "", "", is_null(reg)))
    _emit(args, GDOF_COLUMNS, rows)
    return 0


def cmd_sweep(args) -> int:
    schemes = _choice_list("--schemes", args.schemes, SCHEMES)
    _check_coherence(args.coherence)
    _check_alpha("--alpha-min", args.alpha_min)
    _check_alpha("--alpha-max", args.alpha_max)
    if not args.alpha_max > args.alpha_min:
        raise UsageError("--alpha-max", f"must exceed --alpha-min ({args.alpha_min!r})")
    if args.steps < 2:
        raise UsageError("--steps", f"must be >= 2, got {args.steps}")
    rows = []
    for alpha in np.linspace(args.alpha_min, args.alpha_max, args.steps):
        for scheme in schemes:
            rows.append((float(alpha), scheme, sym_gdof(scheme, float(alpha), args.coherence)))
    _emit(args, SWEEP_COLUMNS, rows)
    return 0


def cmd_rates(args) -> int:
    snr_db = _float_list("--snr-db-list", args.snr_db_list)
    schemes = _choice_list("--schemes", args.schemes, RATE_SCHEMES)
    _check_alpha("--alpha", args.alpha)
    _check_coherence(args.coherence)
    if not (math.isfinite(args.link_gain) and args.link_gain > 0):
        raise UsageError("--link-gain", f"must be finite and positive, got {args.link_gain!r}")
    if args.samples < 1000:
        raise UsageError("--samples", f"must be >= 1000, got {args.samples}")
    seed = _default_seed() if args.seed is None else args.seed
    if seed < 0:
        raise UsageError("--seed", f"must be >= 0, got {seed}")
    if args.alpha not in (0.0, 1.0) and min(snr_db) + 10 * math.log10(args.link_gain) <= 0:
        raise UsageError("--snr-db-list", "effective SNR must exceed 0 dB unless alpha is 0 or 1")
    table = rate_table(snr_db, args.alpha, args.coherence, args.link_gain,
                       args.samples, seed, schemes)
    _emit(args, RATES_COLUMNS, [(db, s, est.value, est.stderr) for db, s, est in table])
    return 0


def cmd_slope(args) -> int:
    try:
        term = TermId[args.term]
    except KeyError:
        raise UsageError("--term", f"unknown term {args.term!r}; choose from "
                         + ", ".join(t.name for t in TermId)) from None
    _check_alpha("--alpha", args.alpha)
    _check_coherence(args.coherence)
    exps = _float_list("--exponents", args.exponents)
    if len(exps) < 2 or any(b <= a for a, b in zip(exps, exps[1:])):
        raise UsageError("--exponents", "need at least two strictly increasing values")
    numeric = prelog_numeric(term, args.alpha, args.coherence, exps)
    expected = prelog_expected(term, args.alpha, args.coherence)
    _emit(args, SLOPE_COLUMNS,
          [(term.name, args.alpha, args.coherence, numeric, expected, abs(numeric - expected))])
    return 0


def cmd_validate(args) -> int:
    seed = _default_seed()
    results = run_all(full=args.full, seed=seed)
    for r in results:
        sys.stdout.write(r.line() + "\n")
    failed = [r.name for r in results if not r.passed]
    sys.stdout.write(f"{len(results) - len(failed)}/{len(results)} checks passed\n")
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ncic", description=__doc__.split("\n")[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gdof", help="region report for one scheme")
    g.add_argument("--scheme", required=True, choices=SCHEMES)
    g.add_argument("--alpha", required=True, type=float)
    g.add_argument("--coherence", required=True, type=int)
    g.add_argument("--format", choices=("csv", "json"), default="csv")
    g.set_defaults(func=cmd_gdof)

    s = sub.add_parser("sweep", help="symmetric gDoF over an alpha grid")
    s.add_argument("--schemes", required=True, help="comma-separated scheme ids")
    s.add_argument("--coherence", required=True, type=int)
    s.add_argument("--alpha-min", type=float, default=0.0)
    s.add_argument("--alpha-max", type=float, default=2.0)
    s.add_argument("--steps", type=int, default=201)
    s.add_argument("--out", help="write CSV here instead of stdout")
    s.set_defaults(func=cmd_sweep)

    r = sub.add_parser("rates", help="finite-SNR rates of the training and TDM pipelines")
    r.add_argument("--snr-db-list", required=True, help="comma-separated SNRs in dB")
    r.add_argument("--alpha", type=float, default=1.0)
    r.add_argument("--coherence", type=int, default=5)
    r.add_argument("--link-gain", type=float, default=1.0)
    r.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    r.add_argument("--seed", type=int, default=None, help=f"default: ${SEED_ENV} or 0")
    r.add_argument("--schemes", default="train,tdm")
    r.set_defaults(func=cmd_rates)

    sl = sub.add_parser("slope", help="numeric prelog of a term bound vs the table")
    sl.add_argument("--term", required=True, help="TermId name, e.g. IX1U2_Y1_gU1")
    sl.add_argument("--alpha", required=True, type=float)
    sl.add_argument("--coherence", required=True, type=int)
    sl.add_argument("--exponents", default="8,10,12", help="comma-separated log10(snr) values")
    sl.set_defaults(func=cmd_slope)

    v = sub.add_parser("validate", help="run every self-check")
    mode = v.add_mutually_exclusive_group()
    mode.add_argument("--fast", action="store_true", help="reduced Monte-Carlo sizes (default)")
    mode.add_argument("--full", action="store_true", help="full Monte-Carlo sizes")
    v.set_defaults(func=cmd_validate)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"ncic {args.command}: error: {exc}\n")
        return 2
    except OSError as exc:
        sys.stderr.write(f"ncic {args.command}: error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
