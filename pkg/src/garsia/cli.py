"""Command-line front end.

    garsia entropy --spec FILE --n N
    garsia scan --grid L0:L1:S,T0:T1:S --n N [--mode M] [--spec FILE] [--out FILE] [--jobs J]
    garsia lemmas SUITE [--seed S] [--count C] [--n N] [--out FILE]

Exit codes: 0 ok, 1 property violation, 2 usage or parse error, 3 resource
guardrail.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from ._levels import DEFAULT_LIMITS, Limits
from .errors import GuardrailExceeded
from .exactnum import as_fraction, format_fraction
from .selfsim import (
    STANDARD_FORMS,
    IfsSpec,
    dim_upper_bound,
    entropy_rate_upper,
    find_overlap,
    garsia_entropy,
    similarity_dimension,
)
from .suites import SUITES, run_suite

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_GUARDRAIL = 0, 1, 2, 3

CSV_HEADER = "# garsia-scan v1"
CSV_COLUMNS = ("lambda", "tau", "rate_upper", "overlap_n", "dim_upper")
MODES = ("entropy-rate", "overlap-flag", "dim-upper")


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class ScanConfig:
    """Grid ranges, level, selected modes, output path and pool size."""

    lam_range: tuple
    tau_range: tuple
    n: int
    modes: tuple = MODES
    out: str = None
    jobs: int = 1

    def axis(self, which: str):
        lo, hi, steps = self.lam_range if which == "lambda" else self.tau_range
        if steps == 0:
            return []
        if steps == 1:
            return [lo]
        return [lo + (hi - lo) * i / (steps - 1) for i in range(steps)]

    def points(self):
        """Grid points in row-major order (lambda outer, tau inner)."""
        taus = self.axis("tau")
        return [(lam, tau) for lam in self.axis("lambda") for tau in taus]


def parse_range(text: str):
    parts = text.split(":")
    if len(parts) != 3:
        raise UsageError(f"range {text!r} is not lo:hi:steps")
    try:
        lo, hi = as_fraction(parts[0]), as_fraction(parts[1])
        steps = int(parts[2])
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise UsageError(f"range {text!r}: {exc}") from exc
    if steps < 0:
        raise UsageError("steps must be nonnegative")
    return lo, hi, steps


def parse_grid(text: str):
    halves = text.split(",")
    if len(halves) != 2:
        raise UsageError("grid must be lam0:lam1:steps,tau0:tau1:steps")
    lam_range, tau_range = parse_range(halves[0]), parse_range(halves[1])
    lo, hi, steps = lam_range
    if steps and not (0 < lo < 1 and (steps == 1 or 0 < hi < 1)):
        raise UsageError("lambda range must lie in (0, 1)")
    return lam_range, tau_range


def parse_modes(text: str):
    if text == "all":
        return MODES
    modes = tuple(m.strip() for m in text.split(","))
    for m in modes:
        if m not in MODES:
            raise UsageError(f"unknown mode {m!r}")
    return modes


def load_spec(path: str) -> IfsSpec:
    try:
        with open(path) as fh:
            return IfsSpec.from_json(json.load(fh))
    except (OSError, ValueError, KeyError, TypeError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot read spec {path!r}: {exc}") from exc


def _emit(text: str, out: str = None):
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# entropy


def cmd_entropy(spec: IfsSpec, n: int, limits: Limits = DEFAULT_LIMITS) -> dict:
    """Entropy, rate bound and (for a numeric lambda) the dimension bounds."""
    report = {
        "spec": spec.to_json(),
        "n": n,
        "garsia_entropy": garsia_entropy(spec, n, limits),
        "entropy_rate_upper": entropy_rate_upper(spec, n, limits),
    }
    try:
        report["dim_upper_bound"] = dim_upper_bound(spec, n, limits)
        report["similarity_dimension"] = similarity_dimension(spec)
    except ValueError:
        report["dim_upper_bound"] = None
        report["similarity_dimension"] = None
    return report


# ---------------------------------------------------------------------------
# scan


def _scan_cell(args):
    forms, weights, lam, tau, n, modes, atom_limit = args
    limits = Limits(atom_limit=atom_limit)
    spec = IfsSpec(forms, weights, lam, tau)
    row = {"lambda": format_fraction(lam), "tau": format_fraction(tau),
           "rate_upper": "", "overlap_n": "", "dim_upper": ""}
    if "entropy-rate" in modes:
        row["rate_upper"] = repr(entropy_rate_upper(spec, n, limits))
    if "overlap-flag" in modes:
        hit = find_overlap(spec, n, limits)
        row["overlap_n"] = str(hit[0] if hit else -1)
    if "dim-upper" in modes:
        row["dim_upper"] = repr(dim_upper_bound(spec, n, limits))
    return row


def cmd_scan(config: ScanConfig, base: IfsSpec = None, limits: Limits = DEFAULT_LIMITS) -> str:
    """CSV text for the grid; rows are row-major and independent of ``jobs``."""
    forms = base.forms if base else STANDARD_FORMS
    weights = base.weights if base else (Fraction(1, len(forms)),) * len(forms)
    tasks = [(forms, weights, lam, tau, config.n, config.modes, limits.atom_limit)
             for lam, tau in config.points()]
    if config.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            rows = list(pool.map(_scan_cell, tasks))
    else:
        rows = [_scan_cell(t) for t in tasks]
    lines = [CSV_HEADER, ",".join(CSV_COLUMNS)]
    lines += [",".join(row[c] for c in CSV_COLUMNS) for row in rows]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# lemmas


def cmd_lemmas(suite: str, seed: int = 0, count: int = 100, n: int = None) -> dict:
    if suite not in SUITES:
        raise UsageError(f"unknown suite {suite!r}")
    return run_suite(suite, seed, count, n)


def _dump(obj) -> str:
    def default(x):
        if isinstance(x, Fraction):
            return format_fraction(x)
        if isinstance(x, complex):
            return [x.real, x.imag]
        return str(x)

    def clean(x):
        if isinstance(x, float) and not math.isfinite(x):
            return str(x)
        if isinstance(x, dict):
            return {k: clean(v) for k, v in x.items()}
        if isinstance(x, (list, tuple)):
            return [clean(v) for v in x]
        return x

    return json.dumps(clean(obj), indent=2, sort_keys=True, default=default) + "\n"


# ---------------------------------------------------------------------------
# argument parsing


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="garsia", description="Entropy and overlap computations for self-similar measures.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--atom-limit", type=int, default=DEFAULT_LIMITS.atom_limit,
                        help="maximum candidate atoms per enumeration level")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("entropy", parents=[common], help="entropy report for one parameter pair")
    p.add_argument("--spec", required=True, help="IFS spec JSON file")
    p.add_argument("--n", type=int, required=True, help="level")
    p.add_argument("--out", help="write JSON here instead of stdout")

    p = sub.add_parser("scan", parents=[common], help="CSV over a (lambda, tau) grid")
    p.add_argument("--grid", required=True, help="lam0:lam1:steps,tau0:tau1:steps")
    p.add_argument("--n", type=int, required=True, help="level")
    p.add_argument("--mode", default="all", help="comma list of entropy-rate, overlap-flag, dim-upper, or all")
    p.add_argument("--spec", help="IFS spec JSON; only its forms and weights are used")
    p.add_argument("--out", help="write CSV here instead of stdout")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")

    p = sub.add_parser("lemmas", parents=[common], help="seeded property sweep")
    p.add_argument("suite", help="one of: " + ", ".join(SUITES))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--n", type=int, default=None, help="size parameter, suite dependent")
    p.add_argument("--out", help="write JSON here instead of stdout")
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    limits = Limits(atom_limit=args.atom_limit)
    try:
        if getattr(args, "n", None) is not None and args.n < 0:
            raise UsageError("n must be nonnegative")
        if args.command == "entropy":
            if args.n < 1:
                raise UsageError("n must be at least 1")
            report = cmd_entropy(load_spec(args.spec), args.n, limits)
            _emit(_dump(report), args.out)
            return EXIT_OK
        if args.command == "scan":
            lam_range, tau_range = parse_grid(args.grid)
            if args.n < 1 or args.jobs < 1:
                raise UsageError("n and jobs must be at least 1")
            base = load_spec(args.spec) if args.spec else None
            config = ScanConfig(lam_range, tau_range, args.n, parse_modes(args.mode), args.out, args.jobs)
            _emit(cmd_scan(config, base, limits), args.out)
            return EXIT_OK
        summary = cmd_lemmas(args.suite, args.seed, args.count, args.n)
        _emit(_dump(summary), args.out)
        return EXIT_VIOLATION if summary["violations"] else EXIT_OK
    except UsageError as exc:
        print(f"garsia: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GuardrailExceeded as exc:
        print(f"garsia: guardrail: {exc}", file=sys.stderr)
        return EXIT_GUARDRAIL


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
