"""Command-line entry point: ``lindley nht|bht|adjust|inflate|sweep|simulate``.

Reports go to stdout as JSON (default) or CSV; diagnostics go to stderr.
Exit status is 0 on success, 2 on a usage or contract error and 1 on a
numerical failure. A test decision is part of the report, never the exit code.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import asdict, fields, is_dataclass
from enum import Enum
from typing import Any, Sequence

from . import bayes, freq, mc, paradox, practical
from .numerics import DomainError

SWEEP_COLUMNS = [
    "n", "t", "p_value", "bayes_factor", "log_bayes_factor",
    "posterior_h0", "nht_reject", "bht_favors_h0",
]


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# output


def round_sig(x: float, precision: int) -> float:
    if not math.isfinite(x):
        return x
    return float(f"{x:.{precision}g}")


def _clean(value: Any, precision: int) -> Any:
    if isinstance(value, bool) or value is None or isinstance(value, int):
        return value
    if isinstance(value, float):
        return round_sig(value, precision)
    if isinstance(value, Enum):
        return value.value
    if is_dataclass(value):
        return {f.name: _clean(getattr(value, f.name), precision) for f in fields(value)}
    if isinstance(value, dict):
        return {k: _clean(v, precision) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_clean(v, precision) for v in value]
    return value


def _csv_cell(v: Any) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return ""
    return repr(v) if isinstance(v, float) else str(v)


def _flatten(record: dict, prefix: str = "") -> dict:
    out = {}
    for k, v in record.items():
        if isinstance(v, dict):
            out.update(_flatten(v, f"{prefix}{k}_"))
        else:
            out[f"{prefix}{k}"] = v
    return out


def render(record: dict, fmt: str, precision: int) -> str:
    record = _clean(record, precision)
    if fmt == "json":
        return json.dumps(record, indent=2)
    flat = _flatten(record)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(flat.keys())
    w.writerow(_csv_cell(v) for v in flat.values())
    return buf.getvalue().rstrip("\n")


def render_sweep(report: paradox.ParadoxReport, extra: dict, fmt: str, precision: int) -> str:
    rows = [_clean(asdict(r), precision) for r in report.rows]
    summary = _clean(
        {
            "crossover_n": report.crossover_n,
            "limit_check": report.limit_check,
            **extra,
        },
        precision,
    )
    if fmt == "json":
        head = _clean(
            {"t": report.rows[0].t, "alpha": report.alpha, "pi0": report.pi0,
             "posterior_threshold": report.posterior_threshold},
            precision,
        )
        return json.dumps({**head, **summary, "rows": rows}, indent=2)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SWEEP_COLUMNS)
    for r in rows:
        w.writerow(_csv_cell(r[c]) for c in SWEEP_COLUMNS)
    buf.write("# " + " ".join(f"{k}={_csv_cell(v)}" for k, v in summary.items()) + "\n")
    return buf.getvalue().rstrip("\n")


# ---------------------------------------------------------------------------
# argument types


def _precision(s: str) -> int:
    v = int(s)
    if not 6 <= v <= 17:
        raise argparse.ArgumentTypeError("precision must be between 6 and 17")
    return v


def _positive_int(s: str) -> int:
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {s}")
    return v


def _finite(s: str) -> float:
    v = float(s)
    if not math.isfinite(v):
        raise argparse.ArgumentTypeError(f"expected a finite number, got {s}")
    return v


def _add_output(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--precision", type=_precision, default=10,
                   help="significant digits for real-valued fields (6-17)")


def _add_nht_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=_positive_int, required=True)
    data = p.add_mutually_exclusive_group(required=True)
    data.add_argument("--mean", type=_finite, help="sample mean (z-test, needs --sigma)")
    data.add_argument("--successes", type=int, help="success count (binomial test)")
    p.add_argument("--sigma", type=_finite, help="known population sd for the z-test")
    p.add_argument("--theta0", type=_finite, required=True)
    p.add_argument("--alpha", type=_finite, default=0.05)
    p.add_argument("--confidence", type=_finite, default=0.95)
    p.add_argument("--se-mode", choices=["estimate-based", "null-based"], default="estimate-based")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lindley", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("nht", help="frequentist test of a point null")
    _add_nht_args(p)
    _add_output(p)

    p = sub.add_parser("bht", help="Bayes factor and posterior of a point null")
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--mean", type=_finite, required=True)
    p.add_argument("--sigma", type=_finite, required=True)
    p.add_argument("--theta0", type=_finite, required=True)
    p.add_argument("--pi0", type=_finite, default=0.5)
    p.add_argument("--prior-sd", type=_finite, default=None, help="slab sd (default: sigma)")
    p.add_argument("--check-quadrature", action="store_true",
                   help="also integrate the slab marginal numerically")
    _add_output(p)

    p = sub.add_parser("adjust", help="CI vs acceptance-range decision")
    _add_nht_args(p)
    p.add_argument("--delta", type=_finite, help="relative half-width of the range around theta0")
    p.add_argument("--range-lower", type=_finite)
    p.add_argument("--range-upper", type=_finite)
    _add_output(p)

    p = sub.add_parser("inflate", help="inflate a p-value for assumption uncertainty")
    p.add_argument("--p-observed", type=_finite, required=True)
    p.add_argument("--prob-assumptions", type=_finite, required=True)
    _add_output(p)

    p = sub.add_parser("sweep", help="fixed-t sweep over a grid of sample sizes")
    p.add_argument("--t", type=_finite, required=True)
    p.add_argument("--n-start", type=_positive_int, required=True)
    p.add_argument("--n-end", type=_positive_int, required=True)
    p.add_argument("--n-factor", type=_finite, default=2.0,
                   help="geometric ratio of the grid; 1 gives a unit step")
    p.add_argument("--alpha", type=_finite, default=0.05)
    p.add_argument("--pi0", type=_finite, default=0.5)
    p.add_argument("--posterior-threshold", type=_finite, default=0.5)
    p.add_argument("--refine", action="store_true",
                   help="bisect between grid points for the exact crossover n")
    _add_output(p)

    p = sub.add_parser("simulate", help="Monte Carlo calibration of both tests")
    p.add_argument("--theta-true", type=_finite, required=True)
    p.add_argument("--theta0", type=_finite, required=True)
    p.add_argument("--sigma", type=_finite, required=True)
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--alpha", type=_finite, default=0.05)
    p.add_argument("--confidence", type=_finite, default=None, help="CI level (default 1 - alpha)")
    p.add_argument("--pi0", type=_finite, default=0.5)
    p.add_argument("--posterior-threshold", type=_finite, default=0.5)
    p.add_argument("--reps", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=_positive_int, default=1)
    _add_output(p)
    return parser


# ---------------------------------------------------------------------------
# commands


def _run_nht(args) -> freq.NhtResult:
    if args.mean is not None:
        if args.sigma is None:
            raise UsageError("--mean needs --sigma")
        sample = freq.SampleSummary(args.n, args.mean, args.sigma)
        return freq.z_test(sample, args.theta0, args.alpha, args.confidence)
    data = freq.BinomialSummary(args.n, args.successes)
    mode = args.se_mode.replace("-", "_")
    return freq.binomial_test(data, args.theta0, args.alpha, args.confidence, mode)


def cmd_nht(args) -> dict:
    return asdict(_run_nht(args))


def cmd_bht(args) -> dict:
    sample = freq.SampleSummary(args.n, args.mean, args.sigma)
    config = bayes.BayesConfig(args.theta0, args.pi0, args.prior_sd)
    out = asdict(bayes.posterior_h0(sample, config))
    out["t_stat"] = abs(args.mean - args.theta0) / sample.std_error
    if args.check_quadrature:
        mg = bayes.marginal_slab_quadrature(sample, config)
        out["bayes_factor_quadrature"] = bayes.likelihood_h0(sample, config).value / mg
    return out


def cmd_adjust(args) -> dict:
    has_delta = args.delta is not None
    has_bounds = args.range_lower is not None or args.range_upper is not None
    if has_delta == has_bounds:
        raise UsageError("give exactly one of --delta or --range-lower/--range-upper")
    if has_bounds and (args.range_lower is None or args.range_upper is None):
        raise UsageError("--range-lower and --range-upper go together")
    rng = practical.make_range(args.delta, args.theta0, args.range_lower, args.range_upper)
    return asdict(practical.adjusted_decision(_run_nht(args), rng))


def cmd_inflate(args) -> dict:
    inp = practical.InflationInput(args.p_observed, args.prob_assumptions)
    return {**asdict(inp), "p_inflated": practical.inflate_p(inp)}


def n_grid(start: int, end: int, factor: float) -> list[int]:
    if start >= end:
        raise UsageError("--n-start must be smaller than --n-end")
    if factor < 1:
        raise UsageError("--n-factor must be at least 1")
    if factor == 1:
        return list(range(start, end + 1))
    # both endpoints are part of the grid
    grid, k = [], 0
    while True:
        n = round(start * factor**k)
        if grid and n <= grid[-1]:
            n = grid[-1] + 1
        if n >= end:
            return grid + [end]
        grid.append(n)
        k += 1


def cmd_sweep(args) -> tuple[paradox.ParadoxReport, dict]:
    grid = n_grid(args.n_start, args.n_end, args.n_factor)
    report = paradox.sweep_fixed_t(args.t, grid, args.alpha, args.pi0, args.posterior_threshold)
    extra = {}
    if args.refine:
        refined = None
        if report.crossover_n is not None:
            i = grid.index(report.crossover_n)
            lo = grid[i - 1] if i > 0 else report.crossover_n - 1
            refined = paradox.refine_crossover(
                args.t, lo, report.crossover_n, args.alpha, args.pi0, args.posterior_threshold
            )
        extra["crossover_n_refined"] = refined
    return report, extra


def cmd_simulate(args) -> dict:
    if args.reps < 1:
        raise UsageError("--reps must be at least 1")
    cfg = mc.McConfig(
        theta_true=args.theta_true, theta0=args.theta0, sigma=args.sigma, n=args.n,
        alpha=args.alpha, pi0=args.pi0, replications=args.reps, seed=args.seed,
        confidence_level=args.confidence, posterior_threshold=args.posterior_threshold,
    )
    return mc.run_mc(cfg, workers=args.workers).as_dict()


COMMANDS = {
    "nht": cmd_nht,
    "bht": cmd_bht,
    "adjust": cmd_adjust,
    "inflate": cmd_inflate,
    "simulate": cmd_simulate,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "sweep":
            report, extra = cmd_sweep(args)
            text = render_sweep(report, extra, args.format, args.precision)
        else:
            text = render(COMMANDS[args.command](args), args.format, args.precision)
    except (UsageError, DomainError) as exc:
        parser.print_usage(sys.stderr)
        print(f"lindley {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except ArithmeticError as exc:
        print(f"lindley {args.command}: numerical failure: {exc}", file=sys.stderr)
        return 1
    print(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
