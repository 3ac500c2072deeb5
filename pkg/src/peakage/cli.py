"""Command-line entry points.

Subcommands: ``model-curves`` (tabulate f, F, G over a grid), ``peak-age``
(solve for the per-follower rate maximum), ``simulate`` (write a synthetic
event log), ``analyze`` (career curves per stratum), and ``fit``
(power-law fits of aggregated cohorts).  Data tables go to ``--output``
(or stdout); diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import json
import sys
import warnings

from . import fitting, model, pipeline, simulate
from .events import MalformedLineWarning, MalformedLogError, read_event_log, write_event_log

DEFAULT_STRATA = ((100, 200), (200, 300), (300, 400), (400, 500))


def _add_model_args(parser):
    parser.add_argument("--c", type=float, required=True, help="follower rate at age 1 (> 0)")
    parser.add_argument("--alpha", type=float, required=True, help="power-law decay exponent (> 0)")
    parser.add_argument("--epsilon", type=float, default=1.0, help="age offset (> 0, default 1)")
    parser.add_argument("--s", type=float, default=0.0, help="initial follower count (>= 0, default 0)")


def _params(args) -> model.ModelParams:
    return model.ModelParams(c=args.c, alpha=args.alpha, epsilon=args.epsilon, s=args.s)


def _parse_stratum(text: str):
    lo, sep, hi = text.partition("..")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected LO..HI, got {text!r}")
    try:
        return int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"stratum bounds must be integers, got {text!r}") from None


@contextlib.contextmanager
def _output(path):
    if path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="") as handle:
            yield handle


def _cell(value) -> str:
    if isinstance(value, float):
        return repr(value)  # shortest form that round-trips exactly
    return str(value)


def _write_table(columns, rows, fmt, handle):
    if fmt == "csv":
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_cell(row[col]) for col in columns])
    else:  # jsonl
        for row in rows:
            handle.write(json.dumps({col: row[col] for col in columns}) + "\n")


def cmd_model_curves(args) -> int:
    params = _params(args)
    if args.t_max <= 0:
        raise ValueError(f"--t-max must be > 0, got {args.t_max!r}")
    rows = []
    if args.discrete:
        for t in range(1, int(args.t_max) + 1):
            rows.append(
                {
                    "t": t,
                    "f": model.follower_rate(params, t),
                    "F": model.discrete_cumulative(params, t),
                    "G_s": model.discrete_per_follower(params, t),
                }
            )
    else:
        if args.step <= 0:
            raise ValueError(f"--step must be > 0, got {args.step!r}")
        n = int(args.t_max / args.step + 1e-9)
        for i in range(1, n + 1):
            t = i * args.step
            rows.append(
                {
                    "t": t,
                    "f": model.follower_rate(params, t),
                    "F": model.cumulative_rate(params, t),
                    "G_s": model.per_follower_rate(params, t),
                }
            )
    with _output(args.output) as handle:
        _write_table(("t", "f", "F", "G_s"), rows, args.format, handle)
    return 0


def cmd_peak_age(args) -> int:
    peak = model.peak_age(_params(args), rel_tol=args.rel_tol)
    print(f"t_star={peak.t_star!r}")
    print(f"g_at_peak={peak.g_at_peak!r}")
    print(f"converged={'true' if peak.converged else 'false'}")
    return 0


def cmd_simulate(args) -> int:
    config = simulate.SimConfig(
        params=_params(args),
        horizon_weeks=args.horizon_weeks,
        follower_arrival_rate=args.arrival_rate,
        tweets_per_week=args.tweets_per_week,
        n_users=args.n_users,
        seed=args.seed,
        deterministic_arrivals=args.deterministic_arrivals,
    )
    log = simulate.simulate_population(config)
    if args.output == "-":
        write_event_log(log, sys.stdout)
    else:
        write_event_log(log, args.output)
    return 0


def _read_log(args):
    with warnings.catch_warnings():
        warnings.simplefilter("always", MalformedLineWarning)
        # Surface skipped lines on stderr with their line numbers.
        def _show(message, category, filename, lineno, file=None, line=None):
            print(f"warning: {message}", file=sys.stderr)

        old = warnings.showwarning
        warnings.showwarning = _show
        try:
            return read_event_log(args.input, max_bad_lines=args.max_bad_lines)
        finally:
            warnings.showwarning = old


def cmd_analyze(args) -> int:
    log = _read_log(args)
    strata = args.stratum or list(DEFAULT_STRATA)
    histories = pipeline.follower_histories(log) if args.normalize else None
    rows = []
    for lo, hi in strata:
        curve = pipeline.career_curve(log, (lo, hi), normalize=args.normalize, histories=histories)
        smoothed = pipeline.running_average(curve.values, args.smooth_width)
        label = f"[{lo},{hi})"
        for week, value, n in zip(curve.weeks, smoothed, curve.n_users):
            rows.append({"stratum": label, "week": week, "value": value, "n_users": n})
    with _output(args.output) as handle:
        _write_table(("stratum", "week", "value", "n_users"), rows, args.format, handle)
    return 0


def cmd_fit(args) -> int:
    log = _read_log(args)
    users = list(dict.fromkeys(t.user_id for t in log.tweets))
    if args.user:
        wanted = set(args.user)
        users = [u for u in users if str(u) in wanted]
    per_user = [pipeline.extract_cohorts(log, u) for u in users]
    cohorts = pipeline.aggregate_all_cohorts(per_user)
    fits, skipped = fitting.fit_all_cohorts(cohorts)
    for start_week, reason in skipped:
        print(f"skipped cohort start_week={start_week}: {reason}", file=sys.stderr)
    rows = [
        {
            "start_week": start_week,
            "c_hat": fit.c_hat,
            "alpha_hat": fit.alpha_hat,
            "r_squared": fit.r_squared,
            "n_points": fit.n_points,
        }
        for start_week, fit in fits
    ]
    with _output(args.output) as handle:
        _write_table(("start_week", "c_hat", "alpha_hat", "r_squared", "n_points"), rows, args.format, handle)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="peakage",
        description="Model, simulate, and analyze per-follower engagement over user careers.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("model-curves", help="tabulate f, F, and G over a time grid")
    _add_model_args(p)
    p.add_argument("--t-max", type=float, required=True, help="end of the time grid")
    p.add_argument("--step", type=float, default=1.0, help="grid step (continuous mode)")
    p.add_argument("--discrete", action="store_true", help="use the discrete sums over integer t")
    p.add_argument("--format", choices=("csv", "jsonl"), default="csv")
    p.add_argument("--output", default="-", help="output path, '-' for stdout")
    p.set_defaults(func=cmd_model_curves)

    p = sub.add_parser("peak-age", help="solve for the per-follower rate maximum")
    _add_model_args(p)
    p.add_argument("--rel-tol", type=float, default=1e-9, help="bisection tolerance")
    p.set_defaults(func=cmd_peak_age)

    p = sub.add_parser("simulate", help="write a synthetic event log")
    _add_model_args(p)
    p.add_argument("--horizon-weeks", type=int, required=True)
    p.add_argument("--n-users", type=int, required=True)
    p.add_argument("--arrival-rate", type=float, default=1.0, help="expected new followers per week")
    p.add_argument("--tweets-per-week", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument(
        "--deterministic-arrivals",
        action="store_true",
        help="exactly round(arrival-rate) new followers every week",
    )
    p.add_argument("--output", required=True, help="log path, '-' for stdout")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("analyze", help="career curves per career-length stratum")
    p.add_argument("--input", required=True)
    p.add_argument(
        "--stratum",
        action="append",
        type=_parse_stratum,
        metavar="LO..HI",
        help="career-length stratum, repeatable (default: 100..200 200..300 300..400 400..500)",
    )
    p.add_argument("--normalize", action="store_true", help="divide by interpolated follower count")
    p.add_argument("--smooth-width", type=int, default=5, help="running-average width (odd)")
    p.add_argument("--max-bad-lines", type=int, default=0)
    p.add_argument("--format", choices=("csv", "jsonl"), default="csv")
    p.add_argument("--output", default="-")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("fit", help="power-law fits of aggregated follower cohorts")
    p.add_argument("--input", required=True)
    p.add_argument("--user", action="append", help="restrict to these users (repeatable)")
    p.add_argument("--max-bad-lines", type=int, default=0)
    p.add_argument("--format", choices=("csv", "jsonl"), default="csv")
    p.add_argument("--output", default="-")
    p.set_defaults(func=cmd_fit)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except MalformedLogError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
