"""Command-line interface.

Subcommands: compute, weights, converge, plan, simulate, audit, figures,
serve. Every output is a CSV table with a stable column contract and
9-decimal floats, so runs are diff-testable; --seed, --config and --out are
accepted everywhere.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import replace
from pathlib import Path

from . import figures
from .audit import SparseEvent, discretize_after, sparse_audit
from .config import RunConfig, load_config, method_from_json
from .ewma import EwmaParams, convergence_analysis, lambda_from_n, weight_table
from .loadlog import LoadLogError, ingest
from .planner import PlanRequest, PlanStatus, max_safe_acute
from .ratios import MethodConfig, RatioMethod, ratio_series
from .studysim import (
    Mitigation,
    apply_mitigation,
    bias_gap,
    simulate_cohort,
    weekly_bias_report,
)
from .tables import UNBOUNDED, format_cell, write_table
from .timeseries import Coupling

APPENDIX_LAMBDA_GRID = [x / 1000 for x in range(500, 0, -25)]  # 0.500 .. 0.025


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="acwr",
        description="Acute:chronic workload ratio toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> argparse.ArgumentParser:
        p.add_argument("--config", help="JSON run configuration file")
        p.add_argument("--seed", type=int, help="override the configured seed")
        p.add_argument("--out", help="write the output table here instead of stdout")
        return p

    p = common(sub.add_parser("compute", help="ratio series for a load log"))
    p.add_argument("--input", required=True, help="load-log CSV")
    p.add_argument("--method", choices=[m.value for m in RatioMethod])
    p.add_argument("--athlete", help="restrict to one athlete id")

    p = common(sub.add_parser("weights", help="expanded EWMA weight table over a lambda grid"))
    p.add_argument("--lambdas", help="comma-separated decay constants (default: 0.500..0.025 step 0.025)")
    p.add_argument("--days", type=int, default=28)

    p = common(sub.add_parser("converge", help="initial-value convergence day and trace"))
    p.add_argument("--e0-a", type=float, default=55.0)
    p.add_argument("--e0-b", type=float, default=0.0)
    p.add_argument("--epsilon", type=float, default=1.0)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--decay", type=float, help="lambda in (0,1]")
    group.add_argument("--n", type=int, help="window N; lambda = 2/(N+1)", default=None)

    p = common(sub.add_parser("plan", help="maximum safe acute load under a ratio cap"))
    p.add_argument("--ratio-cap", type=float, required=True)
    p.add_argument("--priors", required=True, help="comma-separated prior weekly totals, most recent last")
    p.add_argument("--coupling", choices=["coupled", "uncoupled"], default="coupled")
    p.add_argument("--chronic-weeks", type=int, default=4)

    p = common(sub.add_parser("simulate", help="cohort simulation, bias report, mitigations"))
    p.add_argument("--parallel", action="store_true", help="simulate athletes on a thread pool")
    p.add_argument("--outcomes", help="also write per-athlete outcomes here")

    p = common(sub.add_parser("audit", help="zone labeling or sparse-data audit"))
    p.add_argument("--input", help="load-log CSV to label (zone mode)")
    p.add_argument("--method", choices=[m.value for m in RatioMethod])
    p.add_argument("--clamp", action="store_true", help="clamp end-point ratios before labeling")
    p.add_argument("--events", help="events CSV with header exposure_level,injured[,covariates...] (sparse mode)")
    p.add_argument("--levels", help="comma-separated exposure levels (sparse mode)")
    p.add_argument("--required", type=int, default=5)

    p = common(sub.add_parser("figures", help="emit plot-ready figure data"))
    p.add_argument(
        "--which",
        choices=["same-ratio", "weights", "convergence", "all"],
        default="all",
    )
    p.add_argument("--dir", default="figure-data", help="output directory (default figure-data/)")

    p = common(sub.add_parser("serve", help="start the planning service"))
    p.add_argument("--host", default=None)
    p.add_argument("--port", type=int, default=None)

    return parser


def _lambda_args(args) -> float:
    if args.decay is not None:
        return args.decay
    return lambda_from_n(args.n if args.n is not None else 28)


def _effective_config(args) -> RunConfig:
    cfg = load_config(args.config)
    if getattr(args, "seed", None) is not None:
        cohort = replace(cfg.cohort, seed=args.seed) if cfg.cohort else None
        cfg = replace(cfg, seed=args.seed, cohort=cohort)
    if getattr(args, "method", None):
        cfg = replace(cfg, method=method_from_json(
            {**_method_doc(cfg.method), "method": args.method}
        ))
    return cfg


def _method_doc(m: MethodConfig) -> dict:
    from .config import method_to_json

    return method_to_json(m)


# -- subcommand bodies --------------------------------------------------------


def _cmd_compute(args) -> int:
    cfg = _effective_config(args)
    result = ingest(args.input)
    header = ["athlete_id", "date", "method", "acute", "chronic", "ratio", "converged"]
    rows = []
    for athlete_id in sorted(result.logs):
        if args.athlete and athlete_id != args.athlete:
            continue
        series = result.logs[athlete_id].realized
        if series is None:
            continue
        for p in ratio_series(series, cfg.method):
            rows.append([athlete_id, p.at, p.method.value, p.acute, p.chronic, p.ratio, p.converged])
    write_table(header, rows, args.out)
    return 0


def _cmd_weights(args) -> int:
    lambdas = (
        [float(x) for x in args.lambdas.split(",")]
        if args.lambdas
        else APPENDIX_LAMBDA_GRID
    )
    header = ["lambda", "w0", "w1", "difference"]
    rows = []
    for lam in lambdas:
        table = weight_table(lam, args.days)
        rows.append([f"{lam:.3f}", table.w0, table.w1, table.difference])
    write_table(header, rows, args.out)
    return 0


def _cmd_converge(args) -> int:
    lam = _lambda_args(args)
    profile = figures.convergence_profile()
    res = convergence_analysis(profile, EwmaParams(lam), args.e0_a, args.e0_b, args.epsilon)
    header = ["day", "difference", "closed_form", "within_epsilon"]
    rows = [
        [t, d, c, abs(d) < args.epsilon]
        for t, (d, c) in enumerate(zip(res.trace, res.closed_form))
    ]
    write_table(header, rows, args.out)
    print(
        f"convergence_day={res.day} lambda={format_cell(lam)} "
        f"delta0={format_cell(args.e0_a - args.e0_b)} epsilon={format_cell(args.epsilon)}",
        file=sys.stderr,
    )
    return 0


def _cmd_plan(args) -> int:
    priors = [float(x) for x in args.priors.split(",")]
    req = PlanRequest(
        prior_weekly_totals=priors,
        max_acceptable_ratio=args.ratio_cap,
        coupling=Coupling(args.coupling),
        chronic_weeks=args.chronic_weeks,
    )
    res = max_safe_acute(req)
    header = ["coupling", "ratio_cap", "status", "max_acute_load", "achieved_ratio", "note"]
    load_cell = UNBOUNDED if res.status is PlanStatus.UNBOUNDED else res.max_acute_load
    rows = [[args.coupling, args.ratio_cap, res.status.value, load_cell, res.achieved_ratio_check, res.note]]
    write_table(header, rows, args.out)
    return 0


def _cmd_simulate(args) -> int:
    cfg = _effective_config(args)
    if cfg.cohort is None:
        print("config carries no cohort spec", file=sys.stderr)
        return 2
    outcomes = simulate_cohort(cfg.cohort, cfg.method, parallel=args.parallel)
    report = weekly_bias_report(outcomes, cfg.method)

    rows = [
        ["bias", "n_injured", float(report.n_injured)],
        ["bias", "n_uninjured", float(report.n_uninjured)],
        ["bias", "injured_mean_ratio", report.injured_mean],
        ["bias", "uninjured_mean_ratio", report.uninjured_mean],
        ["bias", "difference", report.difference],
        ["bias", "difference_se", report.difference_se],
    ]
    for stratum in report.injured_by_weekday:
        rows.append(["weekday_strata", f"day{stratum.weekday}_count", float(stratum.count)])
        rows.append(["weekday_strata", f"day{stratum.weekday}_mean_ratio", stratum.mean_ratio])
    for strategy in (Mitigation.SUBSEQUENT_WEEK, Mitigation.PROPORTIONAL_CENSORING):
        records = apply_mitigation(outcomes, strategy, cfg.method)
        gap, se = bias_gap(records)
        rows.append([strategy.value, "difference", gap])
        rows.append([strategy.value, "difference_se", se])
    write_table(["section", "key", "value"], rows, args.out)

    if args.outcomes:
        header = ["athlete_id", "injured", "injury_day", "injury_fraction_of_week", "realized_total"]
        out_rows = [
            [o.athlete_id, o.injured, o.injury_day, o.injury_fraction_of_week, o.realized.total()]
            for o in outcomes
        ]
        write_table(header, out_rows, args.outcomes)
    return 0


def _cmd_audit(args) -> int:
    if args.events:
        if not args.levels:
            print("--levels is required with --events", file=sys.stderr)
            return 2
        levels = args.levels.split(",")
        events = _read_events(args.events)
        result = sparse_audit(events, levels, args.required)
        header = ["covariates", "exposure_level", "events", "required", "verdict"]
        rows = [
            ["|".join(str(c) for c in cell.covariates), cell.exposure_level,
             cell.events, result.required_per_cell, "pass" if cell.ok else "fail"]
            for cell in result.cells
        ]
        rows.append(["overall", "", result.total_events, result.required_per_cell,
                     "pass" if result.passed else "fail"])
        write_table(header, rows, args.out)
        return 0

    if not args.input:
        print("give --input for zone labeling or --events for a sparse audit", file=sys.stderr)
        return 2
    cfg = _effective_config(args)
    result = ingest(args.input)
    header = ["athlete_id", "date", "ratio", "clamped_ratio", "label"]
    rows = []
    for athlete_id in sorted(result.logs):
        series = result.logs[athlete_id].realized
        if series is None:
            continue
        points = ratio_series(series, cfg.method)
        labeled = discretize_after(points, cfg.zones, clamp=args.clamp, clamp_bounds=cfg.clamp_bounds)
        for lp in labeled.points:
            rows.append([athlete_id, lp.point.at, lp.point.ratio, lp.clamped_ratio, lp.label])
    write_table(header, rows, args.out)
    return 0


def _read_events(path: str) -> list[SparseEvent]:
    import csv as _csv

    events = []
    with open(path, newline="") as handle:
        reader = _csv.reader(handle)
        header = next(reader)
        if header[:2] != ["exposure_level", "injured"]:
            raise LoadLogError(
                f"events file must start with columns exposure_level,injured; got {header}"
            )
        for row in reader:
            if not row:
                continue
            events.append(
                SparseEvent(tuple(row[2:]), row[0], row[1].strip() in ("1", "true", "True"))
            )
    return events


def _cmd_figures(args) -> int:
    out_dir = Path(args.dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    wanted = args.which
    written = []
    if wanted in ("same-ratio", "all"):
        header, rows = figures.same_ratio_rows()
        write_table(header, rows, out_dir / "same_ratio_profiles.csv")
        written.append("same_ratio_profiles.csv")
    if wanted in ("weights", "all"):
        header, rows = figures.weight_curve_rows()
        write_table(header, rows, out_dir / "weight_curves.csv")
        written.append("weight_curves.csv")
    if wanted in ("convergence", "all"):
        header, rows = figures.convergence_rows()
        write_table(header, rows, out_dir / "convergence_traces.csv")
        summaries = figures.convergence_summary()
        write_table(
            ["lambda", "delta0", "epsilon", "convergence_day"],
            [[s.lam, s.delta0, s.epsilon, s.day] for s in summaries],
            out_dir / "convergence_days.csv",
        )
        written.extend(["convergence_traces.csv", "convergence_days.csv"])
    print("\n".join(str(out_dir / name) for name in written))
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    cfg = _effective_config(args)
    bind = os.environ.get("ACWR_BIND", "127.0.0.1:8787")
    host, _, port_s = bind.partition(":")
    host = args.host or host or "127.0.0.1"
    port = args.port or int(port_s or 8787)
    uvicorn.run(create_app(cfg), host=host, port=port, log_level="info")
    return 0


_COMMANDS = {
    "compute": _cmd_compute,
    "weights": _cmd_weights,
    "converge": _cmd_converge,
    "plan": _cmd_plan,
    "simulate": _cmd_simulate,
    "audit": _cmd_audit,
    "figures": _cmd_figures,
    "serve": _cmd_serve,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (LoadLogError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
