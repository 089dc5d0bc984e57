"""Command-line front door.

Subcommands:
  compute    one Bayes factor from a statistic triple or a CSV dataset
  curve      posterior null-probability curves over a statistic grid
  region     inconsistency-region grid and boundary tables
  simulate   Monte-Carlo sweep serialized as JSON

Delimited/JSON outputs are the canonical artifacts; ``curve`` and
``region`` also render a PNG next to the data unless ``--no-plot`` is
given.  Exit codes: 0 success, 2 input or validation problem, 3
numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys

import numpy as np

from .asymptotics import (
    Truth,
    delta_boundary,
    delta_boundary_b,
    in_inconsistency_set,
)
from .errors import BflmError, ExperimentAbortedError, NumericalFailureError
from .factors import (
    KIND_TAGS,
    BayesFactorKind,
    log_bayes_factor,
    posterior_prob_m0,
)
from .quadrature import QuadratureConfig
from .regression import Dataset, SufficientStatistic, compute_sufficient_statistic
from .simulation import ExperimentSpec, FixedP, Proportional, rate_diagnostic, run_experiment

__all__ = ["main", "entry_point", "build_parser", "read_dataset_csv"]

_REGION_KINDS = ("ip", "iph", "zs", "b")


def _atomic_write(path: str, text: str) -> None:
    tmp = f"{path}.tmp"
    with open(tmp, "w", encoding="utf-8") as handle:
        handle.write(text)
    os.replace(tmp, path)


def read_dataset_csv(path: str) -> Dataset:
    """Dataset from a CSV of ``response, regressor_1, ..., regressor_p``.

    A single header row is allowed and detected by non-numeric cells;
    the intercept column must not be present in the file.
    """
    with open(path, newline="", encoding="utf-8") as handle:
        rows = [row for row in csv.reader(handle) if row]
    if not rows:
        raise ValueError(f"{path}: empty CSV")
    start = 0
    try:
        [float(cell) for cell in rows[0]]
    except ValueError:
        start = 1
    if start == len(rows):
        raise ValueError(f"{path}: no data rows")
    width = len(rows[start])
    if width < 2:
        raise ValueError(f"{path}: need a response column plus at least one regressor")
    parsed = []
    for lineno, row in enumerate(rows[start:], start=start + 1):
        if len(row) != width:
            raise ValueError(f"{path}:{lineno}: expected {width} columns, got {len(row)}")
        parsed.append([float(cell) for cell in row])
    table = np.asarray(parsed, dtype=float)
    return Dataset.from_regressors(table[:, 0], table[:, 1:])


def _quadrature_config(args) -> QuadratureConfig | None:
    if args.rel_tol is None and args.max_subdiv is None:
        return None
    base = QuadratureConfig()
    return QuadratureConfig(
        rel_tol=args.rel_tol if args.rel_tol is not None else base.rel_tol,
        abs_log_tol=base.abs_log_tol,
        max_subdivisions=args.max_subdiv
        if args.max_subdiv is not None
        else base.max_subdivisions,
    )


def _kind_from_args(parser, tag: str, args) -> BayesFactorKind:
    if tag == "robust":
        if args.a is None or args.d is None or args.rho is None:
            parser.error("--kind robust requires --a, --d and --rho")
        return BayesFactorKind.from_tag("robust", a=args.a, d=args.d, rho=args.rho)
    if args.a is not None or args.d is not None or args.rho is not None:
        parser.error("--a/--d/--rho are only valid with --kind robust")
    return BayesFactorKind.from_tag(tag)


def _add_robust_flags(sub) -> None:
    sub.add_argument("--a", type=float, help="robust kind: shape a > 0")
    sub.add_argument("--d", type=float, help="robust kind: shift d > 0")
    sub.add_argument("--rho", type=float, help="robust kind: truncation rho >= d/(d+n)")


def _add_quadrature_flags(sub) -> None:
    sub.add_argument("--rel-tol", type=float, help="quadrature relative tolerance")
    sub.add_argument("--max-subdiv", type=int, help="quadrature subdivision budget")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bflm",
        description="Bayes factors for a linear model against the intercept-only null.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    compute = commands.add_parser("compute", help="compute one Bayes factor")
    compute.add_argument("--kind", required=True, choices=KIND_TAGS)
    compute.add_argument("--n", type=int, help="sample size (with --bstat)")
    compute.add_argument("--p", type=int, help="regressor count (with --bstat)")
    compute.add_argument("--bstat", type=float, help="residual fraction in [0, 1]")
    compute.add_argument("--input", help="CSV dataset: response, then regressors")
    compute.add_argument("--json", action="store_true", help="machine-readable output")
    _add_robust_flags(compute)
    _add_quadrature_flags(compute)

    curve = commands.add_parser("curve", help="posterior probability curves")
    curve.add_argument("--kinds", default="ip,iph,zs,fs,b",
                       help="comma-separated kinds (default ip,iph,zs,fs,b)")
    curve.add_argument("--n", type=int, required=True)
    curve.add_argument("--p", type=int, required=True)
    curve.add_argument("--grid-size", type=int, default=401,
                       help="statistic grid points on (0, 1] (default 401)")
    curve.add_argument("--out", required=True, help="output CSV path")
    curve.add_argument("--no-plot", action="store_true", help="skip the PNG render")
    _add_robust_flags(curve)
    _add_quadrature_flags(curve)

    region = commands.add_parser("region", help="inconsistency-region tables")
    region.add_argument("--kinds", default="ip,iph,zs,b",
                        help="comma-separated subset of ip,iph,zs,b")
    region.add_argument("--r-min", type=float, default=1.001)
    region.add_argument("--r-max", type=float, default=20.0)
    region.add_argument("--delta-min", type=float, default=0.0)
    region.add_argument("--delta-max", type=float, default=10.0)
    region.add_argument("--grid-size", type=int, default=200, help="points per axis")
    region.add_argument("--out", required=True,
                        help="base path; writes <base>_grid.csv and <base>_boundary.csv")
    region.add_argument("--no-plot", action="store_true", help="skip the PNG render")

    simulate = commands.add_parser("simulate", help="Monte-Carlo sweep to JSON")
    simulate.add_argument("--kind", required=True, choices=KIND_TAGS)
    simulate.add_argument("--truth", required=True, choices=("null", "alternative"))
    simulate.add_argument("--delta", type=float, default=0.0,
                          help="target pseudo-distance (alternative only)")
    group = simulate.add_mutually_exclusive_group(required=True)
    group.add_argument("--fixed-p", type=int, help="constant regressor count")
    group.add_argument("--ratio", type=float, help="regressors grow as n / ratio")
    simulate.add_argument("--n-grid", required=True,
                          help="ascending comma-separated sample sizes")
    simulate.add_argument("--reps", type=int, default=300)
    simulate.add_argument("--sigma", type=float, default=1.0)
    simulate.add_argument("--seed", type=int, default=0)
    simulate.add_argument("--workers", type=int, default=1)
    simulate.add_argument("--out", required=True, help="output JSON path")
    simulate.add_argument("--plot", action="store_true",
                          help="also render <out>.png with the trajectory")
    _add_robust_flags(simulate)
    _add_quadrature_flags(simulate)

    return parser


# --- compute -------------------------------------------------------------------


def _cmd_compute(parser, args) -> int:
    kind = _kind_from_args(parser, args.kind, args)
    config = _quadrature_config(args)
    if args.input is not None:
        if args.bstat is not None or args.n is not None or args.p is not None:
            parser.error("--input and --bstat/--n/--p are mutually exclusive")
        stat = compute_sufficient_statistic(read_dataset_csv(args.input))
    else:
        if args.bstat is None or args.n is None or args.p is None:
            parser.error("need either --input or all of --bstat, --n, --p")
        stat = SufficientStatistic(args.bstat, args.n, args.p)

    value = log_bayes_factor(kind, stat, config)
    posterior = posterior_prob_m0(value)
    log10_bf = value.log_bf / math.log(10.0)
    if args.json:
        payload = {
            "kind": kind.tag,
            "n": stat.n,
            "p": stat.p,
            "bstat": stat.bstat,
            "log_bf": value.log_bf,
            "log10_bf": log10_bf,
            "posterior_m0": posterior,
            "status": value.status,
        }
        if kind.tag == "robust":
            payload["robust"] = {"a": kind.a, "d": kind.d, "rho": kind.rho}
        print(json.dumps(payload, sort_keys=True))
    else:
        print(f"kind:          {kind.tag}")
        print(f"n:             {stat.n}")
        print(f"p:             {stat.p}")
        print(f"bstat:         {stat.bstat:.12g}")
        print(f"log_bf:        {value.log_bf:.6f}")
        print(f"log10_bf:      {log10_bf:.6f}")
        print(f"posterior_m0:  {posterior:.6f}")
        print(f"status:        {value.status}")
    return 0


# --- curve ---------------------------------------------------------------------


def _parse_kinds(parser, text: str, allowed=KIND_TAGS):
    tags = [t.strip().lower() for t in text.split(",") if t.strip()]
    if not tags:
        parser.error("--kinds must name at least one kind")
    for tag in tags:
        if tag not in allowed:
            parser.error(f"unknown kind {tag!r} (allowed: {', '.join(allowed)})")
    if len(set(tags)) != len(tags):
        parser.error("--kinds contains duplicates")
    return tags


def _cmd_curve(parser, args) -> int:
    tags = _parse_kinds(parser, args.kinds)
    kinds = {tag: _kind_from_args(parser, tag, args) for tag in tags}
    if args.grid_size < 2:
        parser.error("--grid-size must be >= 2")
    config = _quadrature_config(args)
    bstats = np.linspace(0.0, 1.0, args.grid_size + 1)[1:]

    columns: dict[str, list[float]] = {tag: [] for tag in tags}
    failed = 0
    for b in bstats:
        stat = SufficientStatistic(float(b), args.n, args.p)
        for tag in tags:
            try:
                columns[tag].append(posterior_prob_m0(log_bayes_factor(kinds[tag], stat, config)))
            except NumericalFailureError:
                failed += 1
                print(
                    f"warning: {tag} failed at bstat={b:.6g}; cell left empty",
                    file=sys.stderr,
                )
                columns[tag].append(math.nan)

    lines = ["bstat," + ",".join(tags)]
    for i, b in enumerate(bstats):
        cells = [
            "" if math.isnan(columns[tag][i]) else repr(columns[tag][i]) for tag in tags
        ]
        lines.append(repr(float(b)) + "," + ",".join(cells))
    _atomic_write(args.out, "\n".join(lines) + "\n")
    print(f"wrote {args.out}")

    if not args.no_plot:
        from .plotting import render_curves

        png = os.path.splitext(args.out)[0] + ".png"
        render_curves(
            bstats, {tag: np.array(columns[tag]) for tag in tags}, args.n, args.p, png
        )
        print(f"wrote {png}")
    return 3 if failed else 0


# --- region --------------------------------------------------------------------


def _cmd_region(parser, args) -> int:
    tags = _parse_kinds(parser, args.kinds, allowed=_REGION_KINDS)
    if not args.r_min > 1.0:
        parser.error("--r-min must exceed 1")
    if not args.r_max > args.r_min:
        parser.error("--r-max must exceed --r-min")
    if args.delta_min < 0.0 or not args.delta_max > args.delta_min:
        parser.error("need 0 <= --delta-min < --delta-max")
    if args.grid_size < 2:
        parser.error("--grid-size must be >= 2")

    rs = np.linspace(args.r_min, args.r_max, args.grid_size)
    deltas = np.linspace(args.delta_min, args.delta_max, args.grid_size)

    membership = {
        tag: np.array(
            [[in_inconsistency_set(tag, float(r), float(d)) for d in deltas] for r in rs]
        )
        for tag in tags
    }

    base = args.out[:-4] if args.out.endswith(".csv") else args.out
    grid_path = f"{base}_grid.csv"
    lines = ["r,delta," + ",".join(f"{tag}_member" for tag in tags)]
    for i, r in enumerate(rs):
        for j, d in enumerate(deltas):
            flags = ",".join(str(int(membership[tag][i, j])) for tag in tags)
            lines.append(f"{float(r)!r},{float(d)!r},{flags}")
    _atomic_write(grid_path, "\n".join(lines) + "\n")
    print(f"wrote {grid_path}")

    boundaries = {}
    for tag in tags:
        if tag == "b":
            boundaries[tag] = np.array([delta_boundary_b(float(r)) for r in rs])
        else:
            boundaries[tag] = np.array([delta_boundary(tag, float(r)) for r in rs])
    boundary_path = f"{base}_boundary.csv"
    lines = ["r," + ",".join(f"{tag}_delta_boundary" for tag in tags)]
    for i, r in enumerate(rs):
        cells = ",".join(repr(float(boundaries[tag][i])) for tag in tags)
        lines.append(f"{float(r)!r},{cells}")
    _atomic_write(boundary_path, "\n".join(lines) + "\n")
    print(f"wrote {boundary_path}")

    if not args.no_plot:
        from .plotting import render_regions

        png = f"{base}_region.png"
        render_regions(rs, deltas, membership, boundaries, png)
        print(f"wrote {png}")
    return 0


# --- simulate ------------------------------------------------------------------


def _cmd_simulate(parser, args) -> int:
    kind = _kind_from_args(parser, args.kind, args)
    config = _quadrature_config(args)
    try:
        n_grid = tuple(int(x) for x in args.n_grid.split(","))
    except ValueError:
        parser.error(f"--n-grid must be comma-separated integers, got {args.n_grid!r}")
    regime = FixedP(args.fixed_p) if args.fixed_p is not None else Proportional(args.ratio)
    truth = Truth.NULL if args.truth == "null" else Truth.ALTERNATIVE
    spec = ExperimentSpec(
        kind=kind,
        truth=truth,
        regime=regime,
        n_grid=n_grid,
        replicates=args.reps,
        delta_target=args.delta,
        sigma=args.sigma,
        seed=args.seed,
    )
    result = run_experiment(spec, config, workers=max(1, args.workers))

    regime_echo = (
        {"fixed_p": regime.p} if isinstance(regime, FixedP) else {"ratio": regime.r}
    )
    kind_echo: dict = {"tag": kind.tag}
    if kind.tag == "robust":
        kind_echo.update({"a": kind.a, "d": kind.d, "rho": kind.rho})
    diagnostic = (
        rate_diagnostic(result, regime.p)
        if truth is Truth.NULL and isinstance(regime, FixedP)
        else None
    )
    payload = {
        "spec": {
            "kind": kind_echo,
            "truth": truth.value,
            "regime": regime_echo,
            "n_grid": list(spec.n_grid),
            "replicates": spec.replicates,
            "delta_target": spec.delta_target,
            "sigma": spec.sigma,
            "seed": spec.seed,
        },
        "trajectory": [
            {
                "n": point.n,
                "p": point.p,
                "median_log_bf": point.median_log_bf,
                "q10": point.q10,
                "q90": point.q90,
                "median_bstat": point.median_bstat,
            }
            for point in result.trajectory
        ],
        "slope": result.slope,
        "rate_diagnostic": diagnostic,
        "failures": result.failures,
    }
    _atomic_write(args.out, json.dumps(payload, sort_keys=True, indent=2) + "\n")
    print(f"wrote {args.out}")

    if args.plot:
        from .plotting import render_trajectory

        png = os.path.splitext(args.out)[0] + ".png"
        render_trajectory(result, png)
        print(f"wrote {png}")
    return 0


_HANDLERS = {
    "compute": _cmd_compute,
    "curve": _cmd_curve,
    "region": _cmd_region,
    "simulate": _cmd_simulate,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = _HANDLERS[args.command]
    try:
        return handler(parser, args)
    except (NumericalFailureError, ExperimentAbortedError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (BflmError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry_point() -> None:
    raise SystemExit(main())
