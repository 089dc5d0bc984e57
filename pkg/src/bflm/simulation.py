"""Reproducible Monte-Carlo harness for Bayes-factor trajectories.

Samples data either from the intercept-only model or from alternatives
calibrated to an exact pseudo-distance, computes the chosen factor
across a grid of sample sizes, and summarizes the per-n distribution of
the log Bayes factor.

Replicate streams are derived from ``(seed, n_index, replicate_index,
attempt)`` through numpy's ``SeedSequence`` entropy tuple, so results
are bit-identical regardless of execution order, thread count, or which
replicates ran first.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateDirectionError,
    ExperimentAbortedError,
    NumericalFailureError,
    RankDeficientError,
)
from .factors import BayesFactorKind, log_bayes_factor
from .asymptotics import Truth
from .quadrature import QuadratureConfig
from .regression import (
    Dataset,
    ModelParams,
    calibrate_beta_for_delta,
    compute_sufficient_statistic,
)

__all__ = [
    "FixedP",
    "Proportional",
    "ExperimentSpec",
    "TrajectoryPoint",
    "ExperimentResult",
    "replicate_rng",
    "generate_dataset",
    "run_experiment",
    "rate_diagnostic",
]


@dataclass(frozen=True)
class FixedP:
    """Regressor count held constant across the sample-size grid."""

    p: int

    def induced_p(self, n: int) -> int:
        return self.p


@dataclass(frozen=True)
class Proportional:
    """Regressor count growing as n over a fixed ratio r > 1."""

    r: float

    def induced_p(self, n: int) -> int:
        return max(1, round(n / self.r))


@dataclass(frozen=True)
class ExperimentSpec:
    """Complete, reproducible description of one Monte-Carlo sweep."""

    kind: BayesFactorKind
    truth: Truth
    regime: FixedP | Proportional
    n_grid: tuple[int, ...]
    replicates: int
    delta_target: float = 0.0
    sigma: float = 1.0
    seed: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "n_grid", tuple(int(n) for n in self.n_grid))
        if isinstance(self.kind, str):
            object.__setattr__(self, "kind", BayesFactorKind.from_tag(self.kind))
        if not self.n_grid:
            raise ValueError("n_grid must not be empty")
        if any(a >= b for a, b in zip(self.n_grid, self.n_grid[1:])):
            raise ValueError(f"n_grid must be strictly ascending, got {self.n_grid}")
        if isinstance(self.regime, FixedP) and self.regime.p < 1:
            raise ValueError("fixed regressor count must be >= 1")
        if isinstance(self.regime, Proportional) and not self.regime.r > 1.0:
            raise ValueError("proportional regime requires r > 1")
        for n in self.n_grid:
            p = self.regime.induced_p(n)
            if n < p + 3:
                raise ValueError(
                    f"n={n} induces p={p}; every grid point needs n >= p + 3"
                )
        if self.replicates < 1:
            raise ValueError("replicates must be >= 1")
        if not self.sigma > 0.0:
            raise ValueError(f"sigma must be positive, got {self.sigma}")
        if self.truth is Truth.NULL and self.delta_target != 0.0:
            raise ValueError("null-model sweeps require delta_target = 0")
        if self.truth is Truth.ALTERNATIVE and not self.delta_target > 0.0:
            raise ValueError("alternative sweeps require delta_target > 0")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 unsigned bits")


@dataclass(frozen=True)
class TrajectoryPoint:
    n: int
    p: int
    median_log_bf: float
    q10: float
    q90: float
    median_bstat: float
    failures: int


@dataclass(frozen=True)
class ExperimentResult:
    """Per-n summaries plus the fitted slope of median log BF vs log n."""

    spec: ExperimentSpec
    trajectory: tuple[TrajectoryPoint, ...]
    slope: float

    @property
    def failures(self) -> int:
        return sum(point.failures for point in self.trajectory)


def replicate_rng(
    seed: int, n_index: int, replicate_index: int, attempt: int = 0
) -> np.random.Generator:
    """Independent stream for one replicate of one grid point.

    The documented splitting rule: the stream is seeded by the entropy
    tuple ``(seed, n_index, replicate_index, attempt)``, so any
    replicate can be regenerated in isolation.
    """
    return np.random.default_rng(
        np.random.SeedSequence((seed, n_index, replicate_index, attempt))
    )


def generate_dataset(
    n: int,
    p: int,
    truth: Truth,
    delta_target: float,
    sigma: float,
    rng: np.random.Generator,
) -> tuple[Dataset, ModelParams]:
    """One synthetic dataset with regressors drawn i.i.d. standard normal.

    Under the null the response is pure noise around a zero intercept;
    under the alternative the coefficients point along the equal-weights
    unit direction, rescaled per realized design so the pseudo-distance
    equals ``delta_target`` exactly.
    """
    if n < p + 3:
        raise ValueError(f"need n >= p + 3, got n={n}, p={p}")
    regressors = rng.standard_normal((n, p))
    noise = rng.standard_normal(n)
    if truth is Truth.NULL:
        data = Dataset.from_regressors(sigma * noise, regressors)
        params = ModelParams(
            beta=np.zeros(p + 1), sigma=sigma, null_intercept=0.0, null_sigma=sigma
        )
        return data, params
    direction = np.full(p, 1.0 / math.sqrt(p))
    image = regressors @ direction
    centered = image - image.mean()
    q = float(centered @ centered) / n
    if q <= 0.0:
        raise DegenerateDirectionError(
            "equal-weights direction carries no signal through this design"
        )
    scale = math.sqrt(2.0 * sigma**2 * delta_target / q)
    beta = np.zeros(p + 1)
    beta[1:] = scale * direction
    data = Dataset.from_regressors(scale * image + sigma * noise, regressors)
    params = ModelParams(
        beta=beta, sigma=sigma, null_intercept=0.0, null_sigma=sigma
    )
    return data, params


def _one_replicate(
    spec: ExperimentSpec,
    config: QuadratureConfig | None,
    n_index: int,
    n: int,
    p: int,
    replicate_index: int,
) -> tuple[float, float] | None:
    """(log BF, bstat) for one replicate, or None after a retried failure."""
    for attempt in (0, 1):
        rng = replicate_rng(spec.seed, n_index, replicate_index, attempt)
        try:
            data, _ = generate_dataset(
                n, p, spec.truth, spec.delta_target, spec.sigma, rng
            )
            stat = compute_sufficient_statistic(data)
            value = log_bayes_factor(spec.kind, stat, config)
            return value.log_bf, stat.bstat
        except (DegenerateDirectionError, RankDeficientError, NumericalFailureError):
            continue
    return None


def run_experiment(
    spec: ExperimentSpec,
    config: QuadratureConfig | None = None,
    workers: int = 1,
) -> ExperimentResult:
    """Run the full sweep and summarize each grid point.

    ``workers`` only controls how replicates are scheduled; the output
    is identical for any worker count because every replicate owns its
    stream.  Aborts if more than 10% of replicates fail at any n.
    """
    points: list[TrajectoryPoint] = []
    for n_index, n in enumerate(spec.n_grid):
        p = spec.regime.induced_p(n)
        results: list[tuple[float, float] | None] = [None] * spec.replicates

        def job(replicate_index: int):
            return _one_replicate(spec, config, n_index, n, p, replicate_index)

        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                for idx, outcome in enumerate(pool.map(job, range(spec.replicates))):
                    results[idx] = outcome
        else:
            for idx in range(spec.replicates):
                results[idx] = job(idx)

        kept = [r for r in results if r is not None]
        failures = spec.replicates - len(kept)
        if failures > 0.1 * spec.replicates:
            raise ExperimentAbortedError(
                f"{failures}/{spec.replicates} replicate failures at n={n}"
            )
        log_bfs = np.array([r[0] for r in kept])
        bstats = np.array([r[1] for r in kept])
        points.append(
            TrajectoryPoint(
                n=n,
                p=p,
                median_log_bf=float(np.median(log_bfs)),
                q10=float(np.quantile(log_bfs, 0.10)),
                q90=float(np.quantile(log_bfs, 0.90)),
                median_bstat=float(np.median(bstats)),
                failures=failures,
            )
        )
    slope = _fit_slope(points)
    return ExperimentResult(spec=spec, trajectory=tuple(points), slope=slope)


def _fit_slope(points: list[TrajectoryPoint]) -> float:
    if len(points) < 2:
        return math.nan
    x = np.log([point.n for point in points])
    y = np.array([point.median_log_bf for point in points])
    if not np.isfinite(y).all():
        return math.nan
    slope, _ = np.polyfit(x, y, 1)
    return float(slope)


def rate_diagnostic(result: ExperimentResult, p: int) -> float:
    """Deviation of the fitted null-trajectory slope from ``-p/2``.

    Zero means the median log Bayes factor tracked ``-(p/2) log n``
    exactly; the value is reported, never asserted, because the
    finite-n rate is a diagnostic, not a guarantee.
    """
    return result.slope + 0.5 * p
