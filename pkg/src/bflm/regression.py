"""Regression data model and the statistics every Bayes factor consumes.

A :class:`Dataset` owns the response and the full design (intercept
column inserted here, never by callers).  The central quantity is the
residual variance fraction: full-model residual sum of squares over the
centered total sum of squares, i.e. ``1 - R**2``.  It is computed from
an orthogonal factorization; the cross-product matrix is never inverted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import (
    ConstantResponseError,
    DegenerateDirectionError,
    NumericalFailureError,
    RankDeficientError,
)

__all__ = [
    "Dataset",
    "SufficientStatistic",
    "ModelParams",
    "PseudoDistance",
    "compute_sufficient_statistic",
    "pseudo_distance",
    "calibrate_beta_for_delta",
]

# Diagonal entries of R below this fraction of the largest one mean the
# design is treated as rank deficient.
_RANK_RTOL = 1e-10
# Round-off slack when clamping the statistic into [0, 1]; larger
# excursions are an upstream bug and raise instead of clamping.
_CLAMP_SLACK = 1e-12


@dataclass(frozen=True, eq=False)
class Dataset:
    """Response vector plus full-rank design with leading intercept column.

    Construct via :meth:`from_regressors`, which prepends the column of
    ones; ``design`` therefore has ``p + 1`` columns for ``p``
    regressors.  Requires ``n >= p + 3`` so that all downstream
    Bayes-factor integrals converge.  Instances are immutable (the
    arrays are frozen) and safe to share across threads.
    """

    y: np.ndarray
    design: np.ndarray

    def __post_init__(self) -> None:
        y = np.ascontiguousarray(np.asarray(self.y, dtype=float))
        design = np.ascontiguousarray(np.asarray(self.design, dtype=float))
        if y.ndim != 1:
            raise ValueError(f"response must be 1-D, got shape {y.shape}")
        if design.ndim != 2 or design.shape[0] != y.shape[0]:
            raise ValueError(
                f"design shape {design.shape} incompatible with response length {y.shape[0]}"
            )
        if not (np.isfinite(y).all() and np.isfinite(design).all()):
            raise ValueError("response and design must be finite")
        if not np.array_equal(design[:, 0], np.ones(design.shape[0])):
            raise ValueError("first design column must be the all-ones intercept")
        n, cols = design.shape
        if n < cols + 2:
            raise ValueError(
                f"need n >= p + 3 (n={n}, p={cols - 1}) for the Bayes-factor integrals"
            )
        if cols < 2:
            raise ValueError("at least one regressor beyond the intercept is required")
        y.flags.writeable = False
        design.flags.writeable = False
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "design", design)
        self._orthonormal_basis  # rank check happens here

    @classmethod
    def from_regressors(cls, y, regressors) -> "Dataset":
        """Build a dataset from ``p`` regressor columns (no intercept)."""
        regressors = np.asarray(regressors, dtype=float)
        if regressors.ndim == 1:
            regressors = regressors[:, None]
        ones = np.ones((regressors.shape[0], 1))
        return cls(np.asarray(y, dtype=float), np.hstack([ones, regressors]))

    @property
    def n(self) -> int:
        return self.design.shape[0]

    @property
    def p(self) -> int:
        return self.design.shape[1] - 1

    @cached_property
    def _orthonormal_basis(self) -> np.ndarray:
        """Orthonormal basis of the design's column span (thin QR)."""
        q, r = np.linalg.qr(self.design)
        diag = np.abs(np.diagonal(r))
        if diag.min() <= _RANK_RTOL * diag.max():
            raise RankDeficientError(
                f"design is numerically rank deficient (n={self.n}, p={self.p})"
            )
        return q


@dataclass(frozen=True)
class SufficientStatistic:
    """The triple (residual fraction, n, p) that drives every Bayes factor.

    ``bstat`` is the full-model residual sum of squares divided by the
    centered total sum of squares, which lies in [0, 1] because the
    design span contains the ones vector.
    """

    bstat: float
    n: int
    p: int

    def __post_init__(self) -> None:
        if not (0.0 <= self.bstat <= 1.0):
            raise ValueError(f"bstat must lie in [0, 1], got {self.bstat}")
        if self.p < 1:
            raise ValueError(f"p must be >= 1, got {self.p}")
        if self.n < self.p + 3:
            raise ValueError(f"need n >= p + 3, got n={self.n}, p={self.p}")


@dataclass(frozen=True)
class ModelParams:
    """Parameters of the two competing sampling models.

    ``null_intercept``/``null_sigma`` describe the intercept-only model;
    ``beta`` (length p + 1, intercept first) and ``sigma`` describe the
    full model.
    """

    beta: np.ndarray
    sigma: float
    null_intercept: float = 0.0
    null_sigma: float = 1.0

    def __post_init__(self) -> None:
        beta = np.asarray(self.beta, dtype=float)
        beta.flags.writeable = False
        object.__setattr__(self, "beta", beta)
        if not self.sigma > 0.0:
            raise ValueError(f"sigma must be positive, got {self.sigma}")
        if not self.null_sigma > 0.0:
            raise ValueError(f"null_sigma must be positive, got {self.null_sigma}")


@dataclass(frozen=True)
class PseudoDistance:
    """Scaled quadratic-form separation between the full model and the null."""

    delta: float

    def __post_init__(self) -> None:
        if self.delta < 0.0 or math.isnan(self.delta):
            raise ValueError(f"pseudo-distance must be nonnegative, got {self.delta}")

    def __float__(self) -> float:
        return self.delta


def compute_sufficient_statistic(data: Dataset) -> SufficientStatistic:
    """Residual variance fraction of the full fit, as a statistic triple.

    The numerator is computed by projecting the response off the
    orthonormal basis of the design span; the ratio is clamped into
    [0, 1] only within round-off (1e-12), and larger excursions raise
    :class:`NumericalFailureError` rather than being masked.
    """
    q = data._orthonormal_basis
    y = data.y
    resid = y - q @ (q.T @ y)
    rss = float(resid @ resid)
    centered = y - y.mean()
    tss = float(centered @ centered)
    if tss <= 0.0:
        raise ConstantResponseError("response has zero centered sum of squares")
    bstat = rss / tss
    if not -_CLAMP_SLACK <= bstat <= 1.0 + _CLAMP_SLACK:
        raise NumericalFailureError(
            f"residual fraction {bstat} escaped [0, 1] beyond round-off"
        )
    return SufficientStatistic(min(max(bstat, 0.0), 1.0), data.n, data.p)


def pseudo_distance(params: ModelParams, data: Dataset) -> PseudoDistance:
    """Separation of the sampling model ``(beta, sigma)`` from the null.

    Equals the centered squared norm of the fitted mean ``X beta``
    divided by ``2 sigma**2 n``; the projection onto the design span is
    implicit because ``X beta`` already lies in it.
    """
    beta = np.asarray(params.beta, dtype=float)
    if beta.shape != (data.p + 1,):
        raise ValueError(
            f"beta must have length p + 1 = {data.p + 1}, got {beta.shape}"
        )
    fitted = data.design @ beta
    centered = fitted - fitted.mean()
    value = float(centered @ centered) / (2.0 * params.sigma**2 * data.n)
    return PseudoDistance(value)


def calibrate_beta_for_delta(
    data: Dataset,
    sigma: float,
    delta_target: float,
    direction: np.ndarray,
) -> np.ndarray:
    """Coefficients (intercept 0) hitting a target pseudo-distance.

    Scales the unit ``direction`` (length p) so that the resulting
    coefficient vector reproduces ``delta_target`` exactly for this
    design; the scale is ``sqrt(2 sigma**2 delta_target / q)`` with
    ``q`` the centered quadratic form of the direction.
    """
    if not sigma > 0.0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    if delta_target < 0.0:
        raise ValueError(f"delta_target must be nonnegative, got {delta_target}")
    direction = np.asarray(direction, dtype=float)
    if direction.shape != (data.p,):
        raise ValueError(f"direction must have length p = {data.p}")
    norm = float(np.linalg.norm(direction))
    if not math.isclose(norm, 1.0, rel_tol=0.0, abs_tol=1e-8):
        raise ValueError(f"direction must have unit norm, got {norm}")
    q = _direction_quadratic_form(data.design[:, 1:], direction)
    if q <= 0.0:
        raise DegenerateDirectionError(
            "direction carries no centered signal through the design"
        )
    scale = math.sqrt(2.0 * sigma**2 * delta_target / q)
    beta = np.zeros(data.p + 1)
    beta[1:] = scale * direction
    return beta


def _direction_quadratic_form(regressors: np.ndarray, direction: np.ndarray) -> float:
    """Centered squared norm per observation of the direction's image."""
    image = regressors @ direction
    centered = image - image.mean()
    return float(centered @ centered) / regressors.shape[0]
