"""Asymptotic behavior of the Bayes factors as regressors grow with n.

Covers the limit of the sufficient statistic in both growth regimes,
large-n bounds and approximations for two of the integral factors, the
explicit inconsistency-region boundaries ``delta^C(r)`` in the
proportional regime, region membership tests, and a verdict operation
that states whether a given factor is consistent in a given regime.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import InvalidRegimeError, UnsupportedRegimeError
from .factors import BayesFactorKind
from .regression import SufficientStatistic
from .special import log_gamma, log_lower_incomplete_gamma

__all__ = [
    "Truth",
    "Outcome",
    "Regime",
    "ConsistencyVerdict",
    "limit_bstat",
    "log_bf_l_lower_bound",
    "log_bf_b_large_n",
    "log_bf_zs_large_n",
    "log_bf_fs_large_n",
    "delta_boundary",
    "delta_boundary_b",
    "delta_boundary_limit",
    "in_inconsistency_set",
    "consistency_verdict",
]

_BOUNDARY_KINDS = ("ip", "iph", "zs")
_REGION_KINDS = ("ip", "iph", "zs", "fs", "b")
# Factors proved consistent for any sub-linear regressor growth.
_CONSISTENT_SUBLINEAR = ("ip", "iph", "zs", "fs", "b")


class Truth(Enum):
    """Which model generated the data in an asymptotic statement."""

    NULL = "null"
    ALTERNATIVE = "alternative"


class Outcome(Enum):
    CONSISTENT_TO_ZERO = "consistent_to_zero"
    CONSISTENT_TO_INFINITY = "consistent_to_infinity"
    INCONSISTENT = "inconsistent"


@dataclass(frozen=True)
class Regime:
    """Asymptotic sampling point: growth exponent, truth, and limits.

    ``b`` is the regressor growth exponent (p of order n**b); ``r`` is
    the limit of n/p and is required (and must exceed 1) only when
    ``b = 1``; ``delta`` is the limiting pseudo-distance and must be 0
    under the null.
    """

    b: float
    truth: Truth
    delta: float = 0.0
    r: float | None = None

    def __post_init__(self) -> None:
        if not 0.0 <= self.b <= 1.0:
            raise InvalidRegimeError(f"growth exponent must be in [0, 1], got {self.b}")
        if self.delta < 0.0:
            raise InvalidRegimeError(f"delta must be nonnegative, got {self.delta}")
        if self.truth is Truth.NULL and self.delta != 0.0:
            raise InvalidRegimeError("delta must be 0 when sampling from the null")
        if self.b == 1.0:
            if self.r is None or not self.r > 1.0:
                raise InvalidRegimeError(
                    f"the proportional regime requires r > 1, got r={self.r}"
                )
        elif self.r is not None and not self.r > 1.0:
            raise InvalidRegimeError(f"r must exceed 1 when given, got {self.r}")


@dataclass(frozen=True)
class ConsistencyVerdict:
    outcome: Outcome
    detail: str


def _tag(kind: BayesFactorKind | str) -> str:
    if isinstance(kind, BayesFactorKind):
        return kind.tag
    return kind.strip().lower()


def limit_bstat(regime: Regime) -> float:
    """Probability limit of the residual fraction in the given regime."""
    if regime.b < 1.0:
        if regime.truth is Truth.NULL:
            return 1.0
        return 1.0 / (1.0 + regime.delta)
    shrink = 1.0 - 1.0 / regime.r
    if regime.truth is Truth.NULL:
        return shrink
    return shrink / (1.0 + regime.delta)


def _require_interior_bstat(stat: SufficientStatistic) -> None:
    if not 0.0 < stat.bstat < 1.0:
        raise ValueError(
            f"large-n expression needs 0 < bstat < 1, got {stat.bstat}"
        )


def log_bf_l_lower_bound(stat: SufficientStatistic) -> float:
    """Large-n lower bound (log scale) for the heavy-tailed mixture factor."""
    _require_interior_bstat(stat)
    n, p, b = stat.n, stat.p, stat.bstat
    return (
        -math.log(2.0)
        - 0.5 * (p + 3) * math.log(n)
        - 0.5 * (n - 1) * math.log(b)
        - 0.5 * (p + 1) * math.log((1.0 - b) / (2.0 * b))
        + log_gamma(0.5 * (p + 1))
    )


def log_bf_b_large_n(stat: SufficientStatistic) -> float:
    """Large-n approximation (log scale) of the truncated-mixture factor."""
    _require_interior_bstat(stat)
    n, p, b = stat.n, stat.p, stat.bstat
    return (
        math.log(0.5)
        - 0.5 * p * math.log(n)
        - 0.5 * math.log(p + 1.0)
        - 0.5 * (n - 1) * math.log(b)
        - 0.5 * (p + 1) * math.log((1.0 - b) / (2.0 * b))
        + log_lower_incomplete_gamma(0.5 * (p + 1), 0.5 * (p + 1) * (1.0 - b) / b)
    )


def log_bf_zs_large_n(n: int, p: int, delta: float) -> float:
    """Large-n approximation (log scale) of the inverse-gamma mixture factor."""
    if p >= n - 2:
        raise ValueError(f"need n > p + 2, got n={n}, p={p}")
    if delta < 0.0:
        raise ValueError(f"delta must be nonnegative, got {delta}")
    return -0.5 * p * (math.log(n) + 1.0 - math.log(p + 1.0)) - 0.5 * (
        n - p - 2
    ) * (math.log1p(-p / n) - math.log1p(delta))


def log_bf_fs_large_n(stat: SufficientStatistic) -> float:
    """Large-n approximation (log scale) of the unit-information factor."""
    if not 0.0 < stat.bstat <= 1.0:
        raise ValueError(f"need 0 < bstat <= 1, got {stat.bstat}")
    return -0.5 * stat.p * math.log(stat.n) - 0.5 * (stat.n - 1) * math.log(stat.bstat)


def delta_boundary(kind: BayesFactorKind | str, r: float) -> float:
    """Closed-form inconsistency boundary ``delta^C(r)`` for r > 1.

    Available for the three families with an explicit boundary; the
    truncated-mixture boundary has no closed form and is solved by
    :func:`delta_boundary_b`.
    """
    tag = _tag(kind)
    if tag not in _BOUNDARY_KINDS:
        raise ValueError(
            f"closed-form boundary exists only for {_BOUNDARY_KINDS}, got {tag!r}"
        )
    if not r > 1.0:
        raise ValueError(f"boundary requires r > 1, got r={r}")
    if tag == "ip":
        return (r - 1.0) / math.expm1((1.0 - 1.0 / r) * math.log1p(r)) - 1.0
    if tag == "iph":
        return 2.0 * (r - 1.0) / math.expm1((1.0 - 1.0 / r) * math.log1p(2.0 * r)) - 1.0
    # zs: (r e)**(1/(r-1)) (1 - 1/r) - 1, computed through the exponent so
    # the r -> 1 blow-up saturates to inf instead of overflowing.
    exponent = (1.0 + math.log(r)) / (r - 1.0) + math.log1p(-1.0 / r)
    if exponent > 709.0:
        return math.inf
    return math.expm1(exponent)


def delta_boundary_limit(kind: BayesFactorKind | str) -> float:
    """Limit of ``delta^C(r)`` as r decreases to 1.

    Finite for the two intrinsic-prior families (``1/ln 2 - 1`` and
    ``2/ln 3 - 1``, the 0.4427 and 0.8205 of common usage) and infinite
    for the inverse-gamma and truncated mixtures.
    """
    tag = _tag(kind)
    if tag == "ip":
        return 1.0 / math.log(2.0) - 1.0
    if tag == "iph":
        return 2.0 / math.log(3.0) - 1.0
    if tag in ("zs", "b"):
        return math.inf
    raise ValueError(f"no boundary limit for kind {tag!r}")


def _log_h(r: float, delta: float) -> float:
    """Log of the membership function for the truncated-mixture region."""
    return (
        (r - 1.0) * (math.log(r) - math.log(r - 1.0))
        + r * math.log1p(delta)
        - math.log1p(delta * r)
        - 1.0
    )


def in_inconsistency_set(
    kind: BayesFactorKind | str, r: float, delta: float
) -> bool:
    """Whether the factor fails to diverge at ``(r, delta)`` under the
    alternative in the proportional regime.  Boundary points count as
    members.
    """
    tag = _tag(kind)
    if tag not in _REGION_KINDS:
        raise ValueError(
            f"inconsistency sets exist only for {_REGION_KINDS}, got {tag!r}"
        )
    if not r > 1.0:
        raise ValueError(f"membership requires r > 1, got r={r}")
    if delta < 0.0:
        raise ValueError(f"delta must be nonnegative, got {delta}")
    if tag == "fs":
        return True
    if tag == "b":
        return _log_h(r, delta) <= 0.0
    return delta <= delta_boundary(tag, r)


def delta_boundary_b(r: float, tol: float = 1e-10) -> float:
    """Boundary of the truncated-mixture region, solved by bisection.

    Solves ``h(r, delta) = 1`` in ``u = log1p(delta)`` space, which
    keeps the bracket well scaled even near r = 1 where the boundary
    blows up; returns ``inf`` when the root exceeds double range.
    """
    if not r > 1.0:
        raise ValueError(f"boundary requires r > 1, got r={r}")

    base = (r - 1.0) * (math.log(r) - math.log(r - 1.0)) - 1.0

    def log_h_u(u: float) -> float:
        # log1p(r * expm1(u)) without overflowing for large u.
        if u > 30.0:
            tail = u + math.log(r - (r - 1.0) * math.exp(-u))
        else:
            tail = math.log1p(r * math.expm1(u))
        return base + r * u - tail

    lo, hi = 0.0, 1.0
    for _ in range(4000):
        if log_h_u(hi) > 0.0:
            break
        lo, hi = hi, 2.0 * hi
    else:
        return math.inf
    while hi - lo > tol * max(1.0, hi):
        mid = 0.5 * (lo + hi)
        if log_h_u(mid) > 0.0:
            hi = mid
        else:
            lo = mid
    u = 0.5 * (lo + hi)
    return math.expm1(u) if u < 709.0 else math.inf


def consistency_verdict(
    kind: BayesFactorKind | str, regime: Regime
) -> ConsistencyVerdict:
    """Whether the factor resolves the comparison correctly in the regime.

    For sub-linear regressor growth the caller of a robust kind is
    responsible for the family membership ``rho = d/(d+n)``; the verdict
    then covers that subclass.  The proportional regime has no known
    result for the heavy-tailed, shrinkage or robust mixtures, which is
    reported as :class:`UnsupportedRegimeError` rather than guessed.
    """
    tag = _tag(kind)
    if tag not in ("l", "cg", "robust") and tag not in _CONSISTENT_SUBLINEAR:
        raise ValueError(f"unknown kind {tag!r}")
    if regime.truth is Truth.ALTERNATIVE and regime.delta == 0.0:
        raise InvalidRegimeError(
            "alternative-regime verdicts require a strictly positive delta"
        )

    if regime.b < 1.0:
        if tag in ("l", "cg", "robust"):
            if regime.truth is Truth.NULL:
                return ConsistencyVerdict(
                    Outcome.INCONSISTENT,
                    "under the null the large-n lower bound for this mixing "
                    "density does not vanish, so the factor cannot converge to 0",
                )
            return ConsistencyVerdict(
                Outcome.CONSISTENT_TO_INFINITY,
                "sub-linear regime: evidence against the null grows "
                "exponentially under any fixed alternative",
            )
        if regime.truth is Truth.NULL:
            return ConsistencyVerdict(
                Outcome.CONSISTENT_TO_ZERO,
                "sub-linear regime: the factor vanishes under the null",
            )
        return ConsistencyVerdict(
            Outcome.CONSISTENT_TO_INFINITY,
            "sub-linear regime: evidence against the null grows "
            "exponentially under any fixed alternative",
        )

    # Proportional regime.
    if tag in ("l", "cg", "robust"):
        raise UnsupportedRegimeError(
            f"no proportional-regime result is available for kind {tag!r}"
        )
    if regime.truth is Truth.NULL:
        return ConsistencyVerdict(
            Outcome.CONSISTENT_TO_ZERO,
            "proportional regime: the factor still vanishes under the null",
        )
    if tag == "fs":
        return ConsistencyVerdict(
            Outcome.INCONSISTENT,
            "proportional regime: the unit-information factor collapses "
            "toward the null under every alternative",
        )
    if in_inconsistency_set(tag, regime.r, regime.delta):
        return ConsistencyVerdict(
            Outcome.INCONSISTENT,
            "(r, delta) lies inside this factor's inconsistency region",
        )
    return ConsistencyVerdict(
        Outcome.CONSISTENT_TO_INFINITY,
        "(r, delta) lies outside this factor's inconsistency region",
    )
