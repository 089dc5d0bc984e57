"""Bayes factors for normal linear models against the intercept-only null.

The package computes natural-log Bayes factors for eight prior
families, analyzes their asymptotic consistency as the regressor count
grows with the sample size, and ships a reproducible Monte-Carlo
harness plus a CLI that emits curve/region tables and figures.
"""

from .asymptotics import (
    ConsistencyVerdict,
    Outcome,
    Regime,
    Truth,
    consistency_verdict,
    delta_boundary,
    delta_boundary_b,
    delta_boundary_limit,
    in_inconsistency_set,
    limit_bstat,
    log_bf_b_large_n,
    log_bf_fs_large_n,
    log_bf_l_lower_bound,
    log_bf_zs_large_n,
)
from .errors import (
    BflmError,
    ConstantResponseError,
    DegenerateDirectionError,
    ExperimentAbortedError,
    InvalidHyperparametersError,
    InvalidRegimeError,
    NumericalFailureError,
    RankDeficientError,
    UnsupportedRegimeError,
)
from .factors import (
    KIND_TAGS,
    BayesFactorKind,
    LogBayesFactor,
    log_bayes_factor,
    log_bf_b,
    log_bf_cg,
    log_bf_fs,
    log_bf_ip,
    log_bf_iph,
    log_bf_l,
    log_bf_robust,
    log_bf_zs,
    posterior_prob_m0,
)
from .quadrature import (
    LogIntegralResult,
    QuadratureConfig,
    log_integrate_finite,
    log_integrate_semiinfinite,
)
from .regression import (
    Dataset,
    ModelParams,
    PseudoDistance,
    SufficientStatistic,
    calibrate_beta_for_delta,
    compute_sufficient_statistic,
    pseudo_distance,
)
from .simulation import (
    ExperimentResult,
    ExperimentSpec,
    FixedP,
    Proportional,
    TrajectoryPoint,
    generate_dataset,
    rate_diagnostic,
    replicate_rng,
    run_experiment,
)
from .special import log_gamma, log_lower_incomplete_gamma

__version__ = "0.1.0"

__all__ = [
    "BayesFactorKind",
    "BflmError",
    "ConsistencyVerdict",
    "ConstantResponseError",
    "Dataset",
    "DegenerateDirectionError",
    "ExperimentAbortedError",
    "ExperimentResult",
    "ExperimentSpec",
    "FixedP",
    "InvalidHyperparametersError",
    "InvalidRegimeError",
    "KIND_TAGS",
    "LogBayesFactor",
    "LogIntegralResult",
    "ModelParams",
    "NumericalFailureError",
    "Outcome",
    "Proportional",
    "PseudoDistance",
    "QuadratureConfig",
    "RankDeficientError",
    "Regime",
    "SufficientStatistic",
    "TrajectoryPoint",
    "Truth",
    "UnsupportedRegimeError",
    "calibrate_beta_for_delta",
    "compute_sufficient_statistic",
    "consistency_verdict",
    "delta_boundary",
    "delta_boundary_b",
    "delta_boundary_limit",
    "generate_dataset",
    "in_inconsistency_set",
    "limit_bstat",
    "log_bayes_factor",
    "log_bf_b",
    "log_bf_b_large_n",
    "log_bf_cg",
    "log_bf_fs",
    "log_bf_fs_large_n",
    "log_bf_ip",
    "log_bf_iph",
    "log_bf_l",
    "log_bf_l_lower_bound",
    "log_bf_robust",
    "log_bf_zs",
    "log_bf_zs_large_n",
    "log_gamma",
    "log_integrate_finite",
    "log_integrate_semiinfinite",
    "log_lower_incomplete_gamma",
    "posterior_prob_m0",
    "pseudo_distance",
    "rate_diagnostic",
    "replicate_rng",
    "run_experiment",
]
