"""Shared fixtures.

The Monte-Carlo sweeps and the big fixed-grid oracle comparisons are
expensive, and several test modules (including the acceptance suite)
assert against the same runs, so they are computed once per session.
"""

from __future__ import annotations

import numpy as np
import pytest

from bflm import (
    BayesFactorKind,
    ExperimentSpec,
    FixedP,
    Proportional,
    SufficientStatistic,
    Truth,
    log_bayes_factor,
    posterior_prob_m0,
    run_experiment,
)

from oracles import oracle_log_bf

INTEGRAL_KINDS = ("ip", "zs", "l", "cg", "b")
LATTICE_N = (20, 100, 1000)
LATTICE_P = (1, 3, 10)
LATTICE_B = (0.05, 0.5, 0.95)

_WORKERS = 2


def lattice_points():
    return [
        (n, p, b)
        for n in LATTICE_N
        for p in LATTICE_P
        for b in LATTICE_B
        if n >= p + 3
    ]


@pytest.fixture(scope="session")
def lattice_oracle():
    """(library value, fixed-grid oracle value) for five integral kinds."""
    table = {}
    for tag in INTEGRAL_KINDS:
        for n, p, b in lattice_points():
            lib = log_bayes_factor(tag, SufficientStatistic(b, n, p)).log_bf
            ref = oracle_log_bf(tag, n, p, b)
            table[(tag, n, p, b)] = (lib, ref)
    return table


@pytest.fixture(scope="session")
def curve_n100_p20():
    """Posterior curves at n=100, p=20 on the default 401-point grid."""
    bstats = np.linspace(0.0, 1.0, 402)[1:]
    columns = {}
    for tag in ("ip", "iph", "zs", "fs", "b"):
        columns[tag] = np.array(
            [
                posterior_prob_m0(
                    log_bayes_factor(tag, SufficientStatistic(float(b), 100, 20))
                )
                for b in bstats
            ]
        )
    return bstats, columns


# --- Monte-Carlo sweeps shared between unit tests and acceptance -----------


@pytest.fixture(scope="session")
def mc_prop_r4_null():
    """Null sampling with p = n/4 at n = 2000, 500 replicates."""
    spec = ExperimentSpec(
        kind=BayesFactorKind.from_tag("fs"),
        truth=Truth.NULL,
        regime=Proportional(4.0),
        n_grid=(2000,),
        replicates=500,
        seed=20260810,
    )
    return run_experiment(spec, workers=_WORKERS)


@pytest.fixture(scope="session")
def mc_fixed_p2_null_n2000():
    """Null sampling with fixed p = 2 at n = 2000, 500 replicates."""
    spec = ExperimentSpec(
        kind=BayesFactorKind.from_tag("fs"),
        truth=Truth.NULL,
        regime=FixedP(2),
        n_grid=(2000,),
        replicates=500,
        seed=20260811,
    )
    return run_experiment(spec, workers=_WORKERS)


@pytest.fixture(scope="session")
def mc_fs_alt_r5():
    """Unit-information factor under the alternative in the r = 5 regime."""
    spec = ExperimentSpec(
        kind=BayesFactorKind.from_tag("fs"),
        truth=Truth.ALTERNATIVE,
        regime=Proportional(5.0),
        n_grid=(50, 200, 800),
        replicates=300,
        delta_target=1.0,
        seed=101,
    )
    return run_experiment(spec, workers=_WORKERS)


@pytest.fixture(scope="session")
def mc_ip_alt_r2_d1():
    """Intrinsic-prior factor, alternative r = 2, delta above the boundary."""
    spec = ExperimentSpec(
        kind=BayesFactorKind.from_tag("ip"),
        truth=Truth.ALTERNATIVE,
        regime=Proportional(2.0),
        n_grid=(100, 400, 1600),
        replicates=300,
        delta_target=1.0,
        seed=102,
    )
    return run_experiment(spec, workers=_WORKERS)


@pytest.fixture(scope="session")
def mc_ip_alt_r2_d02():
    """Intrinsic-prior factor, alternative r = 2, delta below the boundary."""
    spec = ExperimentSpec(
        kind=BayesFactorKind.from_tag("ip"),
        truth=Truth.ALTERNATIVE,
        regime=Proportional(2.0),
        n_grid=(100, 400, 1600),
        replicates=300,
        delta_target=0.2,
        seed=103,
    )
    return run_experiment(spec, workers=_WORKERS)


@pytest.fixture(scope="session")
def mc_null_r4_by_kind():
    """All five proportional-regime factors under the null at r = 4."""
    results = {}
    for tag in ("ip", "iph", "zs", "fs", "b"):
        spec = ExperimentSpec(
            kind=BayesFactorKind.from_tag(tag),
            truth=Truth.NULL,
            regime=Proportional(4.0),
            n_grid=(50, 200, 800),
            replicates=300,
            seed=104,
        )
        results[tag] = run_experiment(spec, workers=_WORKERS)
    return results


@pytest.fixture(scope="session")
def mc_ip_null_fixed2():
    """Intrinsic-prior factor under the null with fixed p = 2, 500 reps."""
    spec = ExperimentSpec(
        kind=BayesFactorKind.from_tag("ip"),
        truth=Truth.NULL,
        regime=FixedP(2),
        n_grid=(50, 200, 800),
        replicates=500,
        seed=105,
    )
    return run_experiment(spec, workers=_WORKERS)
