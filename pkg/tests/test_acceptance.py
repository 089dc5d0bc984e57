"""Acceptance suite.

Each test implements one release criterion at its stated tolerance and
prints a single PASS/FAIL line (visible with ``pytest -s`` or in
captured output).  The heavy Monte-Carlo inputs are session fixtures
shared with the unit tests, so each sweep runs once per session.
"""

import math
import time
from contextlib import contextmanager

import numpy as np
import pytest

from bflm import (
    BayesFactorKind,
    ExperimentSpec,
    FixedP,
    SufficientStatistic,
    Truth,
    delta_boundary,
    delta_boundary_limit,
    in_inconsistency_set,
    log_bayes_factor,
    log_bf_b,
    log_bf_b_large_n,
    log_bf_cg,
    log_bf_fs,
    log_bf_iph,
    log_bf_l,
    log_bf_l_lower_bound,
    log_bf_robust,
    log_integrate_semiinfinite,
    run_experiment,
)
from bflm.factors import (
    log_g_prior_b,
    log_g_prior_cg,
    log_g_prior_l,
    log_g_prior_robust,
    log_g_prior_zs,
    truncation_point_b,
    truncation_point_robust,
)

from conftest import lattice_points
from oracles import crossing_width, mp_log_bf_fs, mp_log_bf_iph


@contextmanager
def criterion(number: int, name: str):
    started = time.perf_counter()
    try:
        yield
    except BaseException:
        print(f"ACCEPTANCE {number} ({name}): FAIL")
        raise
    elapsed = time.perf_counter() - started
    print(f"ACCEPTANCE {number} ({name}): PASS ({elapsed:.1f}s)")


def test_c01_closed_form_exactness():
    """FS and IPH match arbitrary-precision evaluations to 1e-12."""
    with criterion(1, "closed-form exactness"):
        for n in (10, 10**2, 10**4, 10**6):
            for p in (1, 5, 20):
                if n < p + 3:
                    continue
                for b in (0.05, 0.5, 0.95, 1.0):
                    stat = SufficientStatistic(b, n, p)
                    assert log_bf_fs(stat).log_bf == pytest.approx(
                        mp_log_bf_fs(n, p, b), rel=1e-12
                    ), ("fs", n, p, b)
                    assert log_bf_iph(stat).log_bf == pytest.approx(
                        mp_log_bf_iph(n, p, b), rel=1e-12
                    ), ("iph", n, p, b)


def test_c02_quadrature_vs_oracle(lattice_oracle):
    """Five integral factors match 1e6-point fixed-grid oracles to 1e-8."""
    with criterion(2, "quadrature vs oracle"):
        for (tag, n, p, b), (lib, ref) in lattice_oracle.items():
            assert lib == pytest.approx(ref, rel=1e-8), (tag, n, p, b)


def test_c03_robust_specializations():
    """The robust class reproduces its three named members to 1e-10."""
    with criterion(3, "robust-class specialization"):
        for n, p, b in lattice_points():
            stat = SufficientStatistic(b, n, p)
            pairs = [
                (log_bf_l(stat).log_bf, log_bf_robust(stat, 0.5, float(n), 0.5).log_bf),
                (log_bf_cg(stat).log_bf, log_bf_robust(stat, 1.0, 1.0, 1.0 / (1 + n)).log_bf),
                (log_bf_b(stat).log_bf, log_bf_robust(stat, 0.5, 1.0, 1.0 / (1 + p)).log_bf),
            ]
            for direct, special in pairs:
                assert direct == pytest.approx(special, rel=1e-10, abs=1e-10), (n, p, b)


def test_c04_prior_normalizations():
    """All mixing densities integrate to one within 1e-8."""
    with criterion(4, "prior normalizations"):
        n, p = 60, 4
        robust_params = (0.7, 2.0, 2.0 / (2.0 + n))
        cases = [
            ("zs", lambda g: log_g_prior_zs(g, n), 0.0),
            ("l", lambda g: log_g_prior_l(g, n), 0.0),
            ("cg", log_g_prior_cg, 0.0),
            ("b", lambda g: log_g_prior_b(g, n, p), truncation_point_b(n, p)),
            (
                "robust",
                lambda g: log_g_prior_robust(g, *robust_params, n),
                truncation_point_robust(robust_params[1], robust_params[2], n),
            ),
        ]
        for tag, log_pdf, lower in cases:
            mass = log_integrate_semiinfinite(log_pdf, lower)
            assert mass.log_value == pytest.approx(0.0, abs=1e-8), tag


def test_c05_boundary_constants():
    """Boundary limits match the displayed constants; the inverse-gamma
    boundary blows up approaching r = 1."""
    with criterion(5, "boundary constants"):
        assert delta_boundary_limit("ip") == pytest.approx(
            1.0 / math.log(2.0) - 1.0, abs=5e-5
        )
        assert delta_boundary_limit("ip") == pytest.approx(0.4427, abs=5e-5)
        assert delta_boundary_limit("iph") == pytest.approx(
            2.0 / math.log(3.0) - 1.0, abs=5e-5
        )
        assert delta_boundary_limit("iph") == pytest.approx(0.8205, abs=5e-5)
        assert delta_boundary("zs", 1.0 + 1e-6) > 1e5


def test_c06_region_structure():
    """Set inclusions with zero violations on a 200 x 200 grid; decreasing
    convex boundaries vanishing at large r."""
    with criterion(6, "region structure"):
        rs = np.linspace(1.001, 20.0, 200)
        deltas = np.linspace(0.0, 10.0, 200)
        member = {
            tag: np.array(
                [
                    [in_inconsistency_set(tag, float(r), float(d)) for d in deltas]
                    for r in rs
                ]
            )
            for tag in ("ip", "iph", "zs", "b")
        }
        assert not np.any(member["ip"] & ~member["iph"])
        assert not np.any(member["iph"] & ~member["zs"])
        assert not np.any(member["b"] & ~member["zs"])
        sweep = np.linspace(1.01, 100.0, 400)
        for tag in ("ip", "iph", "zs"):
            values = np.array([delta_boundary(tag, float(r)) for r in sweep])
            assert np.all(np.diff(values) < 0.0), tag
            assert np.all(np.diff(values, 2) >= -1e-9), tag
            assert delta_boundary(tag, 1e4) < 0.01, tag


def test_c07_statistic_limits_at_desk_scale(mc_prop_r4_null, mc_fixed_p2_null_n2000):
    """Null-sampling medians of the statistic match both regime limits."""
    with criterion(7, "statistic limits at desk scale"):
        assert mc_prop_r4_null.trajectory[0].median_bstat == pytest.approx(
            0.75, abs=0.02
        )
        assert mc_fixed_p2_null_n2000.trajectory[0].median_bstat == pytest.approx(
            1.0, abs=0.02
        )


def test_c08_proportional_regime_at_desk_scale(
    mc_fs_alt_r5, mc_ip_alt_r2_d1, mc_ip_alt_r2_d02, mc_null_r4_by_kind
):
    """Monte-Carlo trajectories reproduce the proportional-regime verdicts."""
    with criterion(8, "proportional regime at desk scale"):
        fs_medians = [pt.median_log_bf for pt in mc_fs_alt_r5.trajectory]
        assert fs_medians[0] > fs_medians[1] > fs_medians[2]

        up = [pt.median_log_bf for pt in mc_ip_alt_r2_d1.trajectory]
        assert up[0] < up[1] < up[2]  # delta = 1 > boundary 0.366

        down = [pt.median_log_bf for pt in mc_ip_alt_r2_d02.trajectory]
        assert down[0] > down[1] > down[2]  # delta = 0.2 < boundary

        for tag, result in mc_null_r4_by_kind.items():
            medians = [pt.median_log_bf for pt in result.trajectory]
            assert medians[0] > medians[1] > medians[2], tag


def test_c09_large_n_bound_and_approximation():
    """Large-n bound and approximation within 1% at n = 1e4."""
    with criterion(9, "large-n bound and approximation"):
        n = 10**4
        for p in (1, 3, 5):
            for b in (0.3, 0.6, 0.9):
                stat = SufficientStatistic(b, n, p)
                bound = log_bf_l_lower_bound(stat)
                assert log_bf_l(stat).log_bf >= bound - 0.01 * abs(bound), (p, b)
                approx = log_bf_b_large_n(stat)
                exact = log_bf_b(stat).log_bf
                assert abs(exact - approx) <= 0.01 * abs(exact), (p, b)


def test_c10_posterior_curve_group_split(curve_n100_p20):
    """At n=100, p=20 the 0.05 -> 0.95 crossing is strictly narrower for
    the unit-information and inverse-gamma curves than for the rest."""
    with criterion(10, "posterior curve group split"):
        bstats, columns = curve_n100_p20
        widths = {tag: crossing_width(bstats, col) for tag, col in columns.items()}
        for sharp in ("fs", "zs"):
            for smooth in ("ip", "iph", "b"):
                assert widths[sharp] < widths[smooth], (sharp, smooth)


def test_c11_reported_but_not_asserted_trajectories():
    """The heavy-tailed and shrinkage mixtures under null sampling are
    recorded for inspection only: their finite-n divergence rate rests on
    a contested convergence-rate step, so no direction is asserted."""
    with criterion(11, "excluded reproductions (report only)"):
        for tag in ("l", "cg"):
            spec = ExperimentSpec(
                kind=BayesFactorKind.from_tag(tag),
                truth=Truth.NULL,
                regime=FixedP(3),
                n_grid=(50, 200, 800),
                replicates=100,
                seed=900,
            )
            result = run_experiment(spec, workers=2)
            medians = [pt.median_log_bf for pt in result.trajectory]
            print(
                f"  note: {tag} null-sampling medians {medians} "
                f"(slope {result.slope:.3f}) reported without assertion"
            )
        assert True
