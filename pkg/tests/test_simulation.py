"""Checks for the Monte-Carlo harness: determinism, calibration, summaries."""

import math

import numpy as np
import pytest

from bflm import (
    BayesFactorKind,
    ExperimentAbortedError,
    ExperimentSpec,
    ExperimentResult,
    FixedP,
    Proportional,
    TrajectoryPoint,
    Truth,
    compute_sufficient_statistic,
    generate_dataset,
    pseudo_distance,
    rate_diagnostic,
    replicate_rng,
    run_experiment,
)
import bflm.simulation as simulation_module


def small_spec(**overrides) -> ExperimentSpec:
    base = dict(
        kind=BayesFactorKind.from_tag("fs"),
        truth=Truth.NULL,
        regime=FixedP(2),
        n_grid=(30, 60),
        replicates=25,
        seed=11,
    )
    base.update(overrides)
    return ExperimentSpec(**base)


class TestSpecValidation:
    def test_ascending_grid_required(self):
        with pytest.raises(ValueError):
            small_spec(n_grid=(800, 50))

    def test_sample_size_floor_per_grid_point(self):
        with pytest.raises(ValueError):
            small_spec(regime=FixedP(40))
        with pytest.raises(ValueError):
            small_spec(regime=Proportional(1.05), n_grid=(50, 100))

    def test_truth_delta_coupling(self):
        with pytest.raises(ValueError):
            small_spec(delta_target=0.5)
        with pytest.raises(ValueError):
            small_spec(truth=Truth.ALTERNATIVE, delta_target=0.0)

    def test_ratio_must_exceed_one(self):
        with pytest.raises(ValueError):
            small_spec(regime=Proportional(1.0))

    def test_string_kind_is_coerced(self):
        assert small_spec(kind="fs").kind == BayesFactorKind.from_tag("fs")


class TestGenerateDataset:
    def test_null_has_zero_distance(self):
        data, params = generate_dataset(40, 3, Truth.NULL, 0.0, 1.0, replicate_rng(1, 0, 0))
        assert float(pseudo_distance(params, data)) == 0.0

    def test_alternative_hits_target_exactly(self):
        data, params = generate_dataset(
            40, 3, Truth.ALTERNATIVE, 0.5, 2.0, replicate_rng(1, 0, 1)
        )
        assert float(pseudo_distance(params, data)) == pytest.approx(0.5, abs=1e-10)

    def test_bit_identical_streams(self):
        a_data, _ = generate_dataset(30, 2, Truth.ALTERNATIVE, 1.0, 1.0, replicate_rng(7, 2, 9))
        b_data, _ = generate_dataset(30, 2, Truth.ALTERNATIVE, 1.0, 1.0, replicate_rng(7, 2, 9))
        assert np.array_equal(a_data.y, b_data.y)
        assert np.array_equal(a_data.design, b_data.design)

    def test_distinct_indices_give_distinct_data(self):
        a_data, _ = generate_dataset(30, 2, Truth.NULL, 0.0, 1.0, replicate_rng(7, 0, 0))
        b_data, _ = generate_dataset(30, 2, Truth.NULL, 0.0, 1.0, replicate_rng(7, 0, 1))
        assert not np.array_equal(a_data.y, b_data.y)


class TestRunExperiment:
    def test_deterministic_across_worker_counts(self):
        spec = small_spec()
        assert run_experiment(spec) == run_experiment(spec, workers=3)

    def test_summary_shapes(self):
        result = run_experiment(small_spec())
        assert len(result.trajectory) == 2
        point = result.trajectory[0]
        assert point.q10 <= point.median_log_bf <= point.q90
        assert 0.0 <= point.median_bstat <= 1.0
        assert result.failures == 0

    def test_retry_once_then_count_failure(self, monkeypatch):
        real = simulation_module.generate_dataset
        calls = {"n": 0}

        def flaky(*args, **kwargs):
            calls["n"] += 1
            if calls["n"] == 1:
                raise simulation_module.RankDeficientError("synthetic")
            return real(*args, **kwargs)

        monkeypatch.setattr(simulation_module, "generate_dataset", flaky)
        result = run_experiment(small_spec(n_grid=(30,), replicates=20))
        assert result.failures == 0 and calls["n"] == 21

    def test_abort_when_failures_exceed_ten_percent(self, monkeypatch):
        def broken(*args, **kwargs):
            raise simulation_module.RankDeficientError("synthetic")

        monkeypatch.setattr(simulation_module, "generate_dataset", broken)
        with pytest.raises(ExperimentAbortedError):
            run_experiment(small_spec(n_grid=(30,), replicates=20))

    def test_band_over_n_shrinks_in_consistent_configuration(self):
        spec = small_spec(n_grid=(50, 200, 800), replicates=200, seed=21)
        result = run_experiment(spec, workers=2)
        bands = [(pt.q90 - pt.q10) / pt.n for pt in result.trajectory]
        assert bands[0] > bands[1] > bands[2]

    def test_null_fixed_p_median_decreases(self, mc_ip_null_fixed2):
        medians = [pt.median_log_bf for pt in mc_ip_null_fixed2.trajectory]
        assert medians[0] > medians[1] > medians[2]

    def test_fixed_p2_statistic_near_one(self, mc_fixed_p2_null_n2000):
        assert mc_fixed_p2_null_n2000.trajectory[0].median_bstat == pytest.approx(
            1.0, abs=0.02
        )


class TestRateDiagnostic:
    def _synthetic(self, ns, medians):
        points = tuple(
            TrajectoryPoint(
                n=n, p=2, median_log_bf=m, q10=m - 1, q90=m + 1, median_bstat=0.9,
                failures=0,
            )
            for n, m in zip(ns, medians)
        )
        x = np.log(ns)
        slope = float(np.polyfit(x, medians, 1)[0])
        return ExperimentResult(spec=small_spec(), trajectory=points, slope=slope)

    def test_exact_bic_like_trajectory_scores_zero(self):
        ns = (50, 200, 800)
        result = self._synthetic(ns, [-1.0 * math.log(n) for n in ns])
        assert rate_diagnostic(result, 2) == pytest.approx(0.0, abs=1e-12)

    def test_slope_minus_one_with_p_two_scores_zero(self):
        ns = (50, 200, 800)
        result = self._synthetic(ns, [5.0 - math.log(n) for n in ns])
        assert rate_diagnostic(result, 2) == pytest.approx(0.0, abs=1e-12)

    def test_monte_carlo_value_is_near_zero(self, mc_ip_null_fixed2):
        assert abs(rate_diagnostic(mc_ip_null_fixed2, 2)) <= 0.3
