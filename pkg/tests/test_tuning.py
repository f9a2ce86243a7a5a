import numpy as np
import pytest
from numpy.testing import assert_allclose

from steinmm import (
    DomainError, ExpParams, IGParams, InfeasibleError, NBParams, TuneSpec,
    exp_power_closed, optimize_weight, sample, two_step,
)


def tune(params, family, criterion, n, bracket, target=None, grid=64):
    return optimize_weight(TuneSpec(params=params, family=family,
                                    criterion=criterion, n=n, bracket=bracket,
                                    target=target, grid_points=grid))


class TestOptimizeWeight:
    def test_exp_power_mse_optimum(self):
        res = tune(ExpParams(1.0), "pow", "mse", 10, (0.5, 1.5))
        assert abs(res.optimum - 0.952) < 2e-3
        assert not res.boundary

    def test_exp_geom_mse_optimum(self):
        res = tune(ExpParams(1.0), "geom1m", "mse", 25, (0.01, 0.999))
        assert abs(res.optimum - 0.963) < 2e-3

    def test_nb_variance_optimum(self):
        p = NBParams.from_mean_size(mu=2.5, nu=2.5)
        res = tune(p, "geom", "variance", 1, (0.01, 0.999), target="nb_nu")
        assert abs(res.optimum - 0.805) < 2e-3
        assert abs(res.value - 59.113) < 1e-2

    def test_rate_invariance_of_power_optimum(self):
        # the power-weight MSE factorizes in the rate, so the optimum cannot
        # depend on it
        opts = [tune(ExpParams(lam), "pow", "mse", 25, (0.5, 1.5)).optimum
                for lam in (0.5, 1.0, 2.0)]
        assert max(opts) - min(opts) < 1e-4

    def test_local_minimum_property(self):
        res = tune(ExpParams(1.0), "pow", "mse", 10, (0.5, 1.5))
        here = exp_power_closed(1.0, res.optimum, 10).mse
        assert exp_power_closed(1.0, res.optimum + 1e-3, 10).mse >= here
        assert exp_power_closed(1.0, res.optimum - 1e-3, 10).mse >= here

    def test_boundary_flagged(self):
        # over (1.0, 1.5) the exponential MSE is increasing, optimum at 1.0
        res = tune(ExpParams(1.0), "pow", "mse", 100, (1.0, 1.5))
        assert res.boundary
        assert abs(res.optimum - 1.0) < 1e-2

    def test_infeasible_bracket(self):
        # no exponential power asymptotics exist for a <= 1/2
        with pytest.raises(InfeasibleError):
            tune(ExpParams(1.0), "pow", "mse", 10, (0.1, 0.45))

    def test_ig_bracket_must_not_straddle_pole(self):
        with pytest.raises(DomainError):
            tune(IGParams(1.0, 1.0), "pow", "variance", 25, (-1.0, 0.5))

    def test_ig_variance_optimal_is_reciprocal_weight(self):
        # on the branch below the pole the variance optimum sits at a = -1
        res = tune(IGParams(0.803, 1.44), "pow", "variance", 25, (-2.5, -0.5))
        assert abs(res.optimum - (-1.0)) < 5e-3

    def test_degenerate_interior_point_skipped(self):
        # (x+1)^0 is constant and therefore degenerate; the scan must step
        # over it and still find the interior optimum
        p = NBParams.from_mean_size(mu=2.5, nu=2.5)
        res = tune(p, "shiftpow", "variance", 1, (-0.99, 1.5), target="nb_nu")
        assert abs(res.optimum - (-0.097)) < 2e-3
        assert abs(res.value - 58.908) < 1e-2

    def test_evaluation_count_reported(self):
        res = tune(ExpParams(1.0), "pow", "mse", 10, (0.5, 1.5), grid=16)
        assert res.evaluations >= 16


class TestTwoStep:
    def test_runoff_bias_optimal_below(self, runoff):
        ts = two_step(runoff, "pow", "bias", "ig_lambda", branch="below")
        assert abs(ts.tune.optimum - (-0.668)) < 2e-3
        assert abs(ts.estimate.value - 1.429) < 5e-4
        assert_allclose(ts.pilot_value, 1.440, atol=5e-4)

    def test_runoff_variance_optimal_above(self, runoff):
        ts = two_step(runoff, "pow", "variance", "ig_lambda", branch="above")
        assert abs(ts.tune.optimum - (-0.109)) < 2e-3
        assert abs(ts.estimate.value - 1.511) < 5e-4

    def test_exp_power_two_step_matches_known_optimum(self):
        data = sample(ExpParams(1.0), 10, seed=5)
        ts = two_step(data, "pow", "mse", "exp_lambda")
        # optimum is rate-free, so any pilot gives the published value
        assert abs(ts.tune.optimum - 0.952) < 2e-3

    def test_deterministic(self, runoff):
        a = two_step(runoff, "pow", "bias", "ig_lambda", branch="above")
        b = two_step(runoff, "pow", "bias", "ig_lambda", branch="above")
        assert a.tune.optimum == b.tune.optimum
        assert a.estimate.value == b.estimate.value

    def test_explicit_pilot(self, runoff):
        ts = two_step(runoff, "pow", "bias", "ig_lambda", branch="below",
                      pilot_params=IGParams(0.803, 1.44))
        assert_allclose(ts.pilot_value, 1.44, rtol=1e-12)
        assert abs(ts.estimate.value - 1.429) < 1e-3

    def test_mites_two_step_alpha(self, mites):
        # tuning at the classical (n-1 divisor) pilot reproduces the
        # published optimal alphas for the mites data
        pilot = NBParams.from_mean_size(mu=float(np.mean(mites.values)),
                                        nu=1.167)
        for criterion, target, ref in (("bias", "nb_nu", 0.530),
                                       ("variance", "nb_nu", 0.690),
                                       ("bias", "nb_pi", 0.222),
                                       ("variance", "nb_pi", 0.690)):
            ts = two_step(mites, "geom", criterion, target,
                          pilot_params=pilot)
            assert abs(ts.tune.optimum - ref) < 2e-3

    def test_missing_bracket(self, runoff):
        with pytest.raises(DomainError):
            two_step(runoff, "pow", "bias", "ig_lambda")  # no branch given
