import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose
from scipy.special import kv

from steinmm import (
    DomainError, ExpParams, IGParams, NBParams, Sample,
    density, exp_pdf, ig_pdf, nb_pmf,
    nb_factorial_zmoment, nb_param_convert, nb_pgf,
    raw_moment, sample, substream, truncated_sum,
)


class TestParams:
    def test_validation(self):
        with pytest.raises(DomainError):
            ExpParams(0.0)
        with pytest.raises(DomainError):
            IGParams(mu=1.0, lam=-1.0)
        with pytest.raises(DomainError):
            NBParams(nu=1.0, pi=1.0)

    def test_nb_derived(self):
        p = NBParams(nu=1.5, pi=0.375)
        assert_allclose(p.mu, 2.5, rtol=1e-12)
        assert_allclose(p.sigma2, 1.5 * 0.625 / 0.375 ** 2, rtol=1e-12)
        assert p.sigma2 > p.mu  # overdispersion


class TestDensity:
    def test_exp(self):
        assert_allclose(density(ExpParams(1.0), 0.5), math.exp(-0.5), rtol=1e-12)
        assert exp_pdf(ExpParams(2.0), -1.0) == 0.0

    def test_nb_geometric_case(self):
        assert_allclose(density(NBParams(nu=1.0, pi=0.5), 2), 0.125, rtol=1e-12)
        assert nb_pmf(NBParams(nu=1.0, pi=0.5), 2.5) == 0.0
        assert nb_pmf(NBParams(nu=1.0, pi=0.5), -1) == 0.0

    def test_ig_at_one(self):
        assert_allclose(density(IGParams(1.0, 1.0), 1.0),
                        math.sqrt(1.0 / (2.0 * math.pi)), rtol=1e-12)
        assert ig_pdf(IGParams(1.0, 1.0), 0.0) == 0.0

    def test_vectorized(self):
        x = np.array([-1.0, 0.5, 2.0])
        out = exp_pdf(ExpParams(1.0), x)
        assert out.shape == (3,)
        assert out[0] == 0.0


class TestRawMoment:
    def test_exp(self):
        assert_allclose(raw_moment(ExpParams(2.0), 1), 0.5, rtol=1e-12)
        assert_allclose(raw_moment(ExpParams(1.0), 0.5),
                        math.gamma(1.5), rtol=1e-12)
        with pytest.raises(DomainError):
            raw_moment(ExpParams(1.0), -1.0)

    @pytest.mark.parametrize("mu, lam", [(1.0, 1.0), (3.0, 1.0), (0.8, 1.4)])
    def test_ig_second_moment(self, mu, lam):
        assert_allclose(raw_moment(IGParams(mu, lam), 2),
                        mu ** 2 + mu ** 3 / lam, rtol=1e-12)

    def test_ig_negative_first(self):
        p = IGParams(2.0, 3.0)
        assert_allclose(raw_moment(p, -1), 1.0 / 2.0 + 1.0 / 3.0, rtol=1e-12)

    @pytest.mark.parametrize("k", [0, 1, 2])
    @pytest.mark.parametrize("mu, lam", [(1.0, 1.0), (3.0, 1.0), (1.0, 3.0)])
    def test_reciprocal_moment_identity(self, k, mu, lam):
        # E[X^-k] = E[X^(k+1)] / mu^(2k+1), quadrature against closed form
        p = IGParams(mu, lam)
        quad = raw_moment(p, -float(k), method="quadrature")
        closed = raw_moment(p, k + 1) / mu ** (2 * k + 1)
        assert_allclose(quad, closed, rtol=1e-7)

    @pytest.mark.parametrize("r", [0.5, -0.75, 1.3, 2.7])
    def test_ig_noninteger_against_bessel(self, r):
        # independent closed form: E[X^r] = mu^r K_(r-1/2)(lam/mu) / K_(1/2)(lam/mu)
        p = IGParams(1.5, 2.0)
        z = p.lam / p.mu
        expected = p.mu ** r * kv(r - 0.5, z) / kv(0.5, z)
        assert_allclose(raw_moment(p, r), expected, rtol=1e-9)

    def test_nb_matches_truncated_sum(self):
        p = NBParams(nu=1.5, pi=0.375)
        for k in range(5):
            brute = truncated_sum(lambda x, k=k: float(x) ** k * nb_pmf(p, x))
            assert_allclose(raw_moment(p, k), brute, rtol=1e-9)
        with pytest.raises(DomainError):
            raw_moment(p, 1.5)


class TestFactorialZMoment:
    def test_base_case_is_pgf(self):
        p = NBParams(nu=2.0, pi=0.4)
        for z in (0.3, 0.8, 1.0):
            assert_allclose(nb_factorial_zmoment(p, 0, z), nb_pgf(p, z), rtol=1e-12)

    def test_mean_at_z_one(self):
        p = NBParams(nu=1.7, pi=0.3)
        assert_allclose(nb_factorial_zmoment(p, 1, 1.0), p.mu, rtol=1e-12)

    def test_second_order_against_brute_force(self):
        p = NBParams(nu=2.0, pi=0.5)
        brute = truncated_sum(lambda x: x * (x - 1) * 0.5 ** x * nb_pmf(p, x))
        assert_allclose(nb_factorial_zmoment(p, 2, 0.5), brute, atol=1e-9)

    @pytest.mark.parametrize("k", [0, 1, 2, 3])
    @pytest.mark.parametrize("z", [0.25, 0.5, 0.9, 1.0])
    @pytest.mark.parametrize("nu, pi", [(1.0, 0.286), (1.5, 0.375), (2.5, 0.5)])
    def test_closed_form_grid(self, k, z, nu, pi):
        p = NBParams(nu=nu, pi=pi)

        def falling(x, r):
            out = 1.0
            for i in range(r):
                out *= x - i
            return out

        brute = truncated_sum(lambda x: falling(x, k) * z ** x * nb_pmf(p, x))
        assert_allclose(nb_factorial_zmoment(p, k, z), brute, rtol=1e-8)

    def test_divergent(self):
        with pytest.raises(DomainError):
            nb_factorial_zmoment(NBParams(nu=1.0, pi=0.2), 1, 1.3)


class TestParamConvert:
    def test_published_rows(self):
        assert_allclose(nb_param_convert(mu=2.5, nu=1.0).pi, 1.0 / 3.5, rtol=1e-9)
        assert_allclose(nb_param_convert(mu=2.5, nu=2.5).pi, 0.5, rtol=1e-12)

    def test_mean_prob(self):
        p = nb_param_convert(mu=4.0, pi=0.25)
        assert_allclose(p.nu, 0.25 * 4.0 / 0.75, rtol=1e-12)
        assert_allclose(p.mu, 4.0, rtol=1e-12)

    @given(mu=st.floats(0.01, 50), pi=st.floats(0.01, 0.99))
    @settings(max_examples=200, deadline=None)
    def test_round_trip(self, mu, pi):
        p = nb_param_convert(mu=mu, pi=pi)
        assert math.isclose(p.mu, mu, rel_tol=1e-12)
        q = nb_param_convert(mu=p.mu, nu=p.nu)
        assert math.isclose(q.pi, p.pi, rel_tol=1e-12)

    def test_needs_exactly_two(self):
        with pytest.raises(DomainError):
            nb_param_convert(mu=1.0)
        with pytest.raises(DomainError):
            nb_param_convert(mu=1.0, nu=1.0, pi=0.5)


class TestSampling:
    def test_deterministic(self):
        a = sample(ExpParams(1.0), 100, seed=42).values
        b = sample(ExpParams(1.0), 100, seed=42).values
        assert np.array_equal(a, b)
        c = sample(ExpParams(1.0), 100, seed=43).values
        assert not np.array_equal(a, c)

    def test_substreams_differ(self):
        a = substream(7, 0).random(8)
        b = substream(7, 1).random(8)
        assert not np.array_equal(a, b)

    def test_exp_lln(self):
        n = 10 ** 5
        x = sample(ExpParams(1.0), n, seed=1).values
        assert np.all(x > 0)
        assert abs(x.mean() - 1.0) < 3.0 / math.sqrt(n)

    def test_ig_moments(self):
        n = 10 ** 5
        p = IGParams(1.0, 1.0)
        x = sample(p, n, seed=2).values
        assert np.all(x > 0)
        # V[X] = mu^3/lam = 1; se of the mean is sqrt(1/n)
        assert abs(x.mean() - 1.0) < 3.0 / math.sqrt(n)
        # var of the sample variance ~ (E[X^4]-var^2)/n, bounded loosely
        assert abs(x.var() - 1.0) < 0.05
        assert abs(np.mean(1.0 / x) - 2.0) < 0.02

    def test_nb_mean(self):
        p = NBParams(nu=1.5, pi=0.375)
        n = 10 ** 5
        x = sample(p, n, seed=3).values
        assert np.all(x >= 0) and np.all(x == np.round(x))
        se = math.sqrt(p.sigma2 / n)
        assert abs(x.mean() - 2.5) < 3.0 * se

    def test_sample_validation(self):
        with pytest.raises(DomainError):
            sample(ExpParams(1.0), 0, seed=1)
        with pytest.raises(DomainError):
            Sample(np.array([1.0, -2.0]), kind="ig")
        with pytest.raises(DomainError):
            Sample(np.array([1.0, 2.5]), kind="nb")
