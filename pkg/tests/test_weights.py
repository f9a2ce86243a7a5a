import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from steinmm import (
    DomainError, check_admissible, constant, custom, geom_nb, geom_one_minus,
    identity, one_plus_log, parse_weight, power, reciprocal, shifted_power,
)

ALL_WEIGHTS = [
    identity(), power(2.0), power(0.9), power(-0.5), one_plus_log(),
    geom_one_minus(0.5), geom_one_minus(0.9), constant(), reciprocal(),
    geom_nb(0.53), shifted_power(-0.5), shifted_power(1.0),
]


class TestEval:
    def test_examples(self):
        assert power(2.0)(3.0) == 9.0
        assert_allclose(geom_one_minus(0.5)(1.0), 0.5, rtol=1e-12)
        assert shifted_power(-1.0)(0.0) == 1.0
        assert constant()(17.0) == 1.0
        assert reciprocal()(2.0) == 0.5
        assert_allclose(one_plus_log()(math.e - 1.0), 1.0, rtol=1e-12)

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            power(-1.0)(0.0)
        with pytest.raises(DomainError):
            power(0.5)(-1.0)
        with pytest.raises(DomainError):
            reciprocal()(0.0)

    def test_param_validation(self):
        with pytest.raises(DomainError):
            geom_one_minus(1.0)
        with pytest.raises(DomainError):
            geom_nb(0.0)


class TestDeriv:
    def test_examples(self):
        assert identity().deriv(5.0) == 1.0
        assert_allclose(geom_one_minus(0.5).deriv(0.0), math.log(2.0), rtol=1e-12)
        assert reciprocal().deriv(2.0) == -0.25
        assert constant().deriv(3.0) == 0.0

    @pytest.mark.parametrize("w", ALL_WEIGHTS)
    def test_matches_central_difference(self, w):
        xs = np.array([0.2, 0.5, 1.0, 1.7, 3.0, 7.5])
        for x in xs:
            h = 1e-6 * (abs(x) + 1.0)
            fd = (w(x + h) - w(x - h)) / (2.0 * h)
            d = w.deriv(x)
            assert_allclose(d, fd, rtol=1e-6, atol=1e-9)


class TestDiff:
    def test_examples(self):
        assert identity().diff(4) == 1.0
        assert_allclose(geom_nb(0.5).diff(1), -0.25, rtol=1e-12)
        assert shifted_power(1.0).diff(3) == 1.0

    @pytest.mark.parametrize("w", [identity(), geom_nb(0.53), geom_one_minus(0.9),
                                   shifted_power(-0.5), one_plus_log(), constant(),
                                   power(2.0)])
    def test_consistent_with_eval(self, w):
        xs = np.arange(0, 12, dtype=float)
        assert_allclose(w.diff(xs), w(xs + 1.0) - w(xs), rtol=1e-12, atol=1e-15)

    def test_custom_diff(self):
        w = custom(lambda x: np.asarray(x) * 0.0 + 2.0, diff=lambda x: x * 0.0)
        assert w.diff(3) == 0.0


class TestAdmissibility:
    def test_exp_cases(self):
        assert check_admissible(power(0.9), "exp").ok
        assert check_admissible(identity(), "exp").ok
        bad = check_admissible(constant(), "exp")
        assert not bad.ok and "f(0)" in bad.reason
        assert not check_admissible(power(-1.0), "exp").ok
        assert not check_admissible(reciprocal(), "exp").ok

    def test_ig_cases(self):
        assert check_admissible(constant(), "ig").ok
        assert check_admissible(reciprocal(), "ig").ok
        assert check_admissible(power(-4.0 / 3.0), "ig").ok
        deg = check_admissible(power(-0.5), "ig")
        assert not deg.ok and "degenerate" in deg.reason

    def test_nb_cases(self):
        assert check_admissible(identity(), "nb").ok
        assert check_admissible(geom_nb(0.5), "nb").ok
        assert check_admissible(shifted_power(-0.5), "nb").ok
        assert not check_admissible(constant(), "nb").ok
        assert not check_admissible(power(-1.0), "nb").ok
        assert not check_admissible(shifted_power(0.0), "nb").ok

    def test_custom_flagged(self):
        adm = check_admissible(custom(lambda x: x), "exp")
        assert adm.ok and "not checked" in adm.reason


class TestSpecEncoding:
    @pytest.mark.parametrize("text", [
        "identity", "pow:a=0.9", "log1p", "geom1m:u=0.9", "const", "recip",
        "geom:alpha=0.53", "shiftpow:a=-0.5",
    ])
    def test_round_trip(self, text):
        w = parse_weight(text)
        assert parse_weight(w.spec) == w

    @pytest.mark.parametrize("text", ["nope", "pow", "pow:b=1", "geom:alpha=x",
                                      "identity:a=1"])
    def test_rejects_bad_specs(self, text):
        with pytest.raises(DomainError):
            parse_weight(text)
