"""Tests for the Weibull activation function."""

import math

import numpy as np
import pytest
from pydantic import ValidationError as PydanticValidationError

from heatwave_ac.model.activation import (
    ActivationParams,
    activation_curve,
    activation_probability,
)


@pytest.fixture
def defaults():
    return ActivationParams()


class TestActivationParams:
    """Test suite for activation parameters."""

    def test_defaults(self, defaults):
        """Test the default parameterization."""
        assert (defaults.u, defaults.l, defaults.k) == (18.5, 3.5, 3.5)
        assert (defaults.dt, defaults.tau_c) == (1.0, 1.0)

    @pytest.mark.parametrize("field", ["l", "k", "dt", "tau_c"])
    def test_positive_parameters(self, field):
        """Test scale, shape and time parameters must be positive."""
        with pytest.raises(PydanticValidationError):
            ActivationParams(**{field: 0.0})

    def test_unknown_field(self):
        """Test typos in parameter names are rejected."""
        with pytest.raises(PydanticValidationError):
            ActivationParams(threshold=20.0)


class TestActivationProbability:
    """Test suite for activation_probability."""

    def test_below_threshold(self, defaults):
        """Test zero probability below u."""
        assert activation_probability(defaults, 18.0) == 0.0

    def test_at_threshold(self, defaults):
        """Test continuity at u: both branches give 0."""
        assert activation_probability(defaults, 18.5) == 0.0

    def test_one_scale_above_threshold(self, defaults):
        """Test T = u + l gives 1 - 1/e."""
        assert activation_probability(defaults, 22.0) == pytest.approx(
            1 - math.exp(-1), abs=1e-12
        )
        assert activation_probability(defaults, 22.0) == pytest.approx(0.632121, abs=1e-6)

    def test_hot_day_saturates(self, defaults):
        """Test T = 35 is within 1e-12 of certain activation."""
        assert activation_probability(defaults, 35.0) >= 1 - 1e-12
        assert activation_probability(defaults, 35.0) <= 1.0

    @pytest.mark.parametrize("temperature", [1e4, 1e100, 1e308])
    def test_extreme_temperature(self, defaults, temperature):
        """Test very large finite temperatures saturate at 1 instead of raising."""
        assert activation_probability(defaults, temperature) == 1.0

    def test_monotone_random(self):
        """Test p(T1) <= p(T2) for 10,000 random parameter/temperature draws."""
        rng = np.random.default_rng(2024)
        for _ in range(10_000):
            params = ActivationParams(
                u=float(rng.uniform(10, 30)),
                l=float(rng.uniform(0.5, 10)),
                k=float(rng.uniform(0.5, 6)),
                dt=float(rng.uniform(0.1, 3)),
                tau_c=float(rng.uniform(0.1, 3)),
            )
            t1, t2 = sorted(rng.uniform(-10, 50, size=2))
            p1 = activation_probability(params, float(t1))
            p2 = activation_probability(params, float(t2))
            assert p1 <= p2
            assert 0.0 <= p1 <= 1.0

    def test_doubling_dt(self):
        """Test doubling dt maps p to 1 - (1 - p)^2."""
        base = ActivationParams()
        doubled = ActivationParams(dt=2.0)
        halved_tau = ActivationParams(tau_c=0.5)
        for temperature in (18.5, 19.0, 20.5, 22.0, 24.0):
            p = activation_probability(base, temperature)
            expected = 1 - (1 - p) ** 2
            assert activation_probability(doubled, temperature) == pytest.approx(expected)
            assert activation_probability(halved_tau, temperature) == pytest.approx(
                expected
            )


class TestActivationCurve:
    """Test suite for the vectorized activation curve."""

    def test_matches_scalar(self, defaults):
        """Test element-wise agreement with the scalar function."""
        temps = np.linspace(10, 40, 61)
        curve = activation_curve(defaults, temps)
        for temperature, value in zip(temps, curve):
            assert value == pytest.approx(
                activation_probability(defaults, float(temperature)), abs=1e-15
            )

    def test_two_dimensional(self, defaults):
        """Test a stations x hours matrix keeps its shape."""
        temps = np.full((3, 24), 22.0)
        curve = activation_curve(defaults, temps)
        assert curve.shape == (3, 24)
        assert np.allclose(curve, 1 - math.exp(-1))

    def test_extreme_temperatures(self, defaults):
        """Test the curve saturates without warnings for huge temperatures."""
        with np.errstate(all="raise"):
            curve = activation_curve(defaults, np.array([-1e300, 20.0, 1e100, 1e308]))
        assert curve[0] == 0.0
        assert 0.0 < curve[1] < 1.0
        assert curve[2] == curve[3] == 1.0
