# tests/unit/calculus/test_multipliers.py
"""
Unit tests for piecewise-continuous Fourier multipliers.
"""
import cmath
import math

import numpy as np
import pytest

from mellinkit.core.errors import ConstraintViolation
from mellinkit.calculus.multipliers import (
    blaschke_power,
    constant,
    g_power,
    piecewise,
    sign,
    table,
)


class TestConstant:
    """Tests for constant multipliers."""

    def test_values_and_limits(self):
        a = constant(2 - 1j)
        np.testing.assert_allclose(a(np.array([-3.0, 0.0, 5.0])), 2 - 1j)
        assert a(np.inf) == 2 - 1j
        assert a.is_continuous_at_zero and a.is_continuous_at_infinity
        assert a.analytic_lower and a.analytic_upper


class TestBlaschke:
    """Tests for blaschke_power."""

    def test_limits(self):
        a = blaschke_power(3)
        assert a.lim_plus_inf == 1 and a.lim_minus_inf == 1
        assert a.lim_zero_plus == -1
        a.validate_limits()

    def test_unimodular(self):
        xi = np.linspace(-20, 20, 101)
        np.testing.assert_allclose(np.abs(blaschke_power(-2)(xi)), 1.0)

    def test_analyticity_flags(self):
        assert blaschke_power(1).analytic_upper
        assert not blaschke_power(1).analytic_lower
        assert blaschke_power(-1).analytic_lower


class TestSign:
    """Tests for sign multipliers."""

    def test_jumps(self):
        a = sign(2.0)
        assert not a.is_continuous_at_zero
        assert not a.is_continuous_at_infinity
        assert a(0.0) == 0
        assert a(-1.0) == -2

    def test_half_axis(self):
        a = sign()
        np.testing.assert_allclose(a.on_half_axis([0.0, 1.0, np.inf], -1), -1.0)


class TestGPower:
    """Tests for the lifting factor g_power."""

    def test_limits_validate(self):
        a = g_power(0.7, 1j, 2j)
        assert a.lim_minus_inf == 1
        assert a.lim_plus_inf == pytest.approx(cmath.exp(2j * math.pi * 0.7))
        a.validate_limits()

    def test_zero_order_is_one(self):
        a = g_power(0.0, 1j, 1j)
        np.testing.assert_allclose(a(np.linspace(-5, 5, 11)), 1.0)

    def test_integer_order_is_rational(self):
        xi = np.linspace(-4, 4, 9) + 0.1
        expected = (xi - 1j) / (xi + 1j)
        np.testing.assert_allclose(g_power(1.0, 1j, 1j)(xi), expected, rtol=1e-12)

    def test_requires_upper_half_plane(self):
        with pytest.raises(ConstraintViolation, match="Im gamma1 > 0"):
            g_power(0.5, -1j, 1j)


class TestTable:
    """Tests for table multipliers."""

    def test_interpolates_nodes(self):
        a = table([-1.0, 1.0], [2.0, 3.0j], 0, 0, 1, 1)
        assert a(-1.0) == pytest.approx(2.0)
        assert a(1.0) == pytest.approx(3.0j)
        assert a(np.inf) == 0

    def test_rejects_zero_node(self):
        with pytest.raises(ValueError, match="nonzero"):
            table([0.0], [1.0], 0, 0, 0, 0)

    def test_rejects_mismatched_lengths(self):
        with pytest.raises(ValueError, match="equally long"):
            table([1.0, 2.0], [1.0], 0, 0, 0, 0)

    def test_inconsistent_limits_detected(self):
        a = table([-1.0, 1.0], [1.0, 1.0], 1, 1, 1, 1)
        a.validate_limits()
        bad = constant(1.0)
        object.__setattr__(bad, "lim_plus_inf", 5.0)
        with pytest.raises(ConstraintViolation, match="lim_plus_inf"):
            bad.validate_limits()


class TestComposition:
    """Tests for products and piecewise multipliers."""

    def test_product(self):
        a = sign() * blaschke_power(1)
        assert a.lim_zero_plus == -1 and a.lim_zero_minus == 1
        assert a(2.0) == pytest.approx((2 - 1j) / (2 + 1j))

    def test_scalar_product(self):
        a = 3 * sign()
        assert a.lim_plus_inf == 3

    def test_piecewise(self):
        a = piecewise(constant(1.0), constant(2.0))
        assert (a.lim_zero_minus, a.lim_zero_plus) == (1, 2)
        np.testing.assert_allclose(a(np.array([-1.0, 1.0])), [1.0, 2.0])
