# tests/unit/lab/test_mellin_ops.py
"""
Unit tests for Mellin convolutions on sampled functions.
"""
import cmath
import math

import numpy as np
import pytest

from mellinkit.core.errors import ConstraintViolation, InvalidPole
from mellinkit.kernels.algebra import make_power_pole
from mellinkit.kernels.models import MeromorphicKernel
from mellinkit.lab.grid import (
    GridFunction,
    halfline_test_function,
    log_axis_test_function,
)
from mellinkit.lab.mellin_ops import (
    apply_halfline_kernel,
    apply_mellin_kernel,
    halfline_kernel_at,
    log_grid_norm,
    mellin_convolve_direct,
    mellin_convolve_symbol,
    weighted_difference,
)
from mellinkit.lab.norms import symbol_supremum


@pytest.fixture
def log_gaussian_grid():
    return log_axis_test_function(-20.0, 20.0, 2**12)


class TestApplyMellinKernel:
    """Direct quadrature, checked against the Z_beta symbol path."""

    def test_returns_direct_quadrature(self, log_gaussian_grid, cauchy_minus_one):
        result = apply_mellin_kernel(log_gaussian_grid, cauchy_minus_one)
        expected = mellin_convolve_direct(cauchy_minus_one, log_gaussian_grid)
        assert isinstance(result, GridFunction)
        np.testing.assert_array_equal(result.samples, expected.samples)

    def test_cauchy_minus_one(self, log_gaussian_grid, cauchy_minus_one):
        direct = apply_mellin_kernel(log_gaussian_grid, cauchy_minus_one)
        via_symbol = mellin_convolve_symbol(cauchy_minus_one, log_gaussian_grid)
        assert weighted_difference(direct, via_symbol, 0.5) < 1e-6

    def test_upper_pole_other_beta(self, log_gaussian_grid):
        k = make_power_pole(1j, 1)
        direct = apply_mellin_kernel(log_gaussian_grid, k)
        via_symbol = mellin_convolve_symbol(k, log_gaussian_grid, beta=0.3)
        assert weighted_difference(direct, via_symbol, 0.3) < 1e-6

    def test_cauchy_principal_value(self, log_gaussian_grid):
        k = make_power_pole(1.0, 1)
        direct = apply_mellin_kernel(log_gaussian_grid, k)
        via_symbol = mellin_convolve_symbol(k, log_gaussian_grid)
        assert weighted_difference(direct, via_symbol, 0.5) < 1e-3

    def test_empty_kernel(self, log_gaussian_grid):
        k = MeromorphicKernel()
        assert not np.any(apply_mellin_kernel(log_gaussian_grid, k).samples)
        assert not np.any(mellin_convolve_symbol(k, log_gaussian_grid).samples)

    @pytest.mark.parametrize("c", [-1.0, 1j, cmath.exp(0.75j * math.pi)])
    def test_norm_within_symbol_supremum(self, log_gaussian_grid, c):
        """||K f|| in L2(R+) stays below sup |symbol| ||f|| at beta = 1/2."""
        k = make_power_pole(c, 1)
        image = apply_mellin_kernel(log_gaussian_grid, k)
        bound = symbol_supremum(k, 0.5) * log_grid_norm(log_gaussian_grid)
        assert log_grid_norm(image) <= bound + 1e-8

    def test_other_positive_pole(self, log_gaussian_grid):
        with pytest.raises(ConstraintViolation, match="c = 1 only"):
            mellin_convolve_direct(make_power_pole(2.0, 1), log_gaussian_grid)

    def test_inadmissible(self, log_gaussian_grid):
        k = MeromorphicKernel.from_terms((2, 2, 1))
        with pytest.raises(InvalidPole):
            apply_mellin_kernel(log_gaussian_grid, k)

    def test_rejects_linear_axis(self, cauchy_minus_one):
        with pytest.raises(ValueError, match="log-axis"):
            mellin_convolve_direct(cauchy_minus_one, halfline_test_function(5, 64))


class TestHalflineKernel:
    """Tests for apply_halfline_kernel and halfline_kernel_at."""

    def test_rejects_positive_pole(self):
        f = halfline_test_function(20.0, 256)
        with pytest.raises(ConstraintViolation, match="arg c != 0"):
            apply_halfline_kernel(make_power_pole(1.0, 1), f, 16)

    def test_rejects_log_axis(self, cauchy_minus_one):
        f = log_axis_test_function(-5, 5, 64)
        with pytest.raises(ValueError, match="full-line"):
            apply_halfline_kernel(cauchy_minus_one, f, 16)

    def test_negative_points_need_non_real_poles(self, cauchy_minus_one):
        f = halfline_test_function(20.0, 256)
        with pytest.raises(ConstraintViolation, match="non-real poles"):
            halfline_kernel_at(cauchy_minus_one, f, np.array([-1.0, 1.0]))

    def test_grid_points_match(self):
        f = halfline_test_function(20.0, 1024)
        k = make_power_pole(1j, 1)
        np.testing.assert_allclose(
            halfline_kernel_at(k, f, f.h * np.arange(8)),
            apply_halfline_kernel(k, f, 8),
            rtol=1e-14,
        )

    def test_continuation_is_smooth_across_zero(self):
        """Second differences of the image stay O(h^2) through t = 0."""
        f = halfline_test_function(20.0, 2**12)
        k = make_power_pole(1j, 1)
        h = f.h
        t = h * np.arange(-4, 5)
        values = halfline_kernel_at(k, f, t)
        second = values[2:] - 2.0 * values[1:-1] + values[:-2]
        assert np.max(np.abs(second)) < 2e-3 * np.max(np.abs(values))

    def test_matches_log_axis_quadrature(self, cauchy_minus_one):
        """The same operator evaluated at t = 1 on both discretizations."""
        f = halfline_test_function(20.0, 2**14)
        h = f.h
        index = int(round(1.0 / h))
        value = apply_halfline_kernel(cauchy_minus_one, f, index + 1)[index]

        log_f = log_axis_test_function(-20.0, 20.0, 2**12, sigma=0.5)
        direct = mellin_convolve_direct(cauchy_minus_one, log_f)
        x = math.log(index * h)
        expected = np.interp(x, log_f.nodes, direct.samples.real)
        assert value.real == pytest.approx(expected, rel=1e-3)


def test_log_grid_norm_of_gaussian():
    f = log_axis_test_function(-20.0, 20.0, 2**12)
    expected = math.sqrt(math.sqrt(math.pi / 2.0) * math.exp(1.0 / 8.0))
    assert log_grid_norm(f) == pytest.approx(expected, rel=1e-10)


def test_weighted_difference_of_identical():
    f = log_axis_test_function(-5.0, 5.0, 64)
    assert weighted_difference(f, f, 0.5) == 0.0
