# tests/unit/lab/test_identities.py
"""
Unit tests for the numerical identity checks.
"""
import cmath
import math

import numpy as np
import pytest

from mellinkit.core.errors import ConstraintViolation
from mellinkit.kernels.algebra import make_power_pole
from mellinkit.lab.grid import halfline_test_function
from mellinkit.lab.mellin_ops import halfline_kernel_at
from mellinkit.lab.identities import (
    CASES,
    DEFAULT_GAMMA,
    LIFT_PADDING,
    Identity,
    LiftingKind,
    _hestenes_coefficients,
    arg_0_2pi,
    c_power,
    case_check,
    check_commutation,
    check_derivative_commutation,
    check_lifting,
    check_mellin_vs_zbeta,
    check_pole_constraints,
    extend_halfline,
    kernel_image,
    refinement_study,
    run_case,
)

SMALL = {"half_width": 20.0, "n": 2**12}


class TestConstraints:
    """Tests for the argument conditions."""

    def test_positive_pole_rejected(self):
        with pytest.raises(ConstraintViolation, match="arg c != 0 required"):
            check_pole_constraints(1.0, DEFAULT_GAMMA)

    def test_lower_gamma_rejected(self):
        with pytest.raises(ConstraintViolation, match="Im gamma > 0"):
            check_pole_constraints(-1.0, -1j)

    def test_rotated_gamma_rejected(self):
        with pytest.raises(ConstraintViolation, match="arg\\(-c gamma\\)"):
            check_pole_constraints(1j, 1j)

    def test_default_gamma_accepted(self):
        check_pole_constraints(-1.0, DEFAULT_GAMMA)
        check_pole_constraints(cmath.exp(0.75j * math.pi), DEFAULT_GAMMA)


class TestBranches:
    """Tests for arg and power helpers."""

    def test_arg_range(self):
        assert arg_0_2pi(-1j) == pytest.approx(1.5 * math.pi)
        assert arg_0_2pi(1j) == pytest.approx(0.5 * math.pi)

    def test_c_power(self):
        assert c_power(-1.0, 1.0) == pytest.approx(-1.0)
        assert c_power(4j, 0.5) == pytest.approx(0.5 * cmath.exp(-0.25j * math.pi))


class TestExtension:
    """Tests for the smooth half-line extension."""

    def test_hestenes_moments(self):
        lam = _hestenes_coefficients(5)
        k = np.arange(1, 6)
        for j in range(5):
            assert np.sum(lam * k**j) == pytest.approx((-1) ** j)

    def test_keeps_comparison_region(self):
        template = halfline_test_function(20.0, 2**10)
        t = template.h * np.arange(template.n // 2)
        values = np.exp(-t)
        extended = extend_halfline(values, template)
        half = template.n // 2
        keep = t < 0.7 * template.t_max
        np.testing.assert_allclose(extended.samples[half:][keep], values[keep])

    def test_tapers_to_zero(self):
        template = halfline_test_function(20.0, 2**10)
        values = np.ones(template.n // 2)
        extended = extend_halfline(values, template)
        assert extended.samples[0] == 0
        assert abs(extended.samples[-1]) < 1e-12

    def test_shape_check(self):
        template = halfline_test_function(20.0, 256)
        with pytest.raises(ValueError, match="half-line samples"):
            extend_halfline(np.ones(10), template)


class TestChecks:
    """Residuals of the identity checks."""

    def test_commutation_order_zero(self):
        result = check_commutation(-1.0, 0.0, **SMALL)
        assert result.identity is Identity.COMMUTATION
        assert result.rel_residual < 1e-10
        assert result.parameters["c"] == [-1.0, 0.0]

    @pytest.mark.parametrize("kind", [LiftingKind.K1, LiftingKind.K2])
    def test_lifting_order_zero(self, kind):
        result = check_lifting(kind, -1.0, 0.0, **SMALL)
        assert result.rel_residual < 1e-10
        if kind is LiftingKind.K2:
            assert result.remainder_norm == pytest.approx(0.0, abs=1e-12)
        else:
            assert result.remainder_norm is None

    def test_commutation_rejects_positive_pole(self):
        with pytest.raises(ConstraintViolation):
            check_commutation(1.0, 1.0, **SMALL)

    def test_zbeta(self, cauchy_minus_one):
        result = check_mellin_vs_zbeta(cauchy_minus_one, n=2**12)
        assert result.identity is Identity.MELLIN_VS_ZBETA
        assert result.rel_residual < 1e-6
        assert result.grid["axis"] == "log_halfline"

    def test_derivative_rejects_positive_pole(self):
        with pytest.raises(ConstraintViolation, match="arg c != 0"):
            check_derivative_commutation(2.0, **SMALL)

    @pytest.mark.slow
    def test_commutation_order_one(self):
        assert check_commutation(-1.0, 1.0, **SMALL).rel_residual < 1e-3

    @pytest.mark.slow
    def test_lifting_k2_remainder_reported(self):
        result = check_lifting(LiftingKind.K2, -1.0, 0.5, **SMALL)
        assert result.remainder_norm > 0.0
        assert result.rel_residual < 1e-2

    @pytest.mark.slow
    def test_derivative(self):
        result = check_derivative_commutation(-1.0, **SMALL)
        assert result.rel_residual < 1e-3


class TestCases:
    """Tests for case dispatch and refinement studies."""

    def test_every_case_dispatches(self):
        for case in CASES:
            check, kwargs = case_check(case, -1.0, 0.0, DEFAULT_GAMMA)
            assert callable(check)
            assert "n" not in kwargs

    def test_zbeta_kernel(self):
        _, kwargs = case_check("zbeta", -1.0, 0.0, DEFAULT_GAMMA)
        assert kwargs["kernel"] == make_power_pole(-1.0, 1)

    def test_unknown_case(self):
        with pytest.raises(ValueError, match="unknown case"):
            run_case("nope", -1.0, 0.0, DEFAULT_GAMMA, n=2**10)

    def test_run_case(self):
        result = run_case(
            "lifting-k1", -1.0, 0.0, DEFAULT_GAMMA, n=2**11, half_width=20.0
        )
        assert result.identity is Identity.LIFTING_K1

    def test_refinement_study(self):
        frame = refinement_study(
            check_commutation, [2**10, 2**11], c=-1.0, s=0.0, half_width=20.0
        )
        assert list(frame.columns) == ["n", "rel_residual", "remainder_norm", "ratio"]
        assert frame["n"].tolist() == [2**10, 2**11]
        assert np.isnan(frame["ratio"].iloc[0])


DEFAULT_LAB = {"gamma": DEFAULT_GAMMA, "half_width": 40.0, "n": 2**14}


class TestKernelImage:
    """Tests for the widened kernel image fed to the one-sided potentials."""

    def test_window_is_widened(self):
        phi = halfline_test_function(20.0, 2**10)
        image = kernel_image(make_power_pole(1j, 1), phi)
        assert image.n == LIFT_PADDING * phi.n
        assert image.t_max == pytest.approx(LIFT_PADDING * phi.t_max)
        assert image.h == pytest.approx(phi.h)

    def test_upper_pole_continues_across_zero(self):
        phi = halfline_test_function(20.0, 2**10)
        k = make_power_pole(1j, 1)
        image = kernel_image(k, phi)
        inner = np.abs(image.nodes) < 0.5 * phi.t_max
        np.testing.assert_allclose(
            image.samples[inner],
            halfline_kernel_at(k, phi, image.nodes[inner]),
            rtol=1e-12,
        )
        assert image.samples[0] == 0
        assert image.samples[-1] == 0

    def test_real_pole_uses_reflection(self, cauchy_minus_one):
        phi = halfline_test_function(20.0, 2**10)
        image = kernel_image(cauchy_minus_one, phi)
        half = image.n // 2
        right = halfline_kernel_at(
            cauchy_minus_one, phi, image.h * np.arange(8)
        )
        np.testing.assert_allclose(image.samples[half : half + 8], right, rtol=1e-12)
        assert image.samples[0] == 0


class TestUpperPoleIdentities:
    """c = i with gamma = exp(3 pi i / 4) on the default T = 40, n = 2^14 grid."""

    def test_commutation_order_zero_is_round_off(self):
        result = check_commutation(1j, 0.0, half_width=20.0, n=2**12)
        assert result.rel_residual < 1e-12

    @pytest.mark.slow
    @pytest.mark.parametrize("s", [1.0, 2.0])
    def test_commutation_integer_order(self, s):
        assert check_commutation(1j, s, **DEFAULT_LAB).rel_residual <= 1e-8

    @pytest.mark.slow
    def test_commutation_fractional_order(self):
        assert check_commutation(1j, -1.5, **DEFAULT_LAB).rel_residual <= 5e-3

    @pytest.mark.slow
    def test_lifting_k1(self):
        result = check_lifting(LiftingKind.K1, 1j, 1.0, **DEFAULT_LAB)
        assert result.rel_residual <= 1e-6

    @pytest.mark.slow
    def test_lifting_k2_with_remainder(self):
        result = check_lifting(LiftingKind.K2, 1j, 1.0, **DEFAULT_LAB)
        assert result.rel_residual <= 1e-5
        assert result.remainder_norm > 0.0

    @pytest.mark.slow
    def test_derivative(self):
        result = check_derivative_commutation(1j, half_width=40.0, n=2**14)
        assert result.rel_residual <= 1e-6

    @pytest.mark.slow
    @pytest.mark.parametrize("s", [2.0, -1.5])
    def test_commutation_residual_decreases_with_n(self, s):
        frame = refinement_study(
            check_commutation,
            [2**10, 2**11, 2**12],
            c=1j,
            s=s,
            gamma=DEFAULT_GAMMA,
            half_width=40.0,
        )
        residuals = frame["rel_residual"].to_numpy()
        assert np.all(residuals[1:] <= 1.1 * residuals[:-1])
        assert residuals[-1] < 0.1 * residuals[0]

    @pytest.mark.slow
    def test_lifting_residual_decreases_with_n(self):
        frame = refinement_study(
            check_lifting,
            [2**10, 2**11, 2**12],
            kind=LiftingKind.K1,
            c=1j,
            s=1.0,
            gamma=DEFAULT_GAMMA,
            half_width=40.0,
        )
        residuals = frame["rel_residual"].to_numpy()
        assert np.all(residuals[1:] <= 1.1 * residuals[:-1])
