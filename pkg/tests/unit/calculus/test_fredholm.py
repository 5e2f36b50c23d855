# tests/unit/calculus/test_fredholm.py
"""
Unit tests for ellipticity, winding and index computation.
"""
import numpy as np
import pytest
from pydantic import ValidationError

from mellinkit.calculus.fredholm import (
    FredholmReport,
    SymbolField,
    analyze_field,
    ellipticity,
    essential_norm_lower_bound,
    local_invertibility_at_zero,
    winding_index,
)
from mellinkit.calculus.rectangle import Leg, rectangle_grid
from mellinkit.core.errors import DimensionMismatch, NotElliptic, RefinementExhausted


def _winding_field(k: int, n_per_leg: int = 16, with_evaluator: bool = True):
    """Scalar field exp(i k arclen / 3), winding k times around the origin."""
    grid = rectangle_grid(n_per_leg)

    def evaluator(arclen):
        arclen = np.atleast_1d(arclen)
        return np.exp(1j * k * arclen / 3.0)[:, None, None]

    params = np.array([p.arclen for p in grid])
    return SymbolField(
        points=tuple(grid),
        values=evaluator(params),
        evaluator=evaluator if with_evaluator else None,
    )


class TestSymbolField:
    """Tests for SymbolField."""

    def test_shape_checks(self):
        grid = rectangle_grid(8)
        with pytest.raises(DimensionMismatch, match="shape"):
            SymbolField(points=tuple(grid), values=np.ones((32, 2, 3)))
        with pytest.raises(DimensionMismatch, match="points but"):
            SymbolField(points=tuple(grid), values=np.ones((31, 1, 1)))

    def test_det_of_matrix_field(self):
        grid = rectangle_grid(8)
        values = np.broadcast_to(np.diag([2.0, 3.0]), (32, 2, 2))
        field_ = SymbolField(points=tuple(grid), values=values)
        np.testing.assert_allclose(field_.det(), 6.0)
        assert field_.dimension == 2

    def test_product(self):
        a = _winding_field(1)
        b = _winding_field(2)
        product = a * b
        np.testing.assert_allclose(product.values, _winding_field(3).values)
        assert product.evaluator is not None

    def test_product_dimension_mismatch(self):
        grid = rectangle_grid(8)
        scalar = SymbolField(points=tuple(grid), values=np.ones((32, 1, 1)))
        matrix = SymbolField(points=tuple(grid), values=np.ones((32, 2, 2)))
        with pytest.raises(DimensionMismatch):
            scalar * matrix

    def test_det_at_needs_evaluator(self):
        with pytest.raises(RefinementExhausted):
            _winding_field(1, with_evaluator=False).det_at(np.array([0.0]))


class TestWinding:
    """Tests for winding_index."""

    @pytest.mark.parametrize("k", [-2, 0, 1, 3])
    def test_known_winding(self, k):
        assert winding_index(_winding_field(k)) == (k, -k)

    def test_reversed_traversal(self):
        assert winding_index(_winding_field(2).reversed()) == (-2, 2)

    def test_fast_rotation_is_bisected(self):
        assert winding_index(_winding_field(10, n_per_leg=8)) == (10, -10)

    def test_fast_rotation_without_evaluator(self):
        field_ = _winding_field(10, n_per_leg=8, with_evaluator=False)
        with pytest.raises(RefinementExhausted, match="exceeds pi/2"):
            winding_index(field_)

    def test_degenerate_field(self):
        grid = rectangle_grid(8)
        field_ = SymbolField(points=tuple(grid), values=np.zeros((32, 1, 1)))
        with pytest.raises(NotElliptic):
            winding_index(field_)


class TestEllipticity:
    """Tests for ellipticity and local invertibility."""

    def test_unimodular(self):
        minimum, elliptic = ellipticity(_winding_field(1))
        assert minimum == pytest.approx(1.0)
        assert elliptic

    def test_threshold(self):
        grid = rectangle_grid(8)
        field_ = SymbolField(points=tuple(grid), values=np.full((32, 1, 1), 1e-11))
        minimum, elliptic = ellipticity(field_, tol_ell=1e-10)
        assert minimum == pytest.approx(1e-11)
        assert not elliptic
        assert ellipticity(field_, tol_ell=1e-12)[1]

    def test_local_invertibility_ignores_other_legs(self):
        grid = rectangle_grid(8)
        on_gamma3 = np.array([p.leg is Leg.GAMMA3 for p in grid])
        values = np.where(on_gamma3, 0.0, 1.0).astype(complex)[:, None, None]
        field_ = SymbolField(points=tuple(grid), values=values)
        assert local_invertibility_at_zero(field_)
        assert not ellipticity(field_)[1]


class TestReport:
    """Tests for FredholmReport and analyze_field."""

    def test_analyze_winding_field(self):
        report = analyze_field(_winding_field(-1))
        assert report.elliptic
        assert (report.winding, report.index) == (-1, 1)
        assert report.essential_norm_lower_bound == pytest.approx(1.0)

    def test_json_alias(self):
        payload = analyze_field(_winding_field(0)).to_json_dict()
        assert payload["local_invertible_at_zero"] is True
        assert "locally_invertible_at_zero" not in payload

    def test_index_consistency_enforced(self):
        with pytest.raises(ValidationError, match="index must equal -winding"):
            FredholmReport(
                min_abs_det=1.0,
                elliptic=True,
                winding=1,
                index=1,
                local_invertible_at_zero=True,
            )

    def test_essential_norm_bound(self):
        grid = rectangle_grid(8)
        values = np.broadcast_to(np.diag([2.0, 0.5]), (32, 2, 2))
        field_ = SymbolField(points=tuple(grid), values=values)
        assert essential_norm_lower_bound(field_) == pytest.approx(2.0)
