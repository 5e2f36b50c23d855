# tests/unit/calculus/test_rectangle.py
"""
Unit tests for the compactified rectangle.
"""
import math

import numpy as np
import pytest

from mellinkit.calculus.rectangle import (
    TOTAL_LENGTH,
    Leg,
    corner_arclens,
    point_at,
    rectangle_grid,
)


class TestPointAt:
    """Tests for point_at."""

    @pytest.mark.parametrize(
        "arclen,leg,coord",
        [
            (0.0, Leg.GAMMA1, -math.inf),
            (math.pi, Leg.GAMMA1, 0.0),
            (2 * math.pi, Leg.GAMMA2_PLUS, math.inf),
            (2.5 * math.pi, Leg.GAMMA2_PLUS, 1.0),
            (3 * math.pi, Leg.GAMMA3, math.inf),
            (4 * math.pi, Leg.GAMMA3, 0.0),
            (5 * math.pi, Leg.GAMMA2_MINUS, 0.0),
            (5.5 * math.pi, Leg.GAMMA2_MINUS, 1.0),
        ],
    )
    def test_legs_and_coordinates(self, arclen, leg, coord):
        point = point_at(arclen)
        assert point.leg is leg
        assert point.coord == pytest.approx(coord, abs=1e-12)

    def test_wraps_around(self):
        assert point_at(TOTAL_LENGTH + math.pi).coord == pytest.approx(0.0, abs=1e-12)


class TestRectangleGrid:
    """Tests for rectangle_grid."""

    def test_size_and_order(self):
        grid = rectangle_grid(16)
        arclen = np.array([p.arclen for p in grid])
        assert len(grid) == 64
        assert np.all(np.diff(arclen) > 0)
        assert arclen[0] >= 0.0 and arclen[-1] < TOTAL_LENGTH

    def test_uniform_spacing_closes(self):
        grid = rectangle_grid(8)
        arclen = np.array([p.arclen for p in grid])
        h = TOTAL_LENGTH / 32
        np.testing.assert_allclose(np.diff(arclen), h)
        assert TOTAL_LENGTH - arclen[-1] + arclen[0] == pytest.approx(h)

    def test_contains_xi_zero(self):
        grid = rectangle_grid(32)
        zeros = [p for p in grid if p.leg is Leg.GAMMA1 and p.coord == 0.0]
        assert len(zeros) == 1

    def test_every_leg_sampled(self):
        legs = {p.leg for p in rectangle_grid(8)}
        assert legs == set(Leg)

    def test_minimum_size(self):
        with pytest.raises(ValueError, match="n_per_leg must be >= 8"):
            rectangle_grid(4)


def test_corners():
    assert corner_arclens() == pytest.approx(
        [0.0, 2 * math.pi, 3 * math.pi, 5 * math.pi]
    )
