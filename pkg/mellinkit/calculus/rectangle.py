# mellinkit/calculus/rectangle.py
"""
The compactified rectangle carrying operator symbols.

Four legs are traversed clockwise:

    Gamma1   xi  from -inf to +inf   arclen [0, 2pi)
    Gamma2+  eta from +inf to 0      arclen [2pi, 3pi)
    Gamma3   xi  from +inf to -inf   arclen [3pi, 5pi)
    Gamma2-  eta from 0 to +inf      arclen [5pi, 6pi)

Arc length is measured in the metric rho(x, y) = |theta(x) - theta(y)|
with theta(x) = arg((x - i)/(x + i)) = pi + 2 arctan x, so a full line
has length 2pi and a half-line has length pi.
"""
import math
from dataclasses import dataclass
from enum import Enum
from typing import List, Tuple

import numpy as np

TOTAL_LENGTH = 6.0 * math.pi


class Leg(str, Enum):
    """Legs of the rectangle in traversal order."""

    GAMMA1 = "Gamma1"
    GAMMA2_PLUS = "Gamma2Plus"
    GAMMA3 = "Gamma3"
    GAMMA2_MINUS = "Gamma2Minus"


LEG_START = {
    Leg.GAMMA1: 0.0,
    Leg.GAMMA2_PLUS: 2.0 * math.pi,
    Leg.GAMMA3: 3.0 * math.pi,
    Leg.GAMMA2_MINUS: 5.0 * math.pi,
}
LEG_LENGTH = {
    Leg.GAMMA1: 2.0 * math.pi,
    Leg.GAMMA2_PLUS: math.pi,
    Leg.GAMMA3: 2.0 * math.pi,
    Leg.GAMMA2_MINUS: math.pi,
}
LEG_ORDER = (Leg.GAMMA1, Leg.GAMMA2_PLUS, Leg.GAMMA3, Leg.GAMMA2_MINUS)


@dataclass(frozen=True)
class RectanglePoint:
    """A point of the rectangle: leg, leg coordinate and arc length."""

    leg: Leg
    coord: float
    arclen: float


def leg_of(arclen: np.ndarray) -> np.ndarray:
    """Leg index (position in LEG_ORDER) for each arc length in [0, 6pi)."""
    u = np.mod(np.asarray(arclen, dtype=float), TOTAL_LENGTH)
    return np.searchsorted(
        [LEG_START[leg] for leg in LEG_ORDER[1:]], u, side="right"
    )


def leg_coordinates(leg: Leg, v: np.ndarray) -> np.ndarray:
    """
    Leg coordinate for local arc length v in [0, leg length).

    The leg start maps to its exact limit value (+-inf or 0).
    """
    v = np.asarray(v, dtype=float)
    with np.errstate(over="ignore"):
        if leg is Leg.GAMMA1:
            coord = np.tan((v - math.pi) / 2.0)
            coord = np.where(v <= 0.0, -np.inf, coord)
        elif leg is Leg.GAMMA2_PLUS:
            coord = np.tan((math.pi - v) / 2.0)
            coord = np.where(v <= 0.0, np.inf, coord)
        elif leg is Leg.GAMMA3:
            coord = np.tan((math.pi - v) / 2.0)
            coord = np.where(v <= 0.0, np.inf, coord)
        else:
            coord = np.tan(v / 2.0)
    # tan(pi/2) is finite in floating point; snap the symmetric midpoints
    return np.where(np.abs(coord) < 1e-15, 0.0, coord)


def split_by_leg(arclen: np.ndarray) -> List[Tuple[Leg, np.ndarray, np.ndarray]]:
    """
    Group arc lengths by leg.

    Returns:
        List of (leg, indices into ``arclen``, leg coordinates).
    """
    u = np.mod(np.asarray(arclen, dtype=float), TOTAL_LENGTH)
    legs = leg_of(u)
    groups = []
    for position, leg in enumerate(LEG_ORDER):
        idx = np.nonzero(legs == position)[0]
        if idx.size:
            local = u[idx] - LEG_START[leg]
            groups.append((leg, idx, leg_coordinates(leg, local)))
    return groups


def point_at(arclen: float) -> RectanglePoint:
    """RectanglePoint at a given arc length (taken modulo 6pi)."""
    u = float(np.mod(arclen, TOTAL_LENGTH))
    (leg, _, coord), = split_by_leg(np.array([u]))
    return RectanglePoint(leg=leg, coord=float(coord[0]), arclen=u)


def rectangle_grid(n_per_leg: int) -> List[RectanglePoint]:
    """
    Uniform grid of 4 * n_per_leg points on the rectangle.

    Spacing is h = 6pi / (4 n) in arc length, shifted so that xi = 0 on
    Gamma1 (arclen pi) is a grid point. The loop closes with a final gap
    of exactly h back to the first point.

    Args:
        n_per_leg: Points per leg on average; at least 8.

    Returns:
        Points ordered by arc length, all in [0, 6pi).
    """
    if n_per_leg < 8:
        raise ValueError(f"n_per_leg must be >= 8, got {n_per_leg}")
    count = 4 * n_per_leg
    h = TOTAL_LENGTH / count
    offset = math.fmod(math.pi, h)
    arclen = offset + h * np.arange(count)
    points: List[RectanglePoint] = [None] * count  # type: ignore[list-item]
    for leg, idx, coord in split_by_leg(arclen):
        for i, x in zip(idx, coord):
            points[i] = RectanglePoint(
                leg=leg, coord=float(x), arclen=float(arclen[i])
            )
    return points


def corner_arclens() -> List[float]:
    """Arc lengths of the four corners, starting with (-inf, inf)."""
    return [LEG_START[leg] for leg in LEG_ORDER]
