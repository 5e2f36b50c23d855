# mellinkit/calculus/fredholm.py
"""
Ellipticity, winding number and Fredholm index of sampled symbols.
"""
import math
from dataclasses import dataclass, replace
from typing import Callable, List, Optional, Tuple

import numpy as np
import structlog
from pydantic import BaseModel, ConfigDict, Field, model_validator

from mellinkit.calculus.rectangle import (
    LEG_LENGTH,
    LEG_START,
    TOTAL_LENGTH,
    Leg,
    RectanglePoint,
)
from mellinkit.core.errors import DimensionMismatch, NotElliptic, RefinementExhausted

logger = structlog.get_logger()

Evaluator = Callable[[np.ndarray], np.ndarray]

DEFAULT_TOL_ELL = 1e-10
DEFAULT_CLOSURE = 1e-6
DEFAULT_MAX_DEPTH = 20
# Relative change at which the refined minimum counts as stable
MINIMUM_STABILITY = 0.01


@dataclass(frozen=True)
class SymbolField:
    """
    A matrix symbol sampled along the rectangle.

    Attributes:
        points: Sample points in traversal order.
        values: Array of shape (K, N, N).
        evaluator: Maps arc lengths to values, for refinement; optional.
        corner_defect: Largest mismatch between legs meeting at a corner.
        closed: Whether the corner defect is within tolerance.
        direction: +1 for clockwise traversal, -1 once reversed.
    """

    points: Tuple[RectanglePoint, ...]
    values: np.ndarray
    evaluator: Optional[Evaluator] = None
    corner_defect: float = 0.0
    closed: bool = True
    direction: int = 1

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=complex)
        if values.ndim != 3 or values.shape[1] != values.shape[2]:
            raise DimensionMismatch(
                f"symbol values must have shape (K, N, N), got {values.shape}"
            )
        if values.shape[0] != len(self.points):
            raise DimensionMismatch(
                f"{len(self.points)} points but {values.shape[0]} values"
            )
        object.__setattr__(self, "values", values)

    @property
    def dimension(self) -> int:
        return self.values.shape[1]

    @property
    def params(self) -> np.ndarray:
        return np.array([point.arclen for point in self.points])

    @property
    def samples(self) -> List[Tuple[RectanglePoint, np.ndarray]]:
        return list(zip(self.points, self.values))

    def det(self) -> np.ndarray:
        """Determinants at every sample."""
        if self.dimension == 1:
            return self.values[:, 0, 0].copy()
        return np.linalg.det(self.values)

    def det_at(self, arclen: np.ndarray) -> np.ndarray:
        """Determinants at arbitrary arc lengths; needs an evaluator."""
        if self.evaluator is None:
            raise RefinementExhausted("symbol field has no evaluator to refine with")
        values = self.evaluator(np.atleast_1d(np.asarray(arclen, dtype=float)))
        if values.shape[1] == 1:
            return values[:, 0, 0]
        return np.linalg.det(values)

    def reversed(self) -> "SymbolField":
        """The same field traversed in the opposite direction."""
        return replace(
            self,
            points=tuple(reversed(self.points)),
            values=self.values[::-1],
            direction=-self.direction,
        )

    def __mul__(self, other: "SymbolField") -> "SymbolField":
        """Pointwise matrix product of two fields on the same grid."""
        if len(self.points) != len(other.points) or not np.allclose(
            self.params, other.params
        ):
            raise DimensionMismatch("fields must be sampled on the same grid")
        if self.dimension != other.dimension:
            raise DimensionMismatch(
                f"cannot multiply {self.dimension}x{self.dimension} by "
                f"{other.dimension}x{other.dimension} symbols"
            )
        evaluator = None
        if self.evaluator is not None and other.evaluator is not None:
            left, right = self.evaluator, other.evaluator

            def evaluator(arclen: np.ndarray) -> np.ndarray:
                return left(arclen) @ right(arclen)

        return SymbolField(
            points=self.points,
            values=self.values @ other.values,
            evaluator=evaluator,
            corner_defect=max(self.corner_defect, other.corner_defect),
            closed=self.closed and other.closed,
            direction=self.direction,
        )


class FredholmReport(BaseModel):
    """Outcome of a Fredholm analysis, serialized into report.json."""

    model_config = ConfigDict(populate_by_name=True)

    min_abs_det: float
    elliptic: bool
    winding: int = 0
    index: int = 0
    locally_invertible_at_zero: bool = Field(alias="local_invertible_at_zero")
    essential_norm_lower_bound: Optional[float] = None

    @model_validator(mode="after")
    def check_index(self) -> "FredholmReport":
        if self.elliptic and self.index != -self.winding:
            raise ValueError("index must equal -winding for elliptic symbols")
        return self

    def to_json_dict(self) -> dict:
        return self.model_dump(by_alias=True)


def _refined_minimum(
    field: SymbolField,
    abs_det: np.ndarray,
    lower: float,
    upper: float,
    max_depth: int,
) -> float:
    """Zoom in around the sampled minimizer until the minimum settles."""
    params = field.params
    inside = np.nonzero((params >= lower) & (params <= upper))[0]
    if inside.size == 0:
        return math.inf
    best_local = inside[int(np.argmin(abs_det[inside]))]
    minimum = float(abs_det[best_local])
    if field.evaluator is None or minimum == 0.0:
        return minimum

    spacing = TOTAL_LENGTH / len(params)
    centre = float(params[best_local])
    width = spacing
    for depth in range(max_depth):
        a = max(lower, centre - width)
        b = min(upper, centre + width)
        probe = np.linspace(a, b, 2 ** (depth + 3) + 1)
        values = np.abs(field.det_at(probe))
        position = int(np.argmin(values))
        candidate = min(minimum, float(values[position]))
        settled = abs(minimum - candidate) <= MINIMUM_STABILITY * minimum
        minimum = candidate
        centre = float(probe[position])
        width = width / 2.0
        if settled or minimum == 0.0:
            break
    return minimum


def ellipticity(
    field: SymbolField,
    tol_ell: float = DEFAULT_TOL_ELL,
    max_depth: int = DEFAULT_MAX_DEPTH,
) -> Tuple[float, bool]:
    """
    Minimum of |det| over the rectangle and the resulting ellipticity flag.

    Args:
        field: Sampled symbol.
        tol_ell: Threshold below which the symbol counts as degenerate.
        max_depth: Refinement levels around the sampled minimizer.

    Returns:
        ``(min_abs_det, min_abs_det > tol_ell)``.
    """
    if not field.closed:
        logger.warning("symbol_field_not_closed", corner_defect=field.corner_defect)
    abs_det = np.abs(field.det())
    minimum = _refined_minimum(
        field, abs_det, -math.inf, math.inf, max_depth=max_depth
    )
    logger.debug("ellipticity_checked", min_abs_det=minimum, tol_ell=tol_ell)
    return minimum, minimum > tol_ell


def _arg_increment(
    field: SymbolField,
    a: float,
    b: float,
    det_a: complex,
    det_b: complex,
    depth: int,
    max_depth: int,
) -> float:
    """Continuous argument change of det from arclen a to b."""
    delta = float(np.angle(det_b / det_a))
    if abs(delta) < math.pi / 2.0:
        return delta
    if depth >= max_depth or field.evaluator is None:
        raise RefinementExhausted(
            f"argument step {delta:.3f} between arclen {a:.6g} and {b:.6g} "
            f"still exceeds pi/2 at depth {depth}"
        )
    mid = 0.5 * (a + b)
    det_mid = complex(field.det_at(np.array([mid]))[0])
    return _arg_increment(
        field, a, mid, det_a, det_mid, depth + 1, max_depth
    ) + _arg_increment(field, mid, b, det_mid, det_b, depth + 1, max_depth)


def winding_index(
    field: SymbolField,
    tol_ell: float = DEFAULT_TOL_ELL,
    closure: float = DEFAULT_CLOSURE,
    max_depth: int = DEFAULT_MAX_DEPTH,
) -> Tuple[int, int]:
    """
    Winding number of det along the traversal and the Fredholm index.

    Steps whose argument change reaches pi/2 are bisected through the
    field's evaluator.

    Returns:
        ``(winding, index)`` with index = -winding.

    Raises:
        NotElliptic: If min |det| <= tol_ell.
        RefinementExhausted: If a step cannot be resolved at max_depth, or
            the accumulated argument misses a multiple of 2 pi by more
            than ``closure``.
    """
    minimum, elliptic = ellipticity(field, tol_ell=tol_ell, max_depth=max_depth)
    if not elliptic:
        raise NotElliptic(f"min |det| = {minimum:.3e} <= tol_ell = {tol_ell:.1e}")

    dets = field.det()
    params = field.params
    ends = np.append(params, params[0] + field.direction * TOTAL_LENGTH)
    end_dets = np.append(dets, dets[0])

    total = 0.0
    for k in range(len(params)):
        total += _arg_increment(
            field,
            float(ends[k]),
            float(ends[k + 1]),
            complex(end_dets[k]),
            complex(end_dets[k + 1]),
            depth=0,
            max_depth=max_depth,
        )
    turns = total / (2.0 * math.pi)
    winding = int(round(turns))
    defect = abs(total - 2.0 * math.pi * winding)
    if defect > closure:
        raise RefinementExhausted(
            f"accumulated argument {total:.9g} misses 2 pi * {winding} by {defect:.2e}"
        )
    logger.debug("winding_computed", winding=winding, closure_defect=defect)
    return winding, -winding


def local_invertibility_at_zero(
    field: SymbolField,
    tol_ell: float = DEFAULT_TOL_ELL,
    max_depth: int = DEFAULT_MAX_DEPTH,
) -> bool:
    """True iff |det| stays above tol_ell on Gamma1."""
    gamma1 = np.array([point.leg is Leg.GAMMA1 for point in field.points])
    if not np.any(gamma1):
        raise ValueError("symbol field has no samples on Gamma1")
    abs_det = np.where(gamma1, np.abs(field.det()), math.inf)
    start = LEG_START[Leg.GAMMA1]
    minimum = _refined_minimum(
        field,
        abs_det,
        start,
        start + LEG_LENGTH[Leg.GAMMA1],
        max_depth=max_depth,
    )
    return minimum > tol_ell


def essential_norm_lower_bound(field: SymbolField) -> float:
    """Largest spectral radius of the sampled symbol."""
    radii = np.max(np.abs(np.linalg.eigvals(field.values)), axis=1)
    return float(np.max(radii))


def analyze_field(
    field: SymbolField,
    tol_ell: float = DEFAULT_TOL_ELL,
    closure: float = DEFAULT_CLOSURE,
    max_depth: int = DEFAULT_MAX_DEPTH,
) -> FredholmReport:
    """Run every check on a field and collect a FredholmReport."""
    minimum, elliptic = ellipticity(field, tol_ell=tol_ell, max_depth=max_depth)
    winding = 0
    if elliptic:
        winding, _ = winding_index(
            field, tol_ell=tol_ell, closure=closure, max_depth=max_depth
        )
    report = FredholmReport(
        min_abs_det=minimum,
        elliptic=elliptic,
        winding=winding,
        index=-winding,
        locally_invertible_at_zero=local_invertibility_at_zero(
            field, tol_ell=tol_ell, max_depth=max_depth
        ),
        essential_norm_lower_bound=essential_norm_lower_bound(field),
    )
    logger.info(
        "fredholm_analysis_completed",
        elliptic=elliptic,
        winding=winding,
        min_abs_det=minimum,
    )
    return report
