# mellinkit/calculus/assembly.py
"""
Symbol assembly on the rectangle.

An operator expression d0 I + W_a0 + sum_j C_j W_aj K_j W_bj is mapped to
a matrix function on the rectangle, either in L_p (``assemble_symbol_lp``)
or after lifting to Bessel potential spaces (``assemble_symbol_bessel``).

Leg conventions for a Fourier multiplier a:

    Gamma1   connecting arc from a(+inf) (at xi = -inf) to a(-inf)
    Gamma2+  a(-eta)
    Gamma3   connecting arc from a(0+) (at xi = -inf) to a(0-)
    Gamma2-  a(eta)

and for a Mellin symbol m at beta = 1/p: m(xi) on Gamma1 and Gamma3,
m(+inf) on Gamma2+ and m(-inf) on Gamma2-.
"""
import cmath
import math
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Tuple, Union

import numpy as np
import structlog

from mellinkit.calculus.multipliers import Multiplier, constant, g_power, sign
from mellinkit.calculus.rectangle import (
    Leg,
    RectanglePoint,
    corner_arclens,
    split_by_leg,
)
from mellinkit.core.errors import (
    AnalyticityViolation,
    ConstraintViolation,
    DimensionMismatch,
    UnsupportedMultiplicity,
)
from mellinkit.kernels.algebra import require_admissible
from mellinkit.kernels.models import MeromorphicKernel, PoleTerm
from mellinkit.symbols.mellin import (
    mellin_symbol,
    mellin_symbol_limits,
    mellin_symbol_pole,
)
from mellinkit.symbols.trig import cot_pi

logger = structlog.get_logger()

Evaluator = Callable[[np.ndarray], np.ndarray]

# Default gamma of the lifting Bessel potentials
DEFAULT_LIFT_GAMMA = 1j


def connecting_function(
    g_minus: complex, g_plus: complex, p: float, xi: Union[float, np.ndarray]
) -> Union[complex, np.ndarray]:
    """
    Arc joining g_minus (xi = -inf) to g_plus (xi = +inf).

    Value: (g_plus + g_minus)/2 - (i/2)(g_plus - g_minus) cot(pi (1/p - i xi)).
    For p = 2 the arc is the straight segment.
    """
    if not 1.0 < p < math.inf:
        raise ValueError(f"p must lie in (1, inf), got {p}")
    xi_arr = np.asarray(xi, dtype=float)
    value = 0.5 * (g_plus + g_minus) - 0.5j * (g_plus - g_minus) * cot_pi(
        1.0 / p, xi_arr
    )
    value = np.asarray(value)
    return complex(value) if value.ndim == 0 else value


# --- Expressions ---


@dataclass(frozen=True)
class KernelTerm:
    """One summand C W_a K W_b of an operator expression."""

    kernel: MeromorphicKernel
    left: Multiplier = field(default_factory=lambda: constant(1.0))
    right: Multiplier = field(default_factory=lambda: constant(1.0))
    coefficient: Optional[np.ndarray] = None


@dataclass(frozen=True)
class OperatorExpression:
    """
    d0 I + C0 W_a0 + sum_j C_j W_aj K_j W_bj.

    ``d0`` and the coefficients are N x N matrices (scalars are 1 x 1);
    a missing coefficient means the identity matrix.
    """

    d0: np.ndarray = field(default_factory=lambda: np.zeros((1, 1), dtype=complex))
    a0: Optional[Multiplier] = None
    a0_coefficient: Optional[np.ndarray] = None
    terms: Tuple[KernelTerm, ...] = ()

    @property
    def dimension(self) -> int:
        return as_matrix(self.d0).shape[0]

    def coefficient_matrices(self) -> List[np.ndarray]:
        """All coefficient matrices, identity where omitted."""
        n = self.dimension
        identity = np.eye(n, dtype=complex)
        mats = [as_matrix(self.d0)]
        if self.a0 is not None:
            mats.append(
                identity
                if self.a0_coefficient is None
                else as_matrix(self.a0_coefficient)
            )
        for term in self.terms:
            mats.append(
                identity if term.coefficient is None else as_matrix(term.coefficient)
            )
        return mats

    def check_dimensions(self) -> int:
        """
        Verify all coefficients are square and of equal size.

        Raises:
            DimensionMismatch: On any shape disagreement, or N > 8.
        """
        shapes = {m.shape for m in self.coefficient_matrices()}
        if len(shapes) != 1:
            raise DimensionMismatch(f"coefficient shapes differ: {sorted(shapes)}")
        (rows, cols), = shapes
        if rows != cols:
            raise DimensionMismatch(f"coefficients must be square, got {rows}x{cols}")
        if rows > 8:
            raise DimensionMismatch(f"matrix symbols are limited to N <= 8, got {rows}")
        return rows

    def check_analyticity(self, p: float, s: float) -> None:
        """
        Require analytic left/right factors when s is outside (1/p - 1, 1/p).

        Raises:
            AnalyticityViolation: If some a_j is not analytic in the lower
                half-plane or some b_j not in the upper one.
        """
        if 1.0 / p - 1.0 < s < 1.0 / p:
            return
        for index, term in enumerate(self.terms):
            if not term.left.analytic_lower:
                raise AnalyticityViolation(
                    f"term {index}: left multiplier ({term.left.kind}) needs an "
                    f"analytic extension to the lower half-plane for s={s}, p={p}"
                )
            if not term.right.analytic_upper:
                raise AnalyticityViolation(
                    f"term {index}: right multiplier ({term.right.kind}) needs an "
                    f"analytic extension to the upper half-plane for s={s}, p={p}"
                )


def as_matrix(value: Union[complex, np.ndarray, Sequence]) -> np.ndarray:
    """Promote a scalar or nested list to a complex 2-D array."""
    arr = np.asarray(value, dtype=complex)
    if arr.ndim == 0:
        return arr.reshape(1, 1)
    if arr.ndim != 2:
        raise DimensionMismatch(f"expected a matrix, got shape {arr.shape}")
    return arr


def identity_expression(n: int = 1, scale: complex = 1.0) -> OperatorExpression:
    return OperatorExpression(d0=scale * np.eye(n, dtype=complex))


# --- Leg values of the building blocks ---


def fourier_leg_values(
    a: Multiplier, leg: Leg, coord: np.ndarray, p: float
) -> np.ndarray:
    """Symbol of W_a on one leg."""
    coord = np.asarray(coord, dtype=float)
    if leg is Leg.GAMMA1:
        return np.broadcast_to(
            connecting_function(a.lim_plus_inf, a.lim_minus_inf, p, coord),
            coord.shape,
        ).astype(complex)
    if leg is Leg.GAMMA2_PLUS:
        return a.on_half_axis(coord, side=-1)
    if leg is Leg.GAMMA3:
        return np.broadcast_to(
            connecting_function(a.lim_zero_plus, a.lim_zero_minus, p, coord),
            coord.shape,
        ).astype(complex)
    return a.on_half_axis(coord, side=+1)


def _on_line(
    values: Callable[[np.ndarray], np.ndarray],
    coord: np.ndarray,
    at_minus_inf: complex,
    at_plus_inf: complex,
) -> np.ndarray:
    """Evaluate on finite coordinates, substitute limits at +-inf."""
    out = np.empty(coord.shape, dtype=complex)
    finite = np.isfinite(coord)
    if np.any(finite):
        out[finite] = values(coord[finite])
    out[coord == np.inf] = at_plus_inf
    out[coord == -np.inf] = at_minus_inf
    return out


def mellin_leg_values(
    k: MeromorphicKernel, leg: Leg, coord: np.ndarray, p: float
) -> np.ndarray:
    """Symbol of the Mellin convolution with kernel k on one leg (beta = 1/p)."""
    coord = np.asarray(coord, dtype=float)
    beta = 1.0 / p
    minus_inf, plus_inf = mellin_symbol_limits(k, beta)
    if leg is Leg.GAMMA2_PLUS:
        return np.full(coord.shape, plus_inf, dtype=complex)
    if leg is Leg.GAMMA2_MINUS:
        return np.full(coord.shape, minus_inf, dtype=complex)
    return _on_line(
        lambda x: np.asarray(mellin_symbol(k, beta, x)), coord, minus_inf, plus_inf
    )


def lifting_factor(s: float, gamma: complex = DEFAULT_LIFT_GAMMA) -> Multiplier:
    """g^s = ((xi - gamma) / (xi + gamma))^s, the multiplier behind I^s."""
    return g_power(s, gamma, gamma)


def _pole_exponent_factor(c: complex, s: float) -> complex:
    """exp(2 pi i s) |c|^(-s) exp(-i s arg c) with arg c in (0, 2 pi)."""
    arg_c = cmath.phase(c) % (2.0 * math.pi)
    return cmath.exp(2j * math.pi * s) * abs(c) ** (-s) * cmath.exp(-1j * s * arg_c)


def lifted_pole_leg_values(
    term: PoleTerm, leg: Leg, coord: np.ndarray, p: float, s: float
) -> np.ndarray:
    """
    Lifted symbol of the raw term d (t - c)^(-m), arg c != 0, m in {1, 2}.

    Gamma1 carries C_s(c) pi d [k_m(xi) - [m = 2] s c^-1 k_1(xi)] with
    k_m the normalized pole symbol at beta = 1/p; Gamma3 carries the same
    times (-c)^s; both Gamma2 legs carry 0.
    """
    coord = np.asarray(coord, dtype=float)
    if leg in (Leg.GAMMA2_PLUS, Leg.GAMMA2_MINUS):
        return np.zeros(coord.shape, dtype=complex)
    beta = 1.0 / p
    c = term.c
    scale = _pole_exponent_factor(c, s) * math.pi * term.d

    def line(x: np.ndarray) -> np.ndarray:
        value = np.asarray(mellin_symbol_pole(c, term.m, beta, x))
        if term.m == 2:
            value = value - s / c * np.asarray(mellin_symbol_pole(c, 1, beta, x))
        return scale * value

    values = _on_line(line, coord, 0j, 0j)
    if leg is Leg.GAMMA3:
        values = values * (-c) ** s
    return values


def lifted_cauchy_minus_one(
    p: float, s: float, xi: Union[float, np.ndarray]
) -> Union[complex, np.ndarray]:
    """Closed form exp(pi i s) / sin(pi (1/p - i xi)) of the lifted K^1_{-1}."""
    xi_arr = np.asarray(xi, dtype=float)
    value = np.asarray(
        cmath.exp(1j * math.pi * s) * mellin_symbol_pole(-1.0, 1, 1.0 / p, xi_arr)
    )
    return complex(value) if value.ndim == 0 else value


# --- Assembly ---


@dataclass(frozen=True)
class _Block:
    """A scalar symbol factor list times a coefficient matrix."""

    coefficient: np.ndarray
    factors: Tuple[Callable[[Leg, np.ndarray], np.ndarray], ...]


def _evaluate_blocks(blocks: List[_Block], n: int, arclen: np.ndarray) -> np.ndarray:
    arclen = np.atleast_1d(np.asarray(arclen, dtype=float))
    out = np.zeros((arclen.size, n, n), dtype=complex)
    for leg, idx, coord in split_by_leg(arclen):
        for block in blocks:
            scalar = np.ones(idx.size, dtype=complex)
            for factor in block.factors:
                scalar = scalar * factor(leg, coord)
            out[idx] += scalar[:, None, None] * block.coefficient[None, :, :]
    return out


def _corner_defect(evaluator: Evaluator) -> float:
    """Largest disagreement between the two legs meeting at each corner."""
    defect = 0.0
    for corner in corner_arclens():
        before = evaluator.leg_ends(corner)  # type: ignore[attr-defined]
        after = evaluator(np.array([corner]))[0]
        defect = max(defect, float(np.max(np.abs(before - after))))
    return defect


def _make_evaluator(blocks: List[_Block], n: int) -> Evaluator:
    def evaluator(arclen: np.ndarray) -> np.ndarray:
        return _evaluate_blocks(blocks, n, arclen)

    def leg_ends(corner: float) -> np.ndarray:
        # end coordinates of the leg arriving at each corner
        arriving = {
            0.0: (Leg.GAMMA2_MINUS, np.inf),
            2.0 * math.pi: (Leg.GAMMA1, np.inf),
            3.0 * math.pi: (Leg.GAMMA2_PLUS, 0.0),
            5.0 * math.pi: (Leg.GAMMA3, -np.inf),
        }
        leg, coord = arriving[min(arriving, key=lambda c: abs(c - corner))]
        out = np.zeros((n, n), dtype=complex)
        coord_arr = np.array([coord])
        for block in blocks:
            scalar = np.ones(1, dtype=complex)
            for factor in block.factors:
                scalar = scalar * factor(leg, coord_arr)
            out += scalar[0] * block.coefficient
        return out

    evaluator.leg_ends = leg_ends  # type: ignore[attr-defined]
    return evaluator


def _fourier_factor(a: Multiplier, p: float):
    return lambda leg, coord: fourier_leg_values(a, leg, coord, p)


def _mellin_factor(k: MeromorphicKernel, p: float):
    return lambda leg, coord: mellin_leg_values(k, leg, coord, p)


def _lifted_pole_factor(term: PoleTerm, p: float, s: float):
    return lambda leg, coord: lifted_pole_leg_values(term, leg, coord, p, s)


def _build_field(
    blocks: List[_Block],
    n: int,
    grid: Sequence[RectanglePoint],
    corner_tol: float,
    label: str,
):
    from mellinkit.calculus.fredholm import SymbolField

    evaluator = _make_evaluator(blocks, n)
    arclen = np.array([point.arclen for point in grid])
    values = evaluator(arclen)
    defect = _corner_defect(evaluator)
    logger.debug(
        "symbol_assembled",
        setting=label,
        points=len(grid),
        dimension=n,
        corner_defect=defect,
    )
    return SymbolField(
        points=tuple(grid),
        values=values,
        evaluator=evaluator,
        corner_defect=defect,
        closed=defect <= corner_tol,
    )


def assemble_symbol_lp(
    expr: OperatorExpression,
    p: float,
    grid: Sequence[RectanglePoint],
    corner_tol: float = 1e-9,
):
    """
    Symbol of an expression in L_p(R+) on the rectangle.

    Each term contributes C_j W_aj(w) M_j(w) W_bj(w) with M_j the Mellin
    symbol of K_j at beta = 1/p.

    Args:
        expr: Operator expression.
        p: Lebesgue exponent in (1, inf).
        grid: Sample points, ordered by arc length.
        corner_tol: Corner agreement required for ``closed``.

    Returns:
        SymbolField sampled on ``grid``.

    Raises:
        DimensionMismatch: If coefficient shapes disagree.
        ConstraintViolation: For positive-real poles other than c = 1.
    """
    if not 1.0 < p < math.inf:
        raise ValueError(f"p must lie in (1, inf), got {p}")
    n = expr.check_dimensions()
    mats = expr.coefficient_matrices()
    blocks = [_Block(mats[0], ())]
    offset = 1
    if expr.a0 is not None:
        blocks.append(_Block(mats[1], (_fourier_factor(expr.a0, p),)))
        offset = 2
    for term, coefficient in zip(expr.terms, mats[offset:]):
        require_admissible(term.kernel)
        mellin_symbol_limits(term.kernel, 1.0 / p)
        blocks.append(
            _Block(
                coefficient,
                (
                    _fourier_factor(term.left, p),
                    _mellin_factor(term.kernel, p),
                    _fourier_factor(term.right, p),
                ),
            )
        )
    return _build_field(blocks, n, grid, corner_tol, "lp")


def _lifted_kernel_factors(
    kernel: MeromorphicKernel, p: float, s: float, gamma: complex
) -> List[Callable[[Leg, np.ndarray], np.ndarray]]:
    """One factor per pole term of a kernel, lifted to order s."""
    require_admissible(kernel)
    factors = []
    for term in kernel.terms:
        if term.m > 2:
            raise UnsupportedMultiplicity(
                f"lifted symbols exist for m in {{1, 2}} only, got m = {term.m}; "
                "reduce the kernel by partial fractions first"
            )
        if term.on_positive_axis:
            if abs(term.c - 1.0) > 1e-12:
                raise ConstraintViolation(
                    f"positive-real pole c = {term.c.real:g}: only c = 1 "
                    "has a lifted symbol"
                )
            # d / (t - 1) = pi d K^1_1 and K^1_1 = W_{i sign} on the half-line
            cauchy = sign(1j * math.pi * term.d) * lifting_factor(s, gamma)
            factors.append(_fourier_factor(cauchy, p))
        else:
            factors.append(_lifted_pole_factor(term, p, s))
    return factors


def assemble_symbol_bessel(
    expr: OperatorExpression,
    p: float,
    s: float,
    grid: Sequence[RectanglePoint],
    gamma: complex = DEFAULT_LIFT_GAMMA,
    corner_tol: float = 1e-9,
):
    """
    Symbol of an expression acting between Bessel potential spaces of order s.

    d0 contributes d0 I^s (the Fourier symbol of g^s), a0 contributes the
    Fourier symbol of a0 g^s, and each term C_j W_aj K_j W_bj contributes
    C_j W_aj(w) K^s_j(w) W_bj(w) with the lifted kernel symbol K^s_j.

    Args:
        expr: Operator expression.
        p: Lebesgue exponent in (1, inf).
        s: Smoothness order.
        grid: Sample points, ordered by arc length.
        gamma: Parameter of the lifting Bessel potentials (Im gamma > 0).
        corner_tol: Corner agreement required for ``closed``.

    Returns:
        SymbolField sampled on ``grid``.

    Raises:
        AnalyticityViolation: If s is outside (1/p - 1, 1/p) and a factor
            lacks its analytic extension.
        UnsupportedMultiplicity: For poles of multiplicity > 2.
        DimensionMismatch: If coefficient shapes disagree.
    """
    if not 1.0 < p < math.inf:
        raise ValueError(f"p must lie in (1, inf), got {p}")
    n = expr.check_dimensions()
    expr.check_analyticity(p, s)
    mats = expr.coefficient_matrices()
    g = lifting_factor(s, gamma)

    blocks = [_Block(mats[0], (_fourier_factor(g, p),))]
    offset = 1
    if expr.a0 is not None:
        blocks.append(_Block(mats[1], (_fourier_factor(expr.a0 * g, p),)))
        offset = 2
    for term, coefficient in zip(expr.terms, mats[offset:]):
        left = _fourier_factor(term.left, p)
        right = _fourier_factor(term.right, p)
        for factor in _lifted_kernel_factors(term.kernel, p, s, gamma):
            blocks.append(_Block(coefficient, (left, factor, right)))
    return _build_field(blocks, n, grid, corner_tol, "bessel")
