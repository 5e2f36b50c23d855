# mellinkit/lab/sections.py
"""
Finite sections of operator expressions on L2(R+).

Galerkin discretization with piecewise constants on [0, T]. Mellin
convolutions are homogeneous of degree -1, so their Galerkin entries do
not depend on the element size and are integrated exactly in element
units; Fourier multipliers give Toeplitz blocks.
"""
import math
from typing import Tuple

import numpy as np
import structlog
from scipy import linalg
from scipy.special import roots_legendre

from mellinkit.calculus.assembly import OperatorExpression, as_matrix
from mellinkit.calculus.multipliers import Multiplier
from mellinkit.core.errors import (
    ConstraintViolation,
    DimensionMismatch,
    SingularSection,
)
from mellinkit.kernels.algebra import require_admissible
from mellinkit.kernels.models import MeromorphicKernel, PoleTerm, SpaceParams
from mellinkit.lab.fourier import apply_fourier_multiplier
from mellinkit.lab.grid import Axis, GridFunction

logger = structlog.get_logger()

# Sub-samples per element when forming Toeplitz blocks
TOEPLITZ_OVERSAMPLE = 8
GAUSS_POINTS = 4


def _w_log(w: np.ndarray, principal_value: bool) -> np.ndarray:
    """w log w (or w log|w|), extended by 0 at w = 0."""
    out = np.zeros(w.shape, dtype=complex)
    nonzero = w != 0
    if principal_value:
        out[nonzero] = w[nonzero] * np.log(np.abs(w[nonzero]))
    else:
        out[nonzero] = w[nonzero] * np.log(w[nonzero])
    return out


def _antiderivative(term: PoleTerm, u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Phi with d2 Phi / du dv = v^(m-1) / (u - c v)^m, for m in {1, 2}."""
    c = term.c
    w = (u - c * v).astype(complex)
    if term.on_positive_axis:
        w = w.real.astype(complex)
    if term.m == 1:
        return -_w_log(w, term.on_positive_axis) / c
    log_w = np.zeros(w.shape, dtype=complex)
    nonzero = w != 0
    log_w[nonzero] = np.log(w[nonzero])
    return (np.where(u == 0, 0.0, u * log_w) - w) / c**2


def _gauss_entries(term: PoleTerm, n: int) -> np.ndarray:
    """Tensor Gauss-Legendre integration over every element pair."""
    x, wts = roots_legendre(GAUSS_POINTS)
    x = 0.5 * (x + 1.0)
    wts = 0.5 * wts
    nodes = (np.arange(n)[:, None] + x[None, :]).ravel()
    weights = np.tile(wts, n)
    u = nodes[:, None]
    v = nodes[None, :]
    values = v ** (term.m - 1) / (u - term.c * v) ** term.m
    values = values * weights[:, None] * weights[None, :]
    return values.reshape(n, GAUSS_POINTS, n, GAUSS_POINTS).sum(axis=(1, 3))


def mellin_galerkin_matrix(k: MeromorphicKernel, n: int) -> np.ndarray:
    """
    Galerkin matrix of a Mellin convolution in element units.

    Entries are int_i^(i+1) int_j^(j+1) K(u / v) / v dv du with
    K(t) = sum d (t - c)^(-m), exact for m <= 2 (principal value for
    c > 0) and 4-point Gauss otherwise.
    """
    require_admissible(k)
    grid = np.arange(n + 1, dtype=float)
    u = grid[:, None] * np.ones((1, n + 1))
    v = np.ones((n + 1, 1)) * grid[None, :]
    matrix = np.zeros((n, n), dtype=complex)
    for term in k.terms:
        if term.m <= 2:
            phi = _antiderivative(term, u, v)
            block = phi[1:, 1:] - phi[1:, :-1] - phi[:-1, 1:] + phi[:-1, :-1]
        else:
            block = _gauss_entries(term, n)
        matrix += term.d * block
    return matrix


def toeplitz_section(a: Multiplier, n: int, h: float) -> np.ndarray:
    """
    Galerkin section of W_a for elements of width h.

    The operator is applied by FFT to the indicator of one element on an
    oversampled grid, and averaged over the other elements.
    """
    if a.kind == "constant":
        return a.lim_zero_plus * np.eye(n, dtype=complex)
    sub = TOEPLITZ_OVERSAMPLE
    size = 1 << int(math.ceil(math.log2(4 * n * sub)))
    step = h / sub
    centre = size // 2
    box = np.zeros(size, dtype=complex)
    box[centre : centre + sub] = 1.0
    grid = GridFunction(
        samples=box,
        t_min=-centre * step,
        t_max=(size - centre) * step,
        n=size,
        axis=Axis.LINEAR_FULLLINE,
    )
    response = apply_fourier_multiplier(grid, a).samples
    offsets = np.arange(-(n - 1), n)
    starts = centre + offsets * sub
    means = np.array([response[s : s + sub].mean() for s in starts])
    column = means[n - 1 :]
    row = means[n - 1 :: -1]
    return linalg.toeplitz(column, row)


def section_matrix(expr: OperatorExpression, n: int, h: float) -> np.ndarray:
    """Galerkin section of a scalar operator expression."""
    if expr.check_dimensions() != 1:
        raise DimensionMismatch("finite sections need a scalar expression")
    mats = expr.coefficient_matrices()
    matrix = complex(mats[0][0, 0]) * np.eye(n, dtype=complex)
    offset = 1
    if expr.a0 is not None:
        matrix += complex(mats[1][0, 0]) * toeplitz_section(expr.a0, n, h)
        offset = 2
    for term, coefficient in zip(expr.terms, mats[offset:]):
        block = mellin_galerkin_matrix(term.kernel, n)
        if term.left.kind != "constant" or term.left.lim_zero_plus != 1:
            block = toeplitz_section(term.left, n, h) @ block
        if term.right.kind != "constant" or term.right.lim_zero_plus != 1:
            block = block @ toeplitz_section(term.right, n, h)
        matrix += complex(as_matrix(coefficient)[0, 0]) * block
    return matrix


def finite_section_solve(
    expr: OperatorExpression,
    sp: SpaceParams,
    rhs: GridFunction,
    n: int,
    rcond: float = 1e-12,
) -> Tuple[GridFunction, float]:
    """
    Solve the n-th finite section of expr u = rhs.

    Args:
        expr: Scalar operator expression.
        sp: Space parameters; sections are formed in L2(R+).
        rhs: Right-hand side on a linear half-line grid [0, T).
        n: Number of elements, a power of two >= 64.
        rcond: Relative singular value below which the section is singular.

    Returns:
        ``(solution, cond)``: element values of the least-squares solution
        and the 2-norm condition number of the section.

    Raises:
        ConstraintViolation: Unless p = 2 without weight.
        SingularSection: If the section is numerically rank-deficient.
    """
    if not math.isclose(sp.p, 2.0) or sp.gamma_weight != 0.0:
        raise ConstraintViolation(
            f"finite sections are formed in L2(R+); got p={sp.p}, "
            f"gamma={sp.gamma_weight}"
        )
    if rhs.axis is not Axis.LINEAR_HALFLINE or rhs.t_min != 0.0:
        raise ValueError("right-hand side must live on a half-line grid [0, T)")
    template = GridFunction(
        samples=np.zeros(n), t_min=0.0, t_max=rhs.t_max, n=n, axis=rhs.axis
    )
    if rhs.n == n:
        b = np.array(rhs.samples)
    else:
        nodes = template.nodes
        b = np.interp(nodes, rhs.nodes, rhs.samples.real) + 1j * np.interp(
            nodes, rhs.nodes, rhs.samples.imag
        )

    matrix = section_matrix(expr, n, template.h)
    singular_values = linalg.svdvals(matrix)
    if singular_values[-1] <= rcond * singular_values[0]:
        raise SingularSection(
            f"section of size {n} is rank-deficient: "
            f"sigma_min / sigma_max = {singular_values[-1] / singular_values[0]:.2e}"
        )
    cond = float(singular_values[0] / singular_values[-1])
    solution, *_ = linalg.lstsq(matrix, b)
    logger.debug("finite_section_solved", n=n, cond=cond)
    return template.with_samples(solution), cond
