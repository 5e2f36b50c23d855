# mellinkit/lab/identities.py
"""
Numerical checks of the commutation and lifting identities.

Half-line functions live on the positive half of a symmetric full-line
window [-T, T). Operators of the form (xi - gamma)^s only see the part of
their input to the right of the evaluation point. The kernel image they act
on is therefore evaluated by quadrature on a window LIFT_PADDING times wider,
continued smoothly to t < 0 and tapered only near the far ends; residuals
are measured on [0, T/4), where the tapers are out of reach.
"""
import cmath
import math
from enum import Enum
from typing import Any, Callable, Dict, Iterable, List, Optional, Tuple

import numpy as np
import pandas as pd
import structlog
from joblib import Parallel, delayed
from pydantic import BaseModel, Field

from mellinkit.core.errors import ConstraintViolation
from mellinkit.kernels.algebra import make_power_pole
from mellinkit.kernels.models import MeromorphicKernel, is_positive_real
from mellinkit.lab.fourier import (
    BesselSign,
    SymbolFunc,
    apply_symbol,
    bessel_product_symbol,
    require_upper_gamma,
)
from mellinkit.lab.grid import (
    GridFunction,
    halfline_test_function,
    log_axis_test_function,
)
from mellinkit.lab.mellin_ops import (
    apply_halfline_kernel,
    apply_mellin_kernel,
    halfline_kernel_at,
    mellin_convolve_symbol,
    weighted_difference,
)

logger = structlog.get_logger()

# Derivatives matched across t = 0 by the reflection extension
HESTENES_ORDER = 5
# Kernel images for the one-sided potentials use a window this many times wider
LIFT_PADDING = 2
DEFAULT_GAMMA = cmath.exp(0.75j * math.pi)


class Identity(str, Enum):
    """Identities the lab can verify."""

    COMMUTATION = "commutation"
    LIFTING_K1 = "lifting_k1"
    LIFTING_K2 = "lifting_k2"
    MELLIN_VS_ZBETA = "mellin_vs_zbeta"
    DERIVATIVE = "derivative_commutation"


class LiftingKind(str, Enum):
    K1 = "K1"
    K2 = "K2"


class IdentityCheckResult(BaseModel):
    """Relative residual of one identity check."""

    identity: Identity
    rel_residual: float = Field(..., ge=0.0)
    grid: Dict[str, Any]
    parameters: Dict[str, Any] = Field(default_factory=dict)
    remainder_norm: Optional[float] = None


def complex_pair(value: complex) -> List[float]:
    value = complex(value)
    return [value.real, value.imag]


def arg_0_2pi(c: complex) -> float:
    """arg c in [0, 2 pi)."""
    return cmath.phase(c) % (2.0 * math.pi)


def c_power(c: complex, s: float) -> complex:
    """c^(-s) = |c|^(-s) exp(-i s arg c) with arg c in (0, 2 pi)."""
    return abs(c) ** (-s) * cmath.exp(-1j * s * arg_0_2pi(c))


def check_pole_constraints(c: complex, gamma: complex) -> None:
    """
    Raises:
        ConstraintViolation: Unless 0 < arg c < 2 pi, Im gamma > 0 and
            0 < arg(-c gamma) < pi.
    """
    c = complex(c)
    if c == 0 or is_positive_real(c):
        raise ConstraintViolation(
            f"arg c != 0 required (0 < arg c < 2 pi), got c = {c}"
        )
    require_upper_gamma(gamma)
    if (-c * gamma).imag <= 0.0:
        raise ConstraintViolation(
            f"0 < arg(-c gamma) < pi required, got arg = {cmath.phase(-c * gamma):.4f}"
        )


# --- Smooth extension of half-line data ---


def _smooth_step(x: np.ndarray) -> np.ndarray:
    """C-infinity step: 0 for x <= 0, 1 for x >= 1."""
    x = np.clip(np.asarray(x, dtype=float), 0.0, 1.0)
    with np.errstate(divide="ignore"):
        left = np.where(x > 0.0, np.exp(-1.0 / np.where(x > 0.0, x, 1.0)), 0.0)
        right = np.where(x < 1.0, np.exp(-1.0 / np.where(x < 1.0, 1.0 - x, 1.0)), 0.0)
    return left / (left + right)


def _taper(t: np.ndarray, width: float) -> np.ndarray:
    """1 for |t| <= 0.75 width, 0 for |t| >= 0.95 width."""
    return 1.0 - _smooth_step((np.abs(t) - 0.75 * width) / (0.2 * width))


def _hestenes_coefficients(order: int) -> np.ndarray:
    """lambda_k with sum_k lambda_k k^j = (-1)^j for j < order, k = 1..order."""
    k = np.arange(1, order + 1, dtype=float)
    vandermonde = k[None, :] ** np.arange(order)[:, None]
    return np.linalg.solve(vandermonde, (-1.0) ** np.arange(order))


def extend_halfline(values: np.ndarray, template: GridFunction) -> GridFunction:
    """
    Full-line function from samples on [0, T).

    t < 0 gets sum_k lambda_k psi(-k t), matching the first HESTENES_ORDER
    derivatives at 0 and tapered to zero; t > 0 is tapered on [0.75 T, 0.95 T].
    """
    n = template.n
    half = n // 2
    values = np.asarray(values, dtype=complex)
    if values.shape != (half,):
        raise ValueError(f"expected {half} half-line samples, got {values.shape}")
    t = template.h * np.arange(half)
    right = values * _taper(t, template.t_max)

    reach = (half - 1) // HESTENES_ORDER
    lam = _hestenes_coefficients(HESTENES_ORDER)
    j = np.arange(1, reach + 1)
    left_values = np.zeros(reach, dtype=complex)
    for k, weight in enumerate(lam, start=1):
        left_values += weight * values[k * j]
    left_taper = 1.0 - _smooth_step((j - 0.25 * reach) / (0.65 * reach))
    left_values *= left_taper

    samples = np.zeros(n, dtype=complex)
    samples[half:] = right
    samples[half - j] = left_values
    return template.with_samples(samples)


def _lift_window(template: GridFunction) -> GridFunction:
    """Window LIFT_PADDING times wider than ``template``, same step."""
    width = LIFT_PADDING * template.t_max
    n = LIFT_PADDING * template.n
    return GridFunction(np.zeros(n, dtype=complex), -width, width, n)


def kernel_image(kernel: MeromorphicKernel, source: GridFunction) -> GridFunction:
    """
    K applied to the t > 0 part of ``source``, on the widened lift window.

    For non-real poles the image is evaluated on both sides of t = 0 by the
    same quadrature, which continues it analytically; a real pole falls back
    to ``extend_halfline``. Both window ends are tapered to zero.
    """
    wide = _lift_window(source)
    half = wide.n // 2
    if any(term.c.imag == 0.0 for term in kernel.terms):
        t = wide.h * np.arange(half)
        live = _taper(t, wide.t_max) > 0.0
        right = np.zeros(half, dtype=complex)
        right[live] = halfline_kernel_at(kernel, source, t[live])
        return extend_halfline(right, wide)
    t = wide.nodes
    taper = _taper(t, wide.t_max)
    live = taper > 0.0
    samples = np.zeros(wide.n, dtype=complex)
    samples[live] = halfline_kernel_at(kernel, source, t[live]) * taper[live]
    return wide.with_samples(samples)


def _compare_count(f: GridFunction) -> int:
    return f.n // 8


def _one_sided(image: GridFunction, symbol: SymbolFunc, count: int) -> np.ndarray:
    """Multiplier applied to a lift-window image, read on [0, count h)."""
    half = image.n // 2
    return apply_symbol(image, symbol).samples[half : half + count]


def _lift_minus(
    image: GridFunction, s: float, gamma: complex, count: int
) -> np.ndarray:
    """(xi - gamma)^s applied to a lift-window image, on [0, count h)."""
    symbol = bessel_product_symbol([(s, gamma, BesselSign.MINUS_GAMMA)])
    return _one_sided(image, symbol, count)


def _plus_potentials(
    phi: GridFunction, factors: Iterable[Tuple[float, complex]]
) -> GridFunction:
    """Product of plus-type potentials (xi + gamma_j)^s_j applied to phi."""
    return apply_symbol(
        phi,
        bessel_product_symbol(
            [(s, gamma, BesselSign.PLUS_GAMMA) for s, gamma in factors]
        ),
    )


def _relative(lhs: np.ndarray, rhs: np.ndarray) -> float:
    den = float(np.linalg.norm(lhs))
    num = float(np.linalg.norm(lhs - rhs))
    return num / den if den > 0.0 else num


def _phi_or_default(
    phi: Optional[GridFunction], half_width: float, n: int
) -> GridFunction:
    return phi if phi is not None else halfline_test_function(half_width, n)


# --- Checks ---


def check_commutation(
    c: complex,
    s: float,
    gamma: complex = DEFAULT_GAMMA,
    phi: Optional[GridFunction] = None,
    half_width: float = 40.0,
    n: int = 2**14,
) -> IdentityCheckResult:
    """
    (xi - gamma)^s K1_c phi against c^(-s) K1_c (xi - c gamma)^s phi.

    Raises:
        ConstraintViolation: If the argument conditions on c and gamma fail.
    """
    check_pole_constraints(c, gamma)
    phi = _phi_or_default(phi, half_width, n)
    kernel = make_power_pole(c, 1)
    count = _compare_count(phi)

    lhs = _lift_minus(kernel_image(kernel, phi), s, gamma, count)
    chi = _plus_potentials(phi, [(s, -c * gamma)])
    rhs = c_power(c, s) * apply_halfline_kernel(kernel, chi, count)

    result = IdentityCheckResult(
        identity=Identity.COMMUTATION,
        rel_residual=_relative(lhs, rhs),
        grid=phi.metadata(),
        parameters={"c": complex_pair(c), "s": s, "gamma": complex_pair(gamma)},
    )
    logger.info(
        "identity_check_completed",
        identity=result.identity.value,
        rel_residual=result.rel_residual,
        n=phi.n,
    )
    return result


def check_lifting(
    kind: LiftingKind,
    c: complex,
    s: float,
    gamma: complex = DEFAULT_GAMMA,
    phi: Optional[GridFunction] = None,
    half_width: float = 40.0,
    n: int = 2**14,
) -> IdentityCheckResult:
    """
    Lifted K1_c or K2_c against its symbol-calculus form.

    K1 compares (xi - gamma)^s K1_c (xi + gamma)^(-s) phi with
    c^(-s) K1_c W_g phi, g = (xi - c gamma)^s (xi + gamma)^(-s).
    K2 compares (xi - gamma)^s K2_c (xi + gamma)^(-s) phi with
    c^(-s) (K2_c - s c^-1 K1_c) W_g phi plus the remainder
    -s gamma c^(-s) K1_c W_r phi, r = (xi - c gamma)^(s-1) (xi + gamma)^(-s),
    whose relative size is reported as ``remainder_norm``.

    Raises:
        ConstraintViolation: If the argument conditions on c and gamma fail.
    """
    kind = LiftingKind(kind)
    check_pole_constraints(c, gamma)
    phi = _phi_or_default(phi, half_width, n)
    count = _compare_count(phi)
    k1 = make_power_pole(c, 1)
    shifted = -c * gamma
    scale = c_power(c, s)

    chi0 = _plus_potentials(phi, [(-s, gamma)])
    lifted_input = _plus_potentials(phi, [(s, shifted), (-s, gamma)])
    remainder_norm = None

    if kind is LiftingKind.K1:
        image = kernel_image(k1, chi0)
        rhs = scale * apply_halfline_kernel(k1, lifted_input, count)
        identity = Identity.LIFTING_K1
    else:
        k2 = make_power_pole(c, 2)
        image = kernel_image(k2, chi0)
        main = scale * (
            apply_halfline_kernel(k2, lifted_input, count)
            - s / c * apply_halfline_kernel(k1, lifted_input, count)
        )
        remainder_input = _plus_potentials(phi, [(s - 1.0, shifted), (-s, gamma)])
        remainder = (
            -s * gamma * scale * apply_halfline_kernel(k1, remainder_input, count)
        )
        rhs = main + remainder
        identity = Identity.LIFTING_K2

    lhs = _lift_minus(image, s, gamma, count)
    if kind is LiftingKind.K2:
        remainder_norm = _relative(lhs, lhs - remainder)

    result = IdentityCheckResult(
        identity=identity,
        rel_residual=_relative(lhs, rhs),
        grid=phi.metadata(),
        parameters={
            "kind": kind.value,
            "c": complex_pair(c),
            "s": s,
            "gamma": complex_pair(gamma),
        },
        remainder_norm=remainder_norm,
    )
    logger.info(
        "identity_check_completed",
        identity=identity.value,
        rel_residual=result.rel_residual,
        remainder_norm=remainder_norm,
        n=phi.n,
    )
    return result


def check_mellin_vs_zbeta(
    kernel: MeromorphicKernel,
    beta: float = 0.5,
    f: Optional[GridFunction] = None,
    log_min: float = -20.0,
    log_max: float = 20.0,
    n: int = 2**14,
) -> IdentityCheckResult:
    """Direct Mellin quadrature against Z_beta^-1 W Z_beta."""
    if f is None:
        f = log_axis_test_function(log_min, log_max, n)
    direct = apply_mellin_kernel(f, kernel)
    via_symbol = mellin_convolve_symbol(kernel, f, beta)
    result = IdentityCheckResult(
        identity=Identity.MELLIN_VS_ZBETA,
        rel_residual=weighted_difference(direct, via_symbol, beta),
        grid=f.metadata(),
        parameters={
            "beta": beta,
            "poles": [complex_pair(term.c) for term in kernel.terms],
        },
    )
    logger.info(
        "identity_check_completed",
        identity=result.identity.value,
        rel_residual=result.rel_residual,
        n=f.n,
    )
    return result


def check_derivative_commutation(
    c: complex,
    phi: Optional[GridFunction] = None,
    half_width: float = 40.0,
    n: int = 2**14,
) -> IdentityCheckResult:
    """d/dt K1_c phi against c^-1 K1_c phi' for phi vanishing near 0."""
    c = complex(c)
    if c == 0 or is_positive_real(c):
        raise ConstraintViolation(f"arg c != 0 required, got c = {c}")
    phi = _phi_or_default(phi, half_width, n)
    kernel = make_power_pole(c, 1)
    count = _compare_count(phi)

    def derivative(xi: np.ndarray) -> np.ndarray:
        return -1j * xi

    lhs = _one_sided(kernel_image(kernel, phi), derivative, count)
    phi_prime = apply_symbol(phi, derivative)
    rhs = apply_halfline_kernel(kernel, phi_prime, count) / c

    result = IdentityCheckResult(
        identity=Identity.DERIVATIVE,
        rel_residual=_relative(lhs, rhs),
        grid=phi.metadata(),
        parameters={"c": complex_pair(c)},
    )
    logger.info(
        "identity_check_completed",
        identity=result.identity.value,
        rel_residual=result.rel_residual,
        n=phi.n,
    )
    return result


CASES = ("commutation", "lifting-k1", "lifting-k2", "zbeta", "derivative")


def case_check(
    case: str,
    c: complex,
    s: float,
    gamma: complex,
    half_width: float = 40.0,
    log_min: float = -20.0,
    log_max: float = 20.0,
    beta: float = 0.5,
) -> Tuple[Callable[..., IdentityCheckResult], Dict[str, Any]]:
    """
    Check function and keyword arguments of a verify-identities case.

    The returned callable still takes the grid size ``n`` as a keyword.

    Raises:
        ValueError: For an unknown case.
    """
    if case == "commutation":
        return check_commutation, {
            "c": c,
            "s": s,
            "gamma": gamma,
            "half_width": half_width,
        }
    if case in ("lifting-k1", "lifting-k2"):
        kind = LiftingKind.K1 if case == "lifting-k1" else LiftingKind.K2
        return check_lifting, {
            "kind": kind,
            "c": c,
            "s": s,
            "gamma": gamma,
            "half_width": half_width,
        }
    if case == "zbeta":
        return check_mellin_vs_zbeta, {
            "kernel": make_power_pole(c, 1),
            "beta": beta,
            "log_min": log_min,
            "log_max": log_max,
        }
    if case == "derivative":
        return check_derivative_commutation, {"c": c, "half_width": half_width}
    raise ValueError(f"unknown case {case!r}; expected one of {', '.join(CASES)}")


def run_case(
    case: str,
    c: complex,
    s: float,
    gamma: complex,
    n: int,
    half_width: float = 40.0,
    log_min: float = -20.0,
    log_max: float = 20.0,
    beta: float = 0.5,
) -> IdentityCheckResult:
    """
    Run a verify-identities case by name.

    Raises:
        ValueError: For an unknown case.
        ConstraintViolation: If the case's parameter conditions fail.
    """
    check, kwargs = case_check(case, c, s, gamma, half_width, log_min, log_max, beta)
    return check(n=n, **kwargs)


def refinement_study(
    check: Callable[..., IdentityCheckResult],
    n_values: Iterable[int],
    n_jobs: int = 1,
    **kwargs: Any,
) -> pd.DataFrame:
    """
    Run one identity check on several grid sizes.

    Args:
        check: Check function accepting ``n`` as a keyword.
        n_values: Grid sizes, usually n, 2n, 4n.
        n_jobs: joblib worker count.
        **kwargs: Remaining arguments of ``check``.

    Returns:
        DataFrame with columns n, rel_residual, remainder_norm and ratio,
        the residual reduction relative to the previous row.
    """
    n_values = list(n_values)
    results = Parallel(n_jobs=n_jobs)(
        delayed(check)(n=n, **kwargs) for n in n_values
    )
    frame = pd.DataFrame(
        {
            "n": n_values,
            "rel_residual": [r.rel_residual for r in results],
            "remainder_norm": [r.remainder_norm for r in results],
        }
    )
    frame["ratio"] = frame["rel_residual"].shift(1) / frame["rel_residual"]
    logger.info(
        "refinement_study_completed",
        sizes=n_values,
        residuals=frame["rel_residual"].tolist(),
    )
    return frame
