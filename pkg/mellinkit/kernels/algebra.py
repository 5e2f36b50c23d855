# mellinkit/kernels/algebra.py
"""
Kernel algebra: admissibility, evaluation, named constructors and bounds.
"""
import cmath
import math
from typing import Literal, Union

import numpy as np
import structlog
from scipy.special import binom

from mellinkit.core.errors import (
    IndexRange,
    InvalidAngle,
    InvalidPole,
    PoleHit,
    RealPolePresent,
)
from mellinkit.kernels.models import (
    AdmissibilityReport,
    MeromorphicKernel,
    PoleTerm,
    SpaceParams,
)

logger = structlog.get_logger()

ClassicalName = Literal["N_alpha", "N_alpha_star", "M_alpha"]

# Angles closer than this to 0 or +-pi collapse the two poles onto the axis
ANGLE_EPS = 1e-14


def validate_admissible(k: MeromorphicKernel) -> AdmissibilityReport:
    """
    Check a kernel against the admissibility conditions.

    A finite pole list automatically satisfies the uniform bound on the
    real parts and the closure conditions, so only two things can fail:
    a pole at the origin and a positive-real pole of multiplicity > 1.

    Args:
        k: Kernel to inspect.

    Returns:
        AdmissibilityReport; never raises.
    """
    violations = []
    real_axis_poles = []
    for index, term in enumerate(k.terms):
        if term.c == 0:
            violations.append(f"term {index}: pole at c = 0 is not allowed")
            continue
        if term.on_positive_axis:
            real_axis_poles.append(index)
            if term.m > 1:
                violations.append(
                    f"term {index}: positive-real pole c = {term.c.real:g} "
                    f"has multiplicity {term.m}, must be 1"
                )
    sup_re = max((term.c.real for term in k.terms), default=float("-inf"))
    return AdmissibilityReport(
        admissible=not violations,
        real_axis_poles=real_axis_poles,
        violations=violations,
        sup_re=sup_re,
    )


def require_admissible(k: MeromorphicKernel) -> None:
    """Raise InvalidPole unless ``k`` is admissible."""
    report = validate_admissible(k)
    if not report.admissible:
        raise InvalidPole("; ".join(report.violations))


def eval_kernel(
    k: MeromorphicKernel,
    t: Union[float, np.ndarray],
    eps_pole: float = 1e-12,
) -> Union[complex, np.ndarray]:
    """
    Evaluate K(t) = sum_j d_j (t - c_j)^(-m_j) for t > 0.

    Args:
        k: Kernel.
        t: Positive scalar or array of positive points.
        eps_pole: Distance to a real pole that counts as a hit.

    Returns:
        Complex scalar for scalar input, complex array otherwise.

    Raises:
        PoleHit: If t is within eps_pole of a real pole.
        InvalidPole: If the kernel has a pole at the origin.
    """
    scalar = np.ndim(t) == 0
    tt = np.atleast_1d(np.asarray(t, dtype=float))
    if np.any(tt <= 0.0):
        raise ValueError("kernel evaluation needs t > 0")

    total = np.zeros(tt.shape, dtype=complex)
    for term in k.terms:
        if term.c == 0:
            raise InvalidPole("pole at c = 0 is not allowed")
        delta = tt - term.c
        if np.any(np.abs(delta) < eps_pole):
            raise PoleHit(f"t hits the pole c = {term.c} (eps_pole={eps_pole:g})")
        total += term.d * delta ** (-term.m)
    return complex(total[0]) if scalar else total


def make_power_pole(c: complex, m: int) -> MeromorphicKernel:
    """
    Kernel 1 / (pi (t - c)^m) of the operator K^m_c.

    Raises:
        InvalidPole: If c = 0, m < 1, or c > 0 with m > 1.
    """
    c = complex(c)
    if c == 0:
        raise InvalidPole("pole at c = 0 is not allowed")
    if m < 1:
        raise InvalidPole(f"multiplicity must be >= 1, got {m}")
    term = PoleTerm(c=c, m=m, d=1.0 / math.pi)
    if term.on_positive_axis and m > 1:
        raise InvalidPole(
            f"positive-real pole c = {c.real:g} must be simple, got m = {m}"
        )
    return MeromorphicKernel(terms=(term,))


def make_classical(name: ClassicalName, alpha: float) -> MeromorphicKernel:
    """
    Partial-fraction form of the classical angle kernels.

    ``N_alpha``: (sin a / pi) t / (t^2 + 1 - 2 t cos a)
    ``N_alpha_star``: (sin a / pi) / (t^2 + 1 - 2 t cos a)
    ``M_alpha``: (1 / 2 pi) (cos a - t) / (t^2 + 1 - 2 t cos a)

    Args:
        name: Kernel family.
        alpha: Angle in (-pi, pi), nonzero.

    Returns:
        Two-term kernel with simple poles at exp(+-i alpha).

    Raises:
        InvalidAngle: If alpha is 0, +-pi or outside (-pi, pi).
    """
    if not (-math.pi < alpha < math.pi) or abs(alpha) < ANGLE_EPS:
        raise InvalidAngle(f"alpha must lie in (-pi, pi) without 0, got {alpha}")
    if math.pi - abs(alpha) < ANGLE_EPS:
        raise InvalidAngle(f"alpha = {alpha} is numerically +-pi")

    upper = cmath.exp(1j * alpha)
    lower = cmath.exp(-1j * alpha)
    if name == "N_alpha":
        d_upper = upper / (2j * math.pi)
        d_lower = -lower / (2j * math.pi)
    elif name == "N_alpha_star":
        d_upper = 1.0 / (2j * math.pi)
        d_lower = -1.0 / (2j * math.pi)
    elif name == "M_alpha":
        d_upper = d_lower = -1.0 / (4.0 * math.pi)
    else:
        raise ValueError(f"unknown classical kernel {name!r}")

    return MeromorphicKernel.from_terms((upper, 1, d_upper), (lower, 1, d_lower))


def make_n_mk(m: int, k: int) -> MeromorphicKernel:
    """
    Kernel (1 / pi i) t^k (t + 1)^(-(m+1)) as pole terms at c = -1.

    Uses t^k = ((t + 1) - 1)^k; terms come out in increasing multiplicity.

    Raises:
        IndexRange: Unless 0 <= k <= m.
    """
    if m < 0 or k < 0 or k > m:
        raise IndexRange(f"need 0 <= k <= m, got m={m}, k={k}")
    scale = 1.0 / (1j * math.pi)
    terms = []
    for j in range(k + 1):
        coefficient = math.comb(k, j) * (-1) ** j * scale
        if coefficient != 0:
            terms.append((-1.0, m + 1 - k + j, coefficient))
    return MeromorphicKernel.from_terms(*terms)


def norm_bound(k: MeromorphicKernel, sp: SpaceParams) -> float:
    """
    Upper bound for the L_p(R+, t^gamma) norm of the Mellin convolution.

    B = (pi / sin pi b) sum_j 2^e_j |d_j| |binom(b - 1, m_j - 1)| |c_j|^(b - m_j)
    with e_j = m_j / 2 for poles in the left half-plane and e_j = m_j
    otherwise.

    Args:
        k: Admissible kernel without positive-real poles.
        sp: Space parameters; only beta is used.

    Returns:
        The bound B (0 for the empty kernel).

    Raises:
        InvalidPole: If the kernel is not admissible.
        RealPolePresent: If the kernel has a positive-real pole.
    """
    require_admissible(k)
    if k.has_positive_pole:
        raise RealPolePresent(
            "norm_bound excludes positive-real (Cauchy type) poles"
        )
    beta = sp.beta
    total = 0.0
    for term in k.terms:
        exponent = term.m / 2.0 if term.c.real < 0 else float(term.m)
        total += (
            2.0**exponent
            * abs(term.d)
            * abs(binom(beta - 1.0, term.m - 1))
            * abs(term.c) ** (beta - term.m)
        )
    return math.pi / math.sin(math.pi * beta) * total


def taylor_coefficients_at_zero(k: MeromorphicKernel, order: int) -> np.ndarray:
    """Taylor coefficients b_0 .. b_{order-1} of K at t = 0."""
    coefficients = np.zeros(order, dtype=complex)
    for term in k.terms:
        base = term.d * (-term.c) ** (-term.m)
        for j in range(order):
            coefficients[j] += base * math.comb(term.m + j - 1, j) * term.c ** (-j)
    return coefficients


def check_classical_condition(k: MeromorphicKernel, p: float, m: int) -> bool:
    """
    Decide finiteness of the weighted integrals of |K| from pole data.

    Near 0 the integrand is t^(1/p - m - 1) |K(t)|, integrable iff the
    first nonvanishing Taylor coefficient of K has order J > m - 1/p,
    i.e. J >= m. Near infinity |K(t)| = O(t^-1), which always suffices.

    Args:
        k: Kernel.
        p: Exponent in (1, inf).
        m: Order of the condition (nonnegative).

    Returns:
        True iff both integrals are finite.

    Raises:
        RealPolePresent: If the kernel has a positive-real pole.
    """
    if not 1.0 < p < math.inf:
        raise ValueError(f"p must lie in (1, inf), got {p}")
    if m < 0:
        raise ValueError(f"m must be nonnegative, got {m}")
    if k.has_positive_pole:
        raise RealPolePresent("the integral diverges at a positive-real pole")
    if k.is_empty or m == 0:
        return True

    coefficients = taylor_coefficients_at_zero(k, m)
    scales = np.zeros(m)
    for term in k.terms:
        for j in range(m):
            scales[j] += (
                abs(term.d)
                * abs(term.c) ** (-term.m - j)
                * math.comb(term.m + j - 1, j)
            )
    vanishing = np.abs(coefficients) <= 1e-12 * np.maximum(scales, 1e-300)
    logger.debug(
        "classical_condition_checked",
        p=p,
        m=m,
        vanishing=vanishing.tolist(),
    )
    return bool(np.all(vanishing))
