# mellinkit/symbols/mellin.py
"""
Mellin symbols of meromorphic kernels.

Closed forms are evaluated per pole; an independent quadrature oracle
integrates the Mellin transform directly on the log axis. Both use the
convention M psi(xi) = int_0^inf t^(beta - i xi) psi(t) dt / t.
"""
import cmath
import math
from dataclasses import dataclass
from typing import List, Tuple, Union

import numpy as np
import structlog
from scipy import integrate

from mellinkit.core.errors import (
    BranchViolation,
    ConstraintViolation,
    InvalidPole,
    QuadratureFailure,
)
from mellinkit.kernels.algebra import require_admissible
from mellinkit.kernels.models import MeromorphicKernel, is_positive_real
from mellinkit.symbols.trig import cot_pi, log_inv_sin_pi

logger = structlog.get_logger()

ArrayLike = Union[float, np.ndarray]

# Tail mass left outside the oracle window, per side
ORACLE_TAIL = 1e-13
# Half-width (in x = ln t) of the principal-value pairing interval
PV_HALF_WIDTH = 0.5


@dataclass(frozen=True)
class SymbolValue:
    """A sampled symbol value A_beta(xi)."""

    value: complex
    xi: float
    beta: float

    def __post_init__(self) -> None:
        if not cmath.isfinite(self.value):
            raise ValueError(
                f"symbol is not finite at beta={self.beta}, xi={self.xi}"
            )


def _check_beta(beta: float) -> None:
    if not 0.0 < beta < 1.0:
        raise ValueError(f"beta must lie in (0, 1), got {beta}")


def _unwrap(value: np.ndarray) -> Union[complex, np.ndarray]:
    return complex(value) if np.ndim(value) == 0 else value


def mellin_symbol_pole(
    c: complex, m: int, beta: float, xi: ArrayLike
) -> Union[complex, np.ndarray]:
    """
    Mellin symbol of the normalized kernel 1 / (pi (t - c)^m).

    Off the positive axis the value is
    prod_{k<m} (k - w) / k * (-c)^(w - m) / sin(pi w), w = beta - i xi,
    with the principal branch of log(-c). For a simple positive pole the
    principal value transform is -c^(w - 1) cot(pi w).

    Args:
        c: Pole location.
        m: Multiplicity.
        beta: Real part of the Mellin variable, in (0, 1).
        xi: Scalar or array of frequencies.

    Returns:
        Complex scalar or array matching ``xi``.

    Raises:
        InvalidPole: If c = 0.
        BranchViolation: If c is positive-real and m > 1.
    """
    _check_beta(beta)
    c = complex(c)
    if c == 0:
        raise InvalidPole("pole at c = 0 is not allowed")
    xi_arr = np.asarray(xi, dtype=float)
    w = beta - 1j * xi_arr

    if is_positive_real(c):
        if m != 1:
            raise BranchViolation(
                f"(-c)^w is on its branch cut for c = {c}; "
                "positive-real poles must be simple"
            )
        power = np.exp((w - 1.0) * math.log(c.real))
        return _unwrap(-power * cot_pi(beta, xi_arr))

    log_minus_c = np.log(-c)
    if abs(log_minus_c.imag) > math.pi - 1e-12:
        raise BranchViolation(f"arg(-c) = +-pi for c = {c}")

    prefactor = np.ones_like(w)
    for k in range(1, m):
        prefactor = prefactor * (k - w) / k
    exponent = (w - m) * log_minus_c + log_inv_sin_pi(beta, xi_arr)
    value = prefactor * np.exp(exponent)
    return _unwrap(value)


def mellin_symbol(
    k: MeromorphicKernel, beta: float, xi: ArrayLike
) -> Union[complex, np.ndarray]:
    """
    Mellin symbol of the raw kernel sum_j d_j (t - c_j)^(-m_j).

    Raises:
        InvalidPole: If the kernel is not admissible.
    """
    require_admissible(k)
    _check_beta(beta)
    xi_arr = np.asarray(xi, dtype=float)
    total = np.zeros(xi_arr.shape, dtype=complex)
    for term in k.terms:
        total = total + math.pi * term.d * mellin_symbol_pole(
            term.c, term.m, beta, xi_arr
        )
    return _unwrap(total)


def evaluate_symbol(k: MeromorphicKernel, beta: float, xi: float) -> SymbolValue:
    """Scalar Mellin symbol wrapped with its evaluation point."""
    return SymbolValue(value=complex(mellin_symbol(k, beta, xi)), xi=xi, beta=beta)


def mellin_symbol_limits(
    k: MeromorphicKernel, beta: float
) -> Tuple[complex, complex]:
    """
    Limits of the Mellin symbol at xi -> -inf and xi -> +inf.

    Off-axis poles contribute 0. A simple pole at c = 1 contributes
    +-i pi d, from cot -> +-i. Any other positive-real pole makes the
    symbol oscillate at infinity, so it has no limit.

    Returns:
        ``(value at -inf, value at +inf)``.

    Raises:
        ConstraintViolation: For positive-real poles other than c = 1.
    """
    require_admissible(k)
    minus_inf = 0j
    plus_inf = 0j
    for term in k.terms:
        if not term.on_positive_axis:
            continue
        if abs(term.c - 1.0) > 1e-12:
            raise ConstraintViolation(
                f"symbol of a pole at c = {term.c.real:g} oscillates at "
                "infinity; "
                "only c = 1 is allowed on the positive axis"
            )
        minus_inf += math.pi * term.d * 1j
        plus_inf += -math.pi * term.d * 1j
    return minus_inf, plus_inf


def full_symbol_A_beta(
    c0: complex,
    c1: complex,
    k: MeromorphicKernel,
    beta: float,
    xi: ArrayLike,
) -> Union[complex, np.ndarray]:
    """c0 - i c1 cot(pi (beta - i xi)) + Mellin symbol of k."""
    _check_beta(beta)
    xi_arr = np.asarray(xi, dtype=float)
    value = c0 - 1j * c1 * cot_pi(beta, xi_arr) + mellin_symbol(k, beta, xi_arr)
    return _unwrap(np.asarray(value))


# --- Quadrature oracle ---


def _oracle_window(k: MeromorphicKernel, beta: float) -> Tuple[float, float]:
    """Window [-x_left, x_right] in x = ln t leaving < ORACLE_TAIL outside."""
    moduli = [abs(term.c) for term in k.terms]
    near_zero = sum(abs(t.d) * (2.0 / abs(t.c)) ** t.m for t in k.terms)
    x_left = max(
        math.log(2.0 / min(moduli)),
        math.log(max(near_zero, 1e-300) / (beta * ORACLE_TAIL)) / beta,
        1.0,
    )
    m_min = min(term.m for term in k.terms)
    decay = m_min - beta
    far = sum(abs(t.d) * 2.0**t.m for t in k.terms)
    x_right = max(
        math.log(2.0 * max(moduli)),
        math.log(max(far, 1e-300) / (decay * ORACLE_TAIL)) / decay,
        1.0,
    )
    return x_left, x_right


def _log_integrand(k: MeromorphicKernel, beta: float):
    """F(x) = exp(beta x) K(exp x), accurate near positive poles."""
    positive = [
        (term, math.log(term.c.real)) for term in k.terms if term.on_positive_axis
    ]
    regular = [term for term in k.terms if not term.on_positive_axis]

    def f(x: float) -> complex:
        t = math.exp(x)
        total = 0j
        for term in regular:
            total += term.d * (t - term.c) ** (-term.m)
        for term, x0 in positive:
            # t - c = c (e^(x - x0) - 1)
            total += term.d / (term.c.real * math.expm1(x - x0))
        return math.exp(beta * x) * total

    return f


def _oscillatory(
    f, a: float, b: float, xi: float, limit: int
) -> Tuple[complex, float]:
    """int_a^b f(x) exp(-i xi x) dx for complex f, with an error estimate."""

    def real(x: float) -> float:
        return f(x).real

    def imag(x: float) -> float:
        return f(x).imag

    opts = dict(epsabs=1e-13, epsrel=1e-11, limit=limit)
    if xi == 0.0:
        re, e1 = integrate.quad(real, a, b, **opts)
        im, e2 = integrate.quad(imag, a, b, **opts)
        return complex(re, im), e1 + e2

    omega = abs(xi)
    sign = 1.0 if xi > 0 else -1.0
    rc, e1 = integrate.quad(real, a, b, weight="cos", wvar=omega, **opts)
    rs, e2 = integrate.quad(real, a, b, weight="sin", wvar=omega, **opts)
    ic, e3 = integrate.quad(imag, a, b, weight="cos", wvar=omega, **opts)
    is_, e4 = integrate.quad(imag, a, b, weight="sin", wvar=omega, **opts)
    rs, is_ = sign * rs, sign * is_
    # (Re F + i Im F)(cos - i sin)
    return complex(rc + is_, ic - rs), e1 + e2 + e3 + e4


def _principal_value(
    f, x0: float, delta: float, xi: float, limit: int
) -> Tuple[complex, float]:
    """PV int_{x0-delta}^{x0+delta} f(x) exp(-i xi x) dx by symmetric pairing."""

    def paired(u: float) -> complex:
        right = f(x0 + u) * cmath.exp(-1j * xi * (x0 + u))
        left = f(x0 - u) * cmath.exp(-1j * xi * (x0 - u))
        return right + left

    opts = dict(epsabs=1e-13, epsrel=1e-11, limit=limit)
    re, e1 = integrate.quad(lambda u: paired(u).real, 0.0, delta, **opts)
    im, e2 = integrate.quad(lambda u: paired(u).imag, 0.0, delta, **opts)
    return complex(re, im), e1 + e2


def mellin_symbol_oracle(
    k: MeromorphicKernel,
    beta: float,
    xi: float,
    max_error: float = 1e-9,
    limit: int = 400,
) -> complex:
    """
    Mellin transform of the raw kernel by adaptive quadrature.

    Substitutes t = e^x and integrates exp(beta x) K(e^x) exp(-i xi x)
    over a window whose analytic tail bound is below 1e-13 on each side.
    The window is split at 0 and at ln|c_j|. Positive-real poles are
    integrated as principal values by pairing x0 +- u, x0 = ln c.

    Args:
        k: Admissible kernel.
        beta: Real part of the Mellin variable, in (0, 1).
        xi: Frequency.
        max_error: Largest accepted summed error estimate.
        limit: Subinterval limit passed to QUADPACK.

    Returns:
        The transform value.

    Raises:
        InvalidPole: If the kernel is not admissible.
        QuadratureFailure: If the summed error estimate exceeds max_error.
    """
    require_admissible(k)
    _check_beta(beta)
    if k.is_empty:
        return 0j

    x_left, x_right = _oracle_window(k, beta)
    f = _log_integrand(k, beta)

    pv_centres = sorted(
        {math.log(term.c.real) for term in k.terms if term.on_positive_axis}
    )
    cuts = {-x_left, x_right, 0.0}
    cuts.update(
        math.log(abs(term.c))
        for term in k.terms
        if -x_left < math.log(abs(term.c)) < x_right
    )

    excluded: List[Tuple[float, float]] = []
    for x0 in pv_centres:
        others = [x for x in pv_centres if x != x0]
        gap = min((abs(x - x0) for x in others), default=2 * PV_HALF_WIDTH)
        delta = min(PV_HALF_WIDTH, gap / 2.0)
        excluded.append((x0 - delta, x0 + delta))
        cuts.update((x0 - delta, x0 + delta))
        cuts.discard(x0)

    edges = sorted(x for x in cuts if -x_left <= x <= x_right)
    total = 0j
    error = 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        if b - a <= 0.0:
            continue
        if any(lo <= a and b <= hi for lo, hi in excluded):
            continue
        value, err = _oscillatory(f, a, b, xi, limit)
        total += value
        error += err
    for lo, hi in excluded:
        centre, half = (lo + hi) / 2.0, (hi - lo) / 2.0
        value, err = _principal_value(f, centre, half, xi, limit)
        total += value
        error += err

    logger.debug(
        "mellin_oracle_evaluated",
        beta=beta,
        xi=xi,
        window=(-x_left, x_right),
        pieces=len(edges) - 1,
        error=error,
    )
    if error > max_error:
        raise QuadratureFailure(
            f"oracle error estimate {error:.3e} exceeds {max_error:.1e} "
            f"at beta={beta}, xi={xi}"
        )
    return total
