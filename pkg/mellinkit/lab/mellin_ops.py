# mellinkit/lab/mellin_ops.py
"""
Mellin convolution operators on sampled functions.

On the log axis x = ln t the operator
    M phi(t) = int_0^inf K(t / tau) phi(tau) dtau / tau
is an ordinary convolution with k(u) = K(exp u). Two discretizations are
provided: direct quadrature of that convolution, and the conjugation by
Z_beta phi(x) = exp(beta x) phi(exp x) that turns M into the Fourier
multiplier given by the Mellin symbol.
"""
import numpy as np
import structlog
from scipy import signal

from mellinkit.core.errors import ConstraintViolation
from mellinkit.kernels.algebra import eval_kernel, require_admissible
from mellinkit.kernels.models import MeromorphicKernel
from mellinkit.lab.fourier import angular_frequencies
from mellinkit.lab.grid import Axis, GridFunction
from mellinkit.symbols.mellin import mellin_symbol

logger = structlog.get_logger()

# Zero padding factor of the symbol path; keeps the periodized kernel tail small
SYMBOL_PADDING = 4
# Rows per block in dense half-line quadrature
CHUNK_ROWS = 512


def _require_log_axis(f: GridFunction) -> None:
    if f.axis is not Axis.LOG_HALFLINE:
        raise ValueError(f"Mellin convolution acts on log-axis grids, got {f.axis}")


def _check_positive_poles(k: MeromorphicKernel) -> None:
    for term in k.terms:
        if term.on_positive_axis and abs(term.c - 1.0) > 1e-12:
            raise ConstraintViolation(
                f"direct quadrature supports positive poles at c = 1 only, "
                f"got c = {term.c.real:g}"
            )


def _difference_weights(k: MeromorphicKernel, n: int, h: float) -> np.ndarray:
    """
    Quadrature weights w_l, l = -(n-1)..(n-1), for sum_j w_(i-j) F_j.

    Kernels with a pole at t = 1 are singular at u = 0; their principal
    value is taken by symmetric pairing, using odd offsets only with
    doubled weight.
    """
    offsets = np.arange(-(n - 1), n)
    u = offsets * h
    weights = np.zeros(offsets.shape, dtype=complex)
    if k.has_positive_pole:
        odd = offsets % 2 != 0
        weights[odd] = 2.0 * h * eval_kernel(k, np.exp(u[odd]))
    else:
        weights[:] = h * eval_kernel(k, np.exp(u))
    return weights


def mellin_convolve_direct(k: MeromorphicKernel, f: GridFunction) -> GridFunction:
    """Mellin convolution by quadrature on the log grid."""
    _require_log_axis(f)
    if k.is_empty:
        return f.with_samples(np.zeros(f.n, dtype=complex))
    _check_positive_poles(k)
    weights = _difference_weights(k, f.n, f.h)
    full = signal.fftconvolve(f.samples, weights, mode="full")
    return f.with_samples(full[f.n - 1 : 2 * f.n - 1])


def mellin_convolve_symbol(
    k: MeromorphicKernel, f: GridFunction, beta: float = 0.5
) -> GridFunction:
    """
    Mellin convolution through Z_beta and the Mellin symbol.

    Args:
        k: Admissible kernel.
        f: Samples of phi(exp x) on the log axis.
        beta: Real part of the Mellin line, in (0, 1).
    """
    _require_log_axis(f)
    if k.is_empty:
        return f.with_samples(np.zeros(f.n, dtype=complex))
    x = f.nodes
    size = SYMBOL_PADDING * f.n
    padded = np.zeros(size, dtype=complex)
    padded[: f.n] = np.exp(beta * x) * f.samples
    omega = angular_frequencies(size, f.h)
    spectrum = np.fft.fft(padded) * np.asarray(mellin_symbol(k, beta, omega))
    result = np.fft.ifft(spectrum)[: f.n]
    return f.with_samples(np.exp(-beta * x) * result)


def apply_mellin_kernel(f: GridFunction, k: MeromorphicKernel) -> GridFunction:
    """
    Mellin convolution of f with kernel k by direct log-grid quadrature.

    ``mellin_convolve_symbol`` gives the same operator through Z_beta and the
    Mellin symbol; ``check_mellin_vs_zbeta`` compares the two.

    Args:
        f: Samples on the log axis.
        k: Admissible kernel.

    Raises:
        InvalidPole: If k is not admissible.
        ConstraintViolation: For positive poles other than c = 1.
    """
    require_admissible(k)
    direct = mellin_convolve_direct(k, f)
    logger.debug("mellin_kernel_applied", terms=len(k), n=f.n)
    return direct


def weighted_difference(a: GridFunction, b: GridFunction, beta: float) -> float:
    """||Z_beta (a - b)|| / ||Z_beta a|| on the log grid."""
    weight = np.exp(beta * a.nodes)
    num = np.linalg.norm(weight * (a.samples - b.samples))
    den = np.linalg.norm(weight * a.samples)
    return float(num / den) if den > 0.0 else float(num)


def halfline_kernel_at(
    k: MeromorphicKernel, f: GridFunction, t: np.ndarray
) -> np.ndarray:
    """
    Mellin convolution of the t > 0 part of a full-line grid function at t.

    Uses int_0^inf sum_j d_j tau^(m_j - 1) phi(tau) / (t - c_j tau)^m_j dtau
    by the trapezoidal rule on the positive half of the grid. Points t < 0
    are allowed when no pole is real; the integral there is the analytic
    continuation of the half-line image across t = 0.

    Args:
        k: Kernel without positive-real poles.
        f: Full-line samples on a window symmetric about 0.
        t: Real evaluation points.

    Returns:
        Complex array shaped like ``t``.

    Raises:
        ConstraintViolation: If k has a positive-real pole, or t < 0 is
            requested for a kernel with a negative-real pole.
    """
    if f.axis is not Axis.LINEAR_FULLLINE:
        raise ValueError(f"expected a full-line grid, got {f.axis}")
    for term in k.terms:
        if term.on_positive_axis:
            raise ConstraintViolation(
                f"arg c != 0 required for half-line quadrature, got c = {term.c}"
            )
    t = np.asarray(t, dtype=float)
    if np.any(t < 0.0) and any(term.c.imag == 0.0 for term in k.terms):
        raise ConstraintViolation(
            "t < 0 needs non-real poles; the image of a real pole is singular there"
        )
    if abs(f.t_min + f.t_max) > 1e-12 * f.t_max:
        raise ValueError("half-line quadrature needs a window symmetric about 0")
    zero = f.n // 2
    h = f.h
    # tau = 0 carries phi(0) = 0 for admissible test functions
    tau = h * np.arange(1, f.n - zero)
    phi = f.samples[zero + 1 :]
    flat = t.ravel()
    out = np.zeros(flat.size, dtype=complex)
    for start in range(0, flat.size, CHUNK_ROWS):
        rows = flat[start : start + CHUNK_ROWS, None]
        block = np.zeros((rows.shape[0], tau.size), dtype=complex)
        for term in k.terms:
            block += term.d * tau ** (term.m - 1) / (rows - term.c * tau) ** term.m
        out[start : start + CHUNK_ROWS] = h * (block @ phi)
    return out.reshape(t.shape)


def apply_halfline_kernel(
    k: MeromorphicKernel, f: GridFunction, count: int
) -> np.ndarray:
    """
    Half-line Mellin convolution at t_i = i h, i = 0..count-1.

    Raises:
        ConstraintViolation: If k has a positive-real pole.
    """
    return halfline_kernel_at(k, f, f.h * np.arange(count))

def log_grid_norm(f: GridFunction, p: float = 2.0, gamma_weight: float = 0.0) -> float:
    """||phi|| in L_p(R+, t^gamma dt) from samples on the log axis."""
    _require_log_axis(f)
    weight = np.exp((gamma_weight + 1.0) * f.nodes)
    return float((f.h * np.sum(np.abs(f.samples) ** p * weight)) ** (1.0 / p))

