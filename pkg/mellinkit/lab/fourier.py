# mellinkit/lab/fourier.py
"""
FFT realizations of Fourier multipliers and Bessel potentials.

The transform convention is F phi(xi) = int exp(i xi x) phi(x) dx, so
W_a multiplies the numpy spectrum at angular frequency omega by a(-omega),
and xi acts as i d/dx.
"""
from enum import Enum
from typing import Callable

import numpy as np
import structlog

from mellinkit.calculus.multipliers import Multiplier
from mellinkit.core.errors import ConstraintViolation, WindowLeakage
from mellinkit.lab.grid import Axis, GridFunction

logger = structlog.get_logger()

# Samples at the window ends must stay below this fraction of the peak
WINDOW_DECAY = 1e-8

SymbolFunc = Callable[[np.ndarray], np.ndarray]


class BesselSign(str, Enum):
    """Which Bessel potential: (xi - gamma)^s or (xi + gamma)^s."""

    MINUS_GAMMA = "minus_gamma"
    PLUS_GAMMA = "plus_gamma"


def angular_frequencies(n: int, h: float) -> np.ndarray:
    """numpy FFT frequencies scaled to angular frequency."""
    return 2.0 * np.pi * np.fft.fftfreq(n, d=h)


def check_window_decay(f: GridFunction) -> None:
    """
    Raises:
        WindowLeakage: If either end sample exceeds WINDOW_DECAY * max |f|.
    """
    peak = float(np.max(np.abs(f.samples)))
    if peak == 0.0:
        return
    ends = max(abs(f.samples[0]), abs(f.samples[-1]))
    if ends > WINDOW_DECAY * peak:
        raise WindowLeakage(
            f"function has not decayed at the window ends: {ends:.3e} vs peak "
            f"{peak:.3e}; widen the window or taper the input"
        )


def apply_symbol(
    f: GridFunction, symbol: SymbolFunc, check_decay: bool = True, pad: int = 1
) -> GridFunction:
    """
    Apply the multiplier xi -> symbol(xi) to a full-line grid function.

    The FFT realizes the periodized operator with period n h. Kernels with
    slow algebraic decay (the Hilbert kernel 1 / (pi x) among them) pick up
    an O(x / (n h)^2) error from the periodic images; ``pad`` zero-extends
    the samples to pad * n before transforming, which divides that error by
    pad^2.

    Args:
        f: Samples on a linear full-line window.
        symbol: Vectorized multiplier in the xi variable.
        check_decay: Enforce window decay before transforming.
        pad: Zero-padding factor, >= 1.

    Raises:
        ValueError: If f is not on the linear full-line axis or pad < 1.
        WindowLeakage: If f has not decayed at the window ends.
    """
    if f.axis is not Axis.LINEAR_FULLLINE:
        raise ValueError(f"Fourier multipliers act on full-line grids, got {f.axis}")
    if pad < 1:
        raise ValueError(f"pad must be >= 1, got {pad}")
    if check_decay:
        check_window_decay(f)
    size = f.n * int(pad)
    omega = angular_frequencies(size, f.h)
    spectrum = np.fft.fft(f.samples, n=size) * symbol(-omega)
    return f.with_samples(np.fft.ifft(spectrum)[: f.n])


def apply_fourier_multiplier(
    f: GridFunction, a: Multiplier, pad: int = 1
) -> GridFunction:
    """W_a f by FFT; a(0) is taken as the mean of its one-sided limits."""
    return apply_symbol(f, lambda xi: np.asarray(a(xi)), pad=pad)


def bessel_symbol(
    xi: np.ndarray, s: float, gamma: complex, sign: BesselSign
) -> np.ndarray:
    """(xi - gamma)^s or (xi + gamma)^s on the principal branch."""
    shifted = xi - gamma if sign is BesselSign.MINUS_GAMMA else xi + gamma
    return np.exp(s * np.log(shifted))


def require_upper_gamma(gamma: complex) -> None:
    if complex(gamma).imag <= 0.0:
        raise ConstraintViolation(f"Im gamma > 0 required, got gamma = {gamma}")


def apply_bessel_potential(
    f: GridFunction,
    s: float,
    gamma: complex,
    sign: BesselSign = BesselSign.MINUS_GAMMA,
    check_decay: bool = True,
) -> GridFunction:
    """
    Bessel potential of order s with parameter gamma, Im gamma > 0.

    ``minus_gamma`` has arg(xi - gamma) in (-pi, 0); ``plus_gamma`` has
    arg(xi + gamma) in (0, pi) and preserves support in the right half-line.

    Raises:
        ConstraintViolation: If Im gamma <= 0.
        WindowLeakage: If f has not decayed at the window ends.
    """
    require_upper_gamma(gamma)
    sign = BesselSign(sign)
    if s == 0.0:
        if check_decay:
            check_window_decay(f)
        return f
    return apply_symbol(
        f, lambda xi: bessel_symbol(xi, s, gamma, sign), check_decay=check_decay
    )


def bessel_product_symbol(factors) -> SymbolFunc:
    """Product of several (s, gamma, sign) Bessel symbols."""

    def symbol(xi: np.ndarray) -> np.ndarray:
        out = np.ones(xi.shape, dtype=complex)
        for s, gamma, sign in factors:
            if s != 0.0:
                out = out * bessel_symbol(xi, s, gamma, sign)
        return out

    return symbol
