# mellinkit/lab/norms.py
"""
Operator norm estimates for Mellin convolutions.
"""
import math

import numpy as np
import structlog
from scipy import optimize

from mellinkit.core.errors import ConstraintViolation
from mellinkit.kernels.algebra import require_admissible
from mellinkit.kernels.models import MeromorphicKernel, SpaceParams
from mellinkit.lab.grid import log_axis_test_function
from mellinkit.lab.mellin_ops import log_grid_norm, mellin_convolve_direct
from mellinkit.symbols.mellin import mellin_symbol, mellin_symbol_limits

logger = structlog.get_logger()

XI_SCAN = np.linspace(-50.0, 50.0, 4001)


def symbol_supremum(k: MeromorphicKernel, beta: float) -> float:
    """sup over xi of |Mellin symbol|, scanned then polished locally."""
    values = np.abs(np.asarray(mellin_symbol(k, beta, XI_SCAN)))
    best = int(np.argmax(values))
    supremum = float(values[best])

    lo = XI_SCAN[max(best - 1, 0)]
    hi = XI_SCAN[min(best + 1, XI_SCAN.size - 1)]
    if hi > lo:
        polished = optimize.minimize_scalar(
            lambda xi: -abs(complex(mellin_symbol(k, beta, xi))),
            bounds=(lo, hi),
            method="bounded",
            options={"xatol": 1e-10},
        )
        supremum = max(supremum, float(-polished.fun))

    try:
        limits = mellin_symbol_limits(k, beta)
    except ConstraintViolation:
        limits = ()
    for limit in limits:
        supremum = max(supremum, abs(limit))
    return supremum


def estimate_operator_norm(
    k: MeromorphicKernel,
    sp: SpaceParams,
    trials: int = 16,
    seed: int = 0,
    n: int = 2**12,
    log_half_width: float = 20.0,
) -> float:
    """
    Norm of the Mellin convolution with kernel k on L_p(R+, t^gamma).

    For p = 2 the norm equals the supremum of the Mellin symbol on the
    line Re w = beta. Otherwise the largest Rayleigh quotient
    ||K phi|| / ||phi|| over seeded log-Gaussian trial functions is
    returned, which is a lower bound.

    Args:
        k: Admissible kernel.
        sp: Space parameters.
        trials: Number of trial functions when p != 2.
        seed: Seed of the trial parameters.
        n: Log-grid size for the trials.
        log_half_width: Half-width of the log window for the trials.

    Returns:
        Norm estimate; 0 for the empty kernel.
    """
    require_admissible(k)
    if k.is_empty:
        return 0.0
    if math.isclose(sp.p, 2.0):
        estimate = symbol_supremum(k, sp.beta)
        logger.debug("operator_norm_estimated", method="symbol", estimate=estimate)
        return estimate

    rng = np.random.default_rng(seed)
    estimate = 0.0
    for _ in range(trials):
        mu = rng.uniform(-2.0, 2.0)
        sigma = rng.uniform(0.5, 2.0)
        phi = log_axis_test_function(-log_half_width, log_half_width, n, mu, sigma)
        image = mellin_convolve_direct(k, phi)
        ratio = log_grid_norm(image, sp.p, sp.gamma_weight) / log_grid_norm(
            phi, sp.p, sp.gamma_weight
        )
        estimate = max(estimate, ratio)
    logger.debug(
        "operator_norm_estimated", method="rayleigh", trials=trials, estimate=estimate
    )
    return estimate
