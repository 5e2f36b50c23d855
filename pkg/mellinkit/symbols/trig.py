# mellinkit/symbols/trig.py
"""
Overflow-free cot and 1/sin of pi (beta - i xi).

For large |xi| both sin and cos grow like exp(pi |xi|) / 2. Writing them
through q = exp(-2 pi |xi|) exp(-+ 2 pi i beta), which has |q| <= 1, keeps
every intermediate bounded and gives the exact limits +-i at xi = +-inf.
beta and xi are passed as separate reals; complex infinities are avoided.
"""
from typing import Union

import numpy as np

ArrayLike = Union[float, np.ndarray]


def _q_factor(beta: ArrayLike, xi: ArrayLike) -> tuple:
    beta = np.asarray(beta, dtype=float)
    xi = np.asarray(xi, dtype=float)
    beta, xi = np.broadcast_arrays(beta, xi)
    upper = xi >= 0.0
    sign = np.where(upper, 1.0, -1.0)
    # exp(-2 pi |xi|) is 0 at |xi| = inf, which is the correct limit
    q = np.exp(-2.0 * np.pi * np.abs(xi)) * np.exp(-2j * np.pi * sign * beta)
    return beta, xi, sign, q


def cot_pi(beta: ArrayLike, xi: ArrayLike) -> Union[complex, np.ndarray]:
    """cot(pi (beta - i xi)), elementwise."""
    _, _, sign, q = _q_factor(beta, xi)
    value = sign * 1j * (1.0 + q) / (1.0 - q)
    return value[()] if value.ndim == 0 else value


def log_inv_sin_pi(beta: ArrayLike, xi: ArrayLike) -> Union[complex, np.ndarray]:
    """
    A logarithm of 1 / sin(pi (beta - i xi)).

    The branch is whatever falls out of the factorization; only
    ``exp`` of the result (possibly after adding other logarithms) is
    meaningful.
    """
    beta, xi, sign, q = _q_factor(beta, xi)
    abs_xi = np.abs(xi)
    with np.errstate(invalid="ignore"):
        value = (
            np.log(sign * 2j)
            - sign * 1j * np.pi * beta
            - np.pi * abs_xi
            - np.log1p(-q)
        )
    value = np.where(np.isinf(abs_xi), complex(-np.inf, 0.0), value)
    return value[()] if value.ndim == 0 else value


def inv_sin_pi(beta: ArrayLike, xi: ArrayLike) -> Union[complex, np.ndarray]:
    """1 / sin(pi (beta - i xi)), elementwise."""
    value = np.exp(log_inv_sin_pi(beta, xi))
    return value[()] if np.ndim(value) == 0 else value
