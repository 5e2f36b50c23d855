# mellinkit/calculus/multipliers.py
"""
Piecewise-continuous Fourier multipliers on the compactified line.

A multiplier is continuous on each open half-axis and may jump at 0 and
at infinity. Its four one-sided limits are declared, not probed: the
rectangle symbol consumes them directly. ``validate_limits`` probes the
function far out and near zero to catch inconsistent declarations.
"""
import cmath
import math
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Sequence, Union

import numpy as np
import structlog

from mellinkit.core.errors import ConstraintViolation

logger = structlog.get_logger()

ArrayLike = Union[float, np.ndarray]
MultiplierFunc = Callable[[np.ndarray], np.ndarray]

PROBE_FAR = 1e6
PROBE_NEAR = 1e-6


@dataclass(frozen=True)
class Multiplier:
    """
    Fourier multiplier a(xi) with declared one-sided limits.

    Attributes:
        func: Vectorized values at continuity points (xi finite, nonzero).
        lim_minus_inf: a(-inf).
        lim_plus_inf: a(+inf).
        lim_zero_minus: a(0-).
        lim_zero_plus: a(0+).
        analytic_lower: a extends boundedly into the lower half-plane.
        analytic_upper: a extends boundedly into the upper half-plane.
        kind: Constructor name, used for serialization.
        params: Constructor arguments, used for serialization.
    """

    func: MultiplierFunc = field(repr=False, compare=False)
    lim_minus_inf: complex
    lim_plus_inf: complex
    lim_zero_minus: complex
    lim_zero_plus: complex
    analytic_lower: bool = False
    analytic_upper: bool = False
    kind: str = "custom"
    params: Dict[str, Any] = field(default_factory=dict, compare=False)

    def __call__(self, xi: ArrayLike) -> Union[complex, np.ndarray]:
        """
        Evaluate a(xi); infinities map to the declared limits.

        At xi = 0 the mean of the two one-sided limits is returned.
        """
        x = np.asarray(xi, dtype=float)
        flat = np.atleast_1d(x)
        out = np.empty(flat.shape, dtype=complex)
        finite = np.isfinite(flat) & (flat != 0.0)
        if np.any(finite):
            out[finite] = self.func(flat[finite])
        out[flat == np.inf] = self.lim_plus_inf
        out[flat == -np.inf] = self.lim_minus_inf
        out[flat == 0.0] = 0.5 * (self.lim_zero_minus + self.lim_zero_plus)
        return complex(out[0]) if x.ndim == 0 else out.reshape(x.shape)

    def on_half_axis(self, eta: ArrayLike, side: int) -> np.ndarray:
        """
        Values a(side * eta) for eta in [0, inf], limits at the ends.

        Args:
            eta: Nonnegative coordinates, possibly 0 or inf.
            side: +1 for the positive half-axis, -1 for the negative one.
        """
        eta = np.atleast_1d(np.asarray(eta, dtype=float))
        out = np.empty(eta.shape, dtype=complex)
        inner = (eta > 0.0) & np.isfinite(eta)
        if np.any(inner):
            out[inner] = self.func(side * eta[inner])
        zero = eta == 0.0
        out[zero] = self.lim_zero_plus if side > 0 else self.lim_zero_minus
        out[np.isinf(eta)] = self.lim_plus_inf if side > 0 else self.lim_minus_inf
        return out

    @property
    def is_continuous_at_zero(self) -> bool:
        return abs(self.lim_zero_minus - self.lim_zero_plus) <= 1e-12

    @property
    def is_continuous_at_infinity(self) -> bool:
        return abs(self.lim_minus_inf - self.lim_plus_inf) <= 1e-12

    def __mul__(self, other: Union["Multiplier", complex, float]) -> "Multiplier":
        if not isinstance(other, Multiplier):
            other = constant(other)
        left, right = self, other
        return Multiplier(
            func=lambda xi: left.func(xi) * right.func(xi),
            lim_minus_inf=left.lim_minus_inf * right.lim_minus_inf,
            lim_plus_inf=left.lim_plus_inf * right.lim_plus_inf,
            lim_zero_minus=left.lim_zero_minus * right.lim_zero_minus,
            lim_zero_plus=left.lim_zero_plus * right.lim_zero_plus,
            analytic_lower=left.analytic_lower and right.analytic_lower,
            analytic_upper=left.analytic_upper and right.analytic_upper,
            kind="product",
            params={"factors": [left, right]},
        )

    __rmul__ = __mul__

    def validate_limits(self, tol: float = 1e-4) -> None:
        """
        Probe the function at +-1e6 and +-1e-6 against declared limits.

        Raises:
            ConstraintViolation: If a probe misses its limit by more than tol.
        """
        probes = {
            "lim_minus_inf": -PROBE_FAR,
            "lim_plus_inf": PROBE_FAR,
            "lim_zero_minus": -PROBE_NEAR,
            "lim_zero_plus": PROBE_NEAR,
        }
        for name, point in probes.items():
            declared = getattr(self, name)
            observed = complex(self.func(np.array([point]))[0])
            if abs(observed - declared) > tol:
                raise ConstraintViolation(
                    f"{self.kind} multiplier: {name} declared {declared} "
                    f"but a({point:g}) = {observed}"
                )


def constant(value: complex) -> Multiplier:
    """Constant multiplier; analytic in both half-planes."""
    value = complex(value)
    return Multiplier(
        func=lambda xi: np.full(np.shape(xi), value, dtype=complex),
        lim_minus_inf=value,
        lim_plus_inf=value,
        lim_zero_minus=value,
        lim_zero_plus=value,
        analytic_lower=True,
        analytic_upper=True,
        kind="constant",
        params={"value": value},
    )


def blaschke_power(n: int) -> Multiplier:
    """((xi - i) / (xi + i))^n for integer n."""
    n = int(n)
    zero_value = complex((-1) ** n)
    return Multiplier(
        func=lambda xi: ((xi - 1j) / (xi + 1j)) ** n,
        lim_minus_inf=1.0 + 0j,
        lim_plus_inf=1.0 + 0j,
        lim_zero_minus=zero_value,
        lim_zero_plus=zero_value,
        # the pole sits at -i for n > 0 and at +i for n < 0
        analytic_lower=n <= 0,
        analytic_upper=n >= 0,
        kind="blaschke_power",
        params={"n": n},
    )


def sign(scale: complex = 1.0) -> Multiplier:
    """scale * sign(xi); jumps at 0 and at infinity."""
    scale = complex(scale)
    return Multiplier(
        func=lambda xi: scale * np.sign(xi).astype(complex),
        lim_minus_inf=-scale,
        lim_plus_inf=scale,
        lim_zero_minus=-scale,
        lim_zero_plus=scale,
        kind="sign",
        params={"scale": scale},
    )


def g_power_values(
    xi: np.ndarray, s: float, gamma1: complex, gamma2: complex
) -> np.ndarray:
    """
    ((xi - gamma1) / (xi + gamma2))^s on the pinned branch.

    The phase is arg(xi - gamma1) - arg(xi + gamma2) + 2 pi with
    arg(xi - gamma1) in (-pi, 0) and arg(xi + gamma2) in (0, pi), so the
    function runs from 1 at -inf to exp(2 pi i s) at +inf.
    """
    xi = np.asarray(xi, dtype=float)
    lower = xi - gamma1
    upper = xi + gamma2
    theta = np.angle(lower) - np.angle(upper) + 2.0 * np.pi
    modulus = np.abs(lower) / np.abs(upper)
    return modulus**s * np.exp(1j * s * theta)


def g_power(s: float, gamma1: complex, gamma2: complex) -> Multiplier:
    """
    Lifting factor ((xi - gamma1) / (xi + gamma2))^s on the pinned branch.

    Raises:
        ConstraintViolation: Unless Im gamma1 > 0 and Im gamma2 > 0.
    """
    gamma1 = complex(gamma1)
    gamma2 = complex(gamma2)
    if gamma1.imag <= 0.0 or gamma2.imag <= 0.0:
        raise ConstraintViolation(
            "g_power needs Im gamma1 > 0 and Im gamma2 > 0, "
            f"got {gamma1}, {gamma2}"
        )
    s = float(s)
    at_zero = complex(g_power_values(np.array([0.0]), s, gamma1, gamma2)[0])
    trivial = s == 0.0
    return Multiplier(
        func=lambda xi: g_power_values(xi, s, gamma1, gamma2),
        lim_minus_inf=1.0 + 0j,
        lim_plus_inf=cmath.exp(2j * math.pi * s),
        lim_zero_minus=at_zero,
        lim_zero_plus=at_zero,
        analytic_lower=trivial,
        analytic_upper=trivial,
        kind="g_power",
        params={"s": s, "gamma1": gamma1, "gamma2": gamma2},
    )


def table(
    xi: Sequence[float],
    values: Sequence[complex],
    lim_minus_inf: complex,
    lim_plus_inf: complex,
    lim_zero_minus: complex,
    lim_zero_plus: complex,
) -> Multiplier:
    """
    Multiplier interpolated from samples.

    Real and imaginary parts are interpolated linearly in u = arctan(xi),
    separately on each half-axis, with the declared limits as end nodes.

    Raises:
        ValueError: If the sample lists are inconsistent.
    """
    nodes = np.asarray(xi, dtype=float)
    data = np.asarray(values, dtype=complex)
    if nodes.shape != data.shape or nodes.ndim != 1:
        raise ValueError("table multiplier needs equally long xi and value lists")
    if np.any(nodes == 0.0) or not np.all(np.isfinite(nodes)):
        raise ValueError("table nodes must be finite and nonzero")
    order = np.argsort(nodes)
    nodes, data = nodes[order], data[order]
    negative = nodes < 0.0
    half = math.pi / 2.0

    neg_u = np.concatenate(([-half], np.arctan(nodes[negative]), [0.0]))
    neg_v = np.concatenate(([lim_minus_inf], data[negative], [lim_zero_minus]))
    pos_u = np.concatenate(([0.0], np.arctan(nodes[~negative]), [half]))
    pos_v = np.concatenate(([lim_zero_plus], data[~negative], [lim_plus_inf]))

    def func(x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        u = np.arctan(x)
        out = np.empty(x.shape, dtype=complex)
        left = x < 0.0
        for mask, uu, vv in ((left, neg_u, neg_v), (~left, pos_u, pos_v)):
            out[mask] = np.interp(u[mask], uu, vv.real) + 1j * np.interp(
                u[mask], uu, vv.imag
            )
        return out

    return Multiplier(
        func=func,
        lim_minus_inf=complex(lim_minus_inf),
        lim_plus_inf=complex(lim_plus_inf),
        lim_zero_minus=complex(lim_zero_minus),
        lim_zero_plus=complex(lim_zero_plus),
        kind="table",
        params={
            "xi": nodes.tolist(),
            "values": data.tolist(),
            "limits": [
                complex(lim_minus_inf),
                complex(lim_plus_inf),
                complex(lim_zero_minus),
                complex(lim_zero_plus),
            ],
        },
    )


def piecewise(negative: Multiplier, positive: Multiplier) -> Multiplier:
    """Multiplier equal to ``negative`` on xi < 0 and ``positive`` on xi > 0."""

    def func(x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        out = np.empty(x.shape, dtype=complex)
        left = x < 0.0
        out[left] = negative.func(x[left])
        out[~left] = positive.func(x[~left])
        return out

    return Multiplier(
        func=func,
        lim_minus_inf=negative.lim_minus_inf,
        lim_plus_inf=positive.lim_plus_inf,
        lim_zero_minus=negative.lim_zero_minus,
        lim_zero_plus=positive.lim_zero_plus,
        kind="piecewise",
        params={"negative": negative, "positive": positive},
    )
