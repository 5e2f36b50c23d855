# mellinkit/lab/grid.py
"""
Uniformly sampled functions for the operator laboratory.
"""
from dataclasses import dataclass, replace
from enum import Enum
from typing import Any, Callable, Dict

import numpy as np


class Axis(str, Enum):
    """Axis a grid function is sampled on."""

    LINEAR_HALFLINE = "linear_halfline"
    LINEAR_FULLLINE = "linear_fullline"
    LOG_HALFLINE = "log_halfline"


def is_power_of_two(n: int) -> bool:
    return n > 0 and (n & (n - 1)) == 0


@dataclass(frozen=True)
class GridFunction:
    """
    Samples on the uniform grid x_j = t_min + j h, h = (t_max - t_min) / n.

    On the log axis t_min and t_max are bounds of x = ln t.

    Attributes:
        samples: Complex values, length n.
        t_min: Left end of the window.
        t_max: Right end of the window (excluded).
        n: Number of samples, a power of two >= 64.
        axis: Sampling axis.
    """

    samples: np.ndarray
    t_min: float
    t_max: float
    n: int
    axis: Axis = Axis.LINEAR_FULLLINE

    def __post_init__(self) -> None:
        if not is_power_of_two(self.n) or self.n < 64:
            raise ValueError(f"n must be a power of two >= 64, got {self.n}")
        if not self.t_max > self.t_min:
            raise ValueError(f"empty window [{self.t_min}, {self.t_max})")
        samples = np.array(self.samples, dtype=complex)
        if samples.shape != (self.n,):
            raise ValueError(f"expected {self.n} samples, got shape {samples.shape}")
        if self.axis is Axis.LINEAR_HALFLINE and self.t_min < 0.0:
            raise ValueError("half-line grids must start at t_min >= 0")
        samples.flags.writeable = False
        object.__setattr__(self, "samples", samples)

    @property
    def h(self) -> float:
        return (self.t_max - self.t_min) / self.n

    @property
    def nodes(self) -> np.ndarray:
        return self.t_min + self.h * np.arange(self.n)

    def with_samples(self, samples: np.ndarray) -> "GridFunction":
        return replace(self, samples=np.asarray(samples, dtype=complex))

    def norm(self, weight_exponent: float = 0.0) -> float:
        """Discrete L2 norm, optionally with weight exp(weight_exponent * x)."""
        weights = np.exp(weight_exponent * self.nodes) if weight_exponent else 1.0
        return float(np.sqrt(self.h * np.sum(np.abs(self.samples * weights) ** 2)))

    def metadata(self) -> Dict[str, Any]:
        return {
            "axis": self.axis.value,
            "n": self.n,
            "t_min": self.t_min,
            "t_max": self.t_max,
            "h": self.h,
        }

    @classmethod
    def from_function(
        cls,
        func: Callable[[np.ndarray], np.ndarray],
        t_min: float,
        t_max: float,
        n: int,
        axis: Axis = Axis.LINEAR_FULLLINE,
    ) -> "GridFunction":
        nodes = t_min + (t_max - t_min) / n * np.arange(n)
        return cls(
            samples=np.asarray(func(nodes), dtype=complex),
            t_min=t_min,
            t_max=t_max,
            n=n,
            axis=axis,
        )


def log_gaussian(t: np.ndarray, mu: float = 0.0, sigma: float = 0.5) -> np.ndarray:
    """exp(-(ln t - mu)^2 / sigma^2) for t > 0, zero elsewhere."""
    t = np.asarray(t, dtype=float)
    out = np.zeros(t.shape)
    positive = t > 0.0
    out[positive] = np.exp(-((np.log(t[positive]) - mu) ** 2) / sigma**2)
    return out


def halfline_test_function(
    half_width: float, n: int, mu: float = 0.0, sigma: float = 0.5
) -> GridFunction:
    """Log-Gaussian on the full-line window [-T, T), vanishing on t <= 0."""
    return GridFunction.from_function(
        lambda t: log_gaussian(t, mu, sigma),
        -half_width,
        half_width,
        n,
        Axis.LINEAR_FULLLINE,
    )


def log_axis_test_function(
    log_min: float, log_max: float, n: int, mu: float = 0.0, sigma: float = 1.0
) -> GridFunction:
    """Gaussian exp(-(x - mu)^2 / sigma^2) in x = ln t on the log axis."""
    return GridFunction.from_function(
        lambda x: np.exp(-((x - mu) ** 2) / sigma**2),
        log_min,
        log_max,
        n,
        Axis.LOG_HALFLINE,
    )
