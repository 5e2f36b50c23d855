# mellinkit/kernels/models.py
"""
Domain models for meromorphic Mellin kernels.

A kernel is a finite pole sum K(t) = sum_j d_j (t - c_j)^(-m_j). The
models are frozen Pydantic models: validated once, then shared freely.
"""
import math
from typing import Annotated, Any, List, Tuple

from pydantic import (
    BaseModel,
    BeforeValidator,
    ConfigDict,
    Field,
    field_validator,
    model_validator,
)

# Relative size of Im c below which a pole counts as lying on the real axis
REAL_AXIS_RTOL = 1e-12
# beta must match (1 + gamma) / p to a few ulps
BETA_RTOL = 1e-15


def to_complex(value: Any) -> complex:
    """
    Coerce a scalar or an ``[re, im]`` pair to a Python complex.

    Args:
        value: A number, a complex, or a two-element sequence.

    Returns:
        The complex value.

    Raises:
        ValueError: If the value cannot be interpreted as complex.
    """
    if isinstance(value, complex):
        return value
    if isinstance(value, (int, float)):
        return complex(value)
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return complex(float(value[0]), float(value[1]))
    if hasattr(value, "__complex__"):
        return complex(value)
    raise ValueError(f"expected a number or an [re, im] pair, got {value!r}")


ComplexValue = Annotated[complex, BeforeValidator(to_complex)]


def is_positive_real(c: complex) -> bool:
    """Return True when c lies on the open positive half-axis."""
    return c.real > 0.0 and abs(c.imag) <= REAL_AXIS_RTOL * abs(c)


class PoleTerm(BaseModel):
    """One summand d (t - c)^(-m) of a meromorphic kernel."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    c: ComplexValue
    m: int = Field(..., ge=1)
    d: ComplexValue

    @property
    def on_positive_axis(self) -> bool:
        return is_positive_real(self.c)

    def conj(self) -> "PoleTerm":
        return PoleTerm(c=self.c.conjugate(), m=self.m, d=self.d.conjugate())


class MeromorphicKernel(BaseModel):
    """
    Finite pole-sum kernel.

    Terms are kept in the order given. Admissibility is not enforced here;
    ``validate_admissible`` reports on it so bad input can be diagnosed.
    """

    model_config = ConfigDict(frozen=True)

    terms: Tuple[PoleTerm, ...] = ()

    @classmethod
    def from_terms(
        cls, *terms: Tuple[complex, int, complex]
    ) -> "MeromorphicKernel":
        """Build a kernel from ``(c, m, d)`` tuples."""
        return cls(terms=tuple(PoleTerm(c=c, m=m, d=d) for c, m, d in terms))

    @property
    def is_empty(self) -> bool:
        return not self.terms

    @property
    def has_positive_pole(self) -> bool:
        return any(term.on_positive_axis for term in self.terms)

    def conj(self) -> "MeromorphicKernel":
        """Kernel with every c_j and d_j conjugated."""
        return MeromorphicKernel(terms=tuple(term.conj() for term in self.terms))

    def scaled(self, factor: complex) -> "MeromorphicKernel":
        """Kernel multiplied by a constant."""
        return MeromorphicKernel(
            terms=tuple(
                PoleTerm(c=t.c, m=t.m, d=t.d * factor) for t in self.terms
            )
        )

    def __add__(self, other: "MeromorphicKernel") -> "MeromorphicKernel":
        return MeromorphicKernel(terms=self.terms + other.terms)

    def __len__(self) -> int:
        return len(self.terms)


class SpaceParams(BaseModel):
    """
    Weighted space L_p(R+, t^gamma) and smoothness order s.

    ``beta`` is derived from ``p`` and ``gamma_weight`` when omitted; when
    given it must agree with (1 + gamma_weight) / p.
    """

    model_config = ConfigDict(frozen=True)

    p: float = 2.0
    gamma_weight: float = 0.0
    beta: float = 0.5
    s: float = 0.0

    @model_validator(mode="before")
    @classmethod
    def _fill_beta(cls, data: Any) -> Any:
        if isinstance(data, dict) and data.get("beta") is None:
            data = dict(data)
            p = float(data.get("p", 2.0))
            gamma_weight = float(data.get("gamma_weight", 0.0))
            data["beta"] = (1.0 + gamma_weight) / p if p > 0 else float("nan")
        return data

    @field_validator("p")
    @classmethod
    def _check_p(cls, value: float) -> float:
        if not (1.0 < value < math.inf):
            raise ValueError(f"p must lie in (1, inf), got {value}")
        return value

    @model_validator(mode="after")
    def _check_ranges(self) -> "SpaceParams":
        if not -1.0 < self.gamma_weight < self.p - 1.0:
            raise ValueError(
                f"gamma_weight must lie in (-1, p-1) = (-1, {self.p - 1.0}), "
                f"got {self.gamma_weight}"
            )
        expected = (1.0 + self.gamma_weight) / self.p
        if abs(expected - self.beta) > BETA_RTOL * max(1.0, expected):
            raise ValueError(
                f"beta={self.beta} does not match (1+gamma_weight)/p={expected}"
            )
        if not 0.0 < self.beta < 1.0:
            raise ValueError(f"beta must lie in (0, 1), got {self.beta}")
        return self

    @classmethod
    def from_p(
        cls, p: float, gamma_weight: float = 0.0, s: float = 0.0
    ) -> "SpaceParams":
        return cls(p=p, gamma_weight=gamma_weight, s=s)


class AdmissibilityReport(BaseModel):
    """Outcome of the admissibility check for a kernel."""

    model_config = ConfigDict(frozen=True)

    admissible: bool
    real_axis_poles: List[int] = Field(default_factory=list)
    violations: List[str] = Field(default_factory=list)
    sup_re: float = float("-inf")

    @model_validator(mode="after")
    def _consistent(self) -> "AdmissibilityReport":
        if self.admissible != (not self.violations):
            raise ValueError(
                "admissible must be true exactly when violations is empty"
            )
        return self
