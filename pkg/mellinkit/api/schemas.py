# mellinkit/api/schemas.py
"""
Pydantic schemas for the JSON documents read and written by the CLI.

Complex numbers are ``[re, im]`` pairs throughout; complex matrices are
nested lists of such pairs.
"""
import json
from pathlib import Path
from typing import Annotated, Any, List, Literal, Optional, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from mellinkit.calculus.assembly import KernelTerm, OperatorExpression
from mellinkit.calculus.multipliers import (
    Multiplier,
    blaschke_power,
    constant,
    g_power,
    sign,
    table,
)
from mellinkit.kernels.algebra import make_classical, make_n_mk, make_power_pole
from mellinkit.kernels.models import MeromorphicKernel, PoleTerm, SpaceParams

ComplexPair = Annotated[List[float], Field(min_length=2, max_length=2)]


def pair(value: complex) -> List[float]:
    """Serialize a complex number as ``[re, im]``."""
    value = complex(value)
    return [value.real, value.imag]


def from_pair(value: List[float]) -> complex:
    return complex(value[0], value[1])


def parse_complex_matrix(value: Any) -> np.ndarray:
    """
    Read a scalar ``[re, im]`` or an N x N matrix of pairs.

    Returns:
        Complex array of shape (N, N); scalars give (1, 1).

    Raises:
        ValueError: If the nesting is neither a pair nor a square of pairs.
    """
    arr = np.asarray(value, dtype=float)
    if arr.shape == (2,):
        return np.array([[complex(arr[0], arr[1])]])
    if arr.ndim == 3 and arr.shape[2] == 2 and arr.shape[0] == arr.shape[1]:
        return arr[..., 0] + 1j * arr[..., 1]
    raise ValueError(
        "expected [re, im] or a square matrix of [re, im] pairs, "
        f"got an array of shape {arr.shape}"
    )


def serialize_complex_matrix(matrix: np.ndarray) -> Any:
    """Inverse of ``parse_complex_matrix``; 1 x 1 matrices become a pair."""
    matrix = np.asarray(matrix, dtype=complex)
    if matrix.shape == (1, 1):
        return pair(matrix[0, 0])
    return [[pair(entry) for entry in row] for row in matrix]


def _normalize_matrix(value: Any) -> Any:
    if value is None:
        return None
    return serialize_complex_matrix(parse_complex_matrix(value))


# --- Kernel Schemas ---


class PoleSchema(BaseModel):
    """One pole term d (t - c)^(-m)."""

    c: ComplexPair = Field(..., description="Pole location as [re, im]")
    m: int = Field(..., ge=1, description="Multiplicity")
    d: ComplexPair = Field(..., description="Coefficient as [re, im]")

    def to_term(self) -> PoleTerm:
        return PoleTerm(c=from_pair(self.c), m=self.m, d=from_pair(self.d))


BuiltinName = Literal["power_pole", "n_alpha", "n_alpha_star", "m_alpha", "n_mk"]

_CLASSICAL = {
    "n_alpha": "N_alpha",
    "n_alpha_star": "N_alpha_star",
    "m_alpha": "M_alpha",
}

_BUILTIN_ARGUMENTS = {
    "power_pole": ("c", "m"),
    "n_alpha": ("alpha",),
    "n_alpha_star": ("alpha",),
    "m_alpha": ("alpha",),
    "n_mk": ("m", "k"),
}


class KernelSchema(BaseModel):
    """
    A kernel given either by explicit pole terms or by a builtin name.

    ``{"terms": [{"c": [-1, 0], "m": 1, "d": [0.318, 0]}]}`` or
    ``{"builtin": "n_alpha", "alpha": 0.5}``.
    """

    terms: Optional[List[PoleSchema]] = Field(
        None, description="Explicit pole terms"
    )
    builtin: Optional[BuiltinName] = Field(None, description="Named constructor")
    c: Optional[ComplexPair] = Field(None, description="Pole of power_pole")
    m: Optional[int] = Field(None, ge=0, description="Multiplicity / order m")
    alpha: Optional[float] = Field(None, description="Angle of a classical kernel")
    k: Optional[int] = Field(None, ge=0, description="Index k of n_mk")

    @model_validator(mode="after")
    def _one_source(self) -> "KernelSchema":
        if (self.terms is None) == (self.builtin is None):
            raise ValueError("kernel needs exactly one of 'terms' or 'builtin'")
        if self.builtin is not None:
            required = _BUILTIN_ARGUMENTS[self.builtin]
            missing = [name for name in required if getattr(self, name) is None]
            if missing:
                raise ValueError(
                    f"builtin {self.builtin} needs {', '.join(missing)}"
                )
        return self

    def to_kernel(self) -> MeromorphicKernel:
        if self.builtin == "power_pole":
            return make_power_pole(from_pair(self.c), self.m)
        if self.builtin in _CLASSICAL:
            return make_classical(_CLASSICAL[self.builtin], self.alpha)
        if self.builtin == "n_mk":
            return make_n_mk(self.m, self.k)
        return MeromorphicKernel(terms=tuple(t.to_term() for t in self.terms))

    @classmethod
    def from_kernel(cls, k: MeromorphicKernel) -> "KernelSchema":
        return cls(
            terms=[
                PoleSchema(c=pair(t.c), m=t.m, d=pair(t.d)) for t in k.terms
            ]
        )


def load_kernel(path: Union[str, Path]) -> MeromorphicKernel:
    """
    Read a kernel JSON file.

    Raises:
        FileNotFoundError: If the file does not exist.
        ValueError: On malformed JSON or schema violations.
    """
    with open(path, "r", encoding="utf-8") as f:
        data = json.load(f)
    return KernelSchema.model_validate(data).to_kernel()


# --- Multiplier Schemas ---


class MultiplierSchema(BaseModel):
    """Fourier multiplier; the fields used depend on ``kind``."""

    kind: Literal["constant", "blaschke_power", "sign", "g_power", "table"]
    value: Optional[ComplexPair] = Field(None, description="constant value")
    n: Optional[int] = Field(None, description="blaschke_power exponent")
    scale: Optional[ComplexPair] = Field(None, description="sign scale")
    s: Optional[float] = Field(None, description="g_power exponent")
    gamma1: Optional[ComplexPair] = Field(None, description="g_power gamma1")
    gamma2: Optional[ComplexPair] = Field(None, description="g_power gamma2")
    xi: Optional[List[float]] = Field(None, description="table nodes")
    values: Optional[List[ComplexPair]] = Field(None, description="table values")
    limits: Optional[List[ComplexPair]] = Field(
        None,
        min_length=4,
        max_length=4,
        description="table limits at -inf, +inf, 0-, 0+",
    )

    @model_validator(mode="after")
    def _check_arguments(self) -> "MultiplierSchema":
        required = {
            "constant": ("value",),
            "blaschke_power": ("n",),
            "sign": (),
            "g_power": ("s", "gamma1", "gamma2"),
            "table": ("xi", "values", "limits"),
        }[self.kind]
        missing = [name for name in required if getattr(self, name) is None]
        if missing:
            raise ValueError(f"multiplier {self.kind} needs {', '.join(missing)}")
        return self

    def to_multiplier(self) -> Multiplier:
        if self.kind == "constant":
            return constant(from_pair(self.value))
        if self.kind == "blaschke_power":
            return blaschke_power(self.n)
        if self.kind == "sign":
            return sign(from_pair(self.scale) if self.scale else 1.0)
        if self.kind == "g_power":
            return g_power(self.s, from_pair(self.gamma1), from_pair(self.gamma2))
        lim = [from_pair(v) for v in self.limits]
        return table(self.xi, [from_pair(v) for v in self.values], *lim)


def _unit() -> MultiplierSchema:
    return MultiplierSchema(kind="constant", value=[1.0, 0.0])


# --- Expression Schemas ---


class KernelTermSchema(BaseModel):
    """One summand C W_a K W_b."""

    kernel: KernelSchema
    left: MultiplierSchema = Field(default_factory=_unit)
    right: MultiplierSchema = Field(default_factory=_unit)
    coefficient: Optional[Any] = Field(
        None, description="Scalar [re, im] or matrix; identity when omitted"
    )

    @field_validator("coefficient")
    @classmethod
    def _normalize(cls, value: Any) -> Any:
        return _normalize_matrix(value)

    def to_term(self) -> KernelTerm:
        return KernelTerm(
            kernel=self.kernel.to_kernel(),
            left=self.left.to_multiplier(),
            right=self.right.to_multiplier(),
            coefficient=(
                None
                if self.coefficient is None
                else parse_complex_matrix(self.coefficient)
            ),
        )


class ExpressionSchema(BaseModel):
    """d0 I + C0 W_a0 + sum_j C_j W_aj K_j W_bj."""

    d0: Any = Field(
        default_factory=lambda: [0.0, 0.0],
        description="Scalar [re, im] or matrix coefficient of the identity",
    )
    a0: Optional[MultiplierSchema] = None
    a0_coefficient: Optional[Any] = None
    terms: List[KernelTermSchema] = Field(default_factory=list)

    @field_validator("d0", "a0_coefficient")
    @classmethod
    def _normalize(cls, value: Any) -> Any:
        return _normalize_matrix(value)

    def to_expression(self) -> OperatorExpression:
        return OperatorExpression(
            d0=parse_complex_matrix(self.d0),
            a0=None if self.a0 is None else self.a0.to_multiplier(),
            a0_coefficient=(
                None
                if self.a0_coefficient is None
                else parse_complex_matrix(self.a0_coefficient)
            ),
            terms=tuple(t.to_term() for t in self.terms),
        )


# --- Analysis Schemas ---


class GridSchema(BaseModel):
    """Rectangle sampling."""

    n_per_leg: int = Field(256, ge=8, description="Points per rectangle leg")


class ToleranceOverrides(BaseModel):
    """Per-spec tolerance overrides; unset fields fall back to the config."""

    tol_ell: Optional[float] = Field(None, gt=0.0)
    closure: Optional[float] = Field(None, gt=0.0)
    corner: Optional[float] = Field(None, gt=0.0)


class AnalysisSpec(BaseModel):
    """Input document of ``mellinkit analyze``."""

    model_config = ConfigDict(extra="forbid")

    space: SpaceParams = Field(default_factory=SpaceParams)
    setting: Literal["lp", "bessel"] = "lp"
    expression: ExpressionSchema = Field(default_factory=ExpressionSchema)
    grid: GridSchema = Field(default_factory=GridSchema)
    tolerances: Optional[ToleranceOverrides] = None
    gamma: ComplexPair = Field(
        default_factory=lambda: [0.0, 1.0],
        description="Bessel lifting parameter, Im gamma > 0",
    )

    def to_expression(self) -> OperatorExpression:
        return self.expression.to_expression()

    @property
    def lift_gamma(self) -> complex:
        return from_pair(self.gamma)


def load_analysis_spec(path: Union[str, Path]) -> AnalysisSpec:
    """
    Read and validate an analysis spec file.

    Raises:
        FileNotFoundError: If the file does not exist.
        ValueError: On malformed JSON; pydantic.ValidationError on bad fields.
    """
    with open(path, "r", encoding="utf-8") as f:
        try:
            data = json.load(f)
        except json.JSONDecodeError as e:
            raise ValueError(f"Error parsing JSON spec: {e}") from e
    return AnalysisSpec.model_validate(data)
