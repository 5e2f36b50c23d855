# mellinkit/kernels - Meromorphic kernel algebra
"""
Admissible meromorphic kernels and their constructors.
"""

from mellinkit.kernels.algebra import (
    check_classical_condition,
    eval_kernel,
    make_classical,
    make_n_mk,
    make_power_pole,
    norm_bound,
    require_admissible,
    validate_admissible,
)
from mellinkit.kernels.models import (
    AdmissibilityReport,
    MeromorphicKernel,
    PoleTerm,
    SpaceParams,
)

__all__ = [
    "AdmissibilityReport",
    "MeromorphicKernel",
    "PoleTerm",
    "SpaceParams",
    "check_classical_condition",
    "eval_kernel",
    "make_classical",
    "make_n_mk",
    "make_power_pole",
    "norm_bound",
    "require_admissible",
    "validate_admissible",
]
