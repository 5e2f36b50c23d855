# mellinkit/lab - Operator laboratory
"""
Discretized Fourier, Bessel and Mellin operators, identity checks,
norm estimates and finite sections.
"""

from mellinkit.lab.fourier import (
    BesselSign,
    apply_bessel_potential,
    apply_fourier_multiplier,
)
from mellinkit.lab.grid import Axis, GridFunction
from mellinkit.lab.identities import (
    Identity,
    IdentityCheckResult,
    LiftingKind,
    check_commutation,
    check_derivative_commutation,
    check_lifting,
    check_mellin_vs_zbeta,
    refinement_study,
    run_case,
)
from mellinkit.lab.mellin_ops import apply_mellin_kernel
from mellinkit.lab.norms import estimate_operator_norm
from mellinkit.lab.sections import finite_section_solve

__all__ = [
    "Axis",
    "BesselSign",
    "GridFunction",
    "Identity",
    "IdentityCheckResult",
    "LiftingKind",
    "apply_bessel_potential",
    "apply_fourier_multiplier",
    "apply_mellin_kernel",
    "check_commutation",
    "check_derivative_commutation",
    "check_lifting",
    "check_mellin_vs_zbeta",
    "estimate_operator_norm",
    "finite_section_solve",
    "refinement_study",
    "run_case",
]
