# mellinkit/calculus - Symbol calculus on the rectangle
"""
Fourier multipliers, the rectangle, symbol assembly and Fredholm checks.
"""

from mellinkit.calculus.assembly import (
    KernelTerm,
    OperatorExpression,
    assemble_symbol_bessel,
    assemble_symbol_lp,
    connecting_function,
    lifted_cauchy_minus_one,
)
from mellinkit.calculus.fredholm import (
    FredholmReport,
    SymbolField,
    analyze_field,
    ellipticity,
    essential_norm_lower_bound,
    local_invertibility_at_zero,
    winding_index,
)
from mellinkit.calculus.multipliers import (
    Multiplier,
    blaschke_power,
    constant,
    g_power,
    piecewise,
    sign,
    table,
)
from mellinkit.calculus.rectangle import Leg, RectanglePoint, rectangle_grid

__all__ = [
    "FredholmReport",
    "KernelTerm",
    "Leg",
    "Multiplier",
    "OperatorExpression",
    "RectanglePoint",
    "SymbolField",
    "analyze_field",
    "assemble_symbol_bessel",
    "assemble_symbol_lp",
    "blaschke_power",
    "connecting_function",
    "constant",
    "ellipticity",
    "essential_norm_lower_bound",
    "g_power",
    "lifted_cauchy_minus_one",
    "local_invertibility_at_zero",
    "piecewise",
    "sign",
    "table",
    "winding_index",
]
