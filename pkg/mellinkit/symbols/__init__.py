# mellinkit/symbols - Mellin symbols of meromorphic kernels
"""
Closed-form Mellin symbols, their limits, and the quadrature oracle.
"""

from mellinkit.symbols.mellin import (
    SymbolValue,
    evaluate_symbol,
    full_symbol_A_beta,
    mellin_symbol,
    mellin_symbol_limits,
    mellin_symbol_oracle,
    mellin_symbol_pole,
)
from mellinkit.symbols.trig import cot_pi, inv_sin_pi, log_inv_sin_pi

__all__ = [
    "SymbolValue",
    "cot_pi",
    "evaluate_symbol",
    "full_symbol_A_beta",
    "inv_sin_pi",
    "log_inv_sin_pi",
    "mellin_symbol",
    "mellin_symbol_limits",
    "mellin_symbol_oracle",
    "mellin_symbol_pole",
]
