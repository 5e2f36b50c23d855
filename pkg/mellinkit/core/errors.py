# mellinkit/core/errors.py
"""
Exception hierarchy for mellinkit.

Every failure raised by the numerical modules derives from
MellinKitError so the CLI can map it to a single exit code.
"""


class MellinKitError(Exception):
    """Base class for all mellinkit errors."""


class PoleHit(MellinKitError):
    """A kernel was evaluated at (or within eps_pole of) a real pole."""


class InvalidPole(MellinKitError):
    """Pole data violates admissibility (c = 0 or a multiple positive pole)."""


class InvalidAngle(MellinKitError):
    """Opening angle outside (-pi, pi) or equal to 0."""


class IndexRange(MellinKitError):
    """Integer index outside its admissible range."""


class RealPolePresent(MellinKitError):
    """Operation undefined for kernels with a pole on the positive half-axis."""


class BranchViolation(MellinKitError):
    """A power was requested on its branch cut."""


class QuadratureFailure(MellinKitError):
    """Adaptive quadrature did not meet its error target."""


class DimensionMismatch(MellinKitError):
    """Matrix terms of an expression have incompatible shapes."""


class AnalyticityViolation(MellinKitError):
    """A multiplier lacks the analytic extension the lifted symbol needs."""


class UnsupportedMultiplicity(MellinKitError):
    """No lifted symbol is available for this pole multiplicity."""


class NotElliptic(MellinKitError):
    """The symbol vanishes somewhere on the rectangle."""


class RefinementExhausted(MellinKitError):
    """Adaptive refinement hit its depth limit."""


class WindowLeakage(MellinKitError):
    """A grid function does not decay at the ends of its window."""


class ConstraintViolation(MellinKitError):
    """Parameters violate the hypotheses of an identity or construction."""


class SingularSection(MellinKitError):
    """A finite-section matrix is numerically rank deficient."""
