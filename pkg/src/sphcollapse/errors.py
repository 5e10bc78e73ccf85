"""Exception hierarchy.

Every error raised by the library derives from :class:`CollapseError`, and
also from the closest builtin so callers catching ``ValueError`` or
``ArithmeticError`` keep working.
"""


class CollapseError(Exception):
    """Base class for all library errors."""


class DomainError(CollapseError, ValueError):
    """An argument lies outside the domain of the operation."""


class UnsupportedGammaError(DomainError):
    """The operation is not defined for the requested exponent."""


class ShapeError(DomainError):
    """Approximation shape parameter incompatible with the regime of gamma."""


class ScenarioError(DomainError):
    """Missing, unknown or non-physical scenario parameter."""


class UnsupportedCombinationError(CollapseError):
    """A valid request that this combination of options cannot serve."""


class ConvergenceError(CollapseError, ArithmeticError):
    """An iterative kernel did not reach tolerance within its iteration cap."""


class IntegrationError(ConvergenceError):
    """The adaptive ODE integrator could not meet its tolerances."""


class CollapseOverflowError(CollapseError, OverflowError):
    """The collapse time is not representable in double precision."""
