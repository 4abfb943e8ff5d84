# coding: utf-8

"""
error types raised by the numerical modules and the command-line front end
"""

from typing import Optional, Sequence


class PolaritonError(Exception):
    """Base class of every error raised by this package."""


class ConfigError(PolaritonError, ValueError):
    """Invalid model parameters, grid specs or run configuration."""


class ValidationFailure(PolaritonError):
    """A validation suite found a deviation above tolerance."""


class NumericalError(PolaritonError):
    """Base class of failures inside the numerics."""


class SingularityError(NumericalError):
    """A rational expression was evaluated at one of its poles."""


class DomainError(NumericalError, ValueError):
    """Argument outside the domain of an operation."""


class DivergenceError(NumericalError):
    """A coupling integral or a renormalisation does not converge."""


class RootFindingError(NumericalError):
    """Dispersion roots could not be found or refined."""

    def __init__(self, message: str, residuals: Optional[Sequence[float]] = None):
        self.residuals = list(residuals) if residuals is not None else []
        if self.residuals:
            message = f"{message} (residuals: {', '.join(f'{r:.3e}' for r in self.residuals)})"
        super().__init__(message)


class DegenerateRootError(NumericalError):
    """Multiple root of the dispersion relation, d/dω[ω²ε] vanishes."""


class IncompleteBranchSetError(NumericalError):
    """Fewer canonical roots than the dispersion polynomial has genuine roots."""


class QuadratureError(NumericalError):
    """An adaptive quadrature did not reach its requested tolerance."""

    def __init__(self, message: str, abserr: float = float("nan")):
        self.abserr = abserr
        super().__init__(f"{message} (achieved error {abserr:.3e})")


class UnsupportedConfigurationError(NumericalError):
    """The requested method does not cover this model configuration."""
