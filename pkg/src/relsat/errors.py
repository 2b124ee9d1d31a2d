"""Exception hierarchy shared by all relsat modules."""

from __future__ import annotations


class RelsatError(Exception):
    """Base class for every failure raised by this package."""


class QuadratureError(RelsatError):
    """Adaptive quadrature failed to converge or hit a non-finite value.

    ``partial`` holds the best estimate reached so far (``nan`` when the
    failure is a non-finite evaluation); ``abscissa`` is the offending
    point for non-finite evaluations.
    """

    def __init__(self, message: str, partial: float = float("nan"),
                 abs_error: float = float("inf"), abscissa: float | None = None):
        super().__init__(message)
        self.partial = partial
        self.abs_error = abs_error
        self.abscissa = abscissa


class RootFindingError(RelsatError):
    """Bracketed root finding failed. ``bracket`` is the last valid bracket."""

    def __init__(self, message: str, bracket: tuple[float, float] | None = None):
        super().__init__(message)
        self.bracket = bracket


class DomainError(RelsatError, ValueError):
    """An input lies outside the domain of a formula (negative radicand, bad angle, ...)."""


class HorizonError(DomainError):
    """A radius at or inside the Schwarzschild radius."""


class TurningPointError(DomainError):
    """A null-vector radicand is negative: the ray has turned before this point."""

    def __init__(self, message: str, radicand: str):
        super().__init__(message)
        self.radicand = radicand


class NoGeodesicError(RelsatError):
    """No turning-point-free null geodesic joins the requested endpoints."""


class RegimeError(RelsatError):
    """A small-parameter approximation is used outside its validity regime."""


class ScenarioParseError(RelsatError):
    """A scenario file could not be parsed. ``line`` is 1-based when known."""

    def __init__(self, message: str, line: int | None = None):
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)
        self.line = line


class ScenarioValidationError(RelsatError, ValueError):
    """A parsed scenario violates one of its invariants."""
