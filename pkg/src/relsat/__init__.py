"""Relativistic frequency shifts and quantum-metrology bounds for Earth-satellite photon exchange."""

from .errors import (
    DomainError,
    HorizonError,
    NoGeodesicError,
    QuadratureError,
    RegimeError,
    RelsatError,
    RootFindingError,
    ScenarioParseError,
    ScenarioValidationError,
    TurningPointError,
)

__version__ = "0.1.0"

__all__ = [
    "DomainError",
    "HorizonError",
    "NoGeodesicError",
    "QuadratureError",
    "RegimeError",
    "RelsatError",
    "RootFindingError",
    "ScenarioParseError",
    "ScenarioValidationError",
    "TurningPointError",
    "__version__",
]
