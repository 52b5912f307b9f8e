"""Renormalized stress tensor of a 1+1D massless scalar field with mirrors."""

from ._mirrorflux import (
    ConfigError,
    CoverageError,
    DomainError,
    MirrorfluxError,
    MonotonicityError,
    NoRootError,
    OracleUnavailableError,
    Scenario,
    SingularityError,
    StateError,
    list_scenarios,
    rindler_point,
    thermal_coefficients,
)

__all__ = [
    "ConfigError",
    "CoverageError",
    "DomainError",
    "MirrorfluxError",
    "MonotonicityError",
    "NoRootError",
    "OracleUnavailableError",
    "Scenario",
    "SingularityError",
    "StateError",
    "list_scenarios",
    "rindler_point",
    "thermal_coefficients",
]
