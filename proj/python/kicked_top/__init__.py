"""Quantum kicked top in the regular regime."""

from ._core import (
    ConfigError,
    NumericalError,
    __version__,
    analytic_doqs,
    critical_points,
    doqs_histogram,
    effective_quasienergies,
    floquet_operator,
    protocol,
    quasienergies,
)

__all__ = [
    "ConfigError",
    "NumericalError",
    "__version__",
    "analytic_doqs",
    "critical_points",
    "doqs_histogram",
    "effective_quasienergies",
    "floquet_operator",
    "protocol",
    "quasienergies",
]
