"""Quantum Fisher information of Unruh-accelerated two-qubit X-states."""

from .errors import (
    ConfigError,
    DegeneracyError,
    DomainError,
    FallbackRegion,
    NotEstimable,
    SingularDenominator,
    UnruhQfiError,
)
from .estimand import Estimand
from .fisher import FisherDecomposition, QfiEvaluation, evaluate, qfi, qfi_decomposed, qfi_sld
from .spectral import Spectrum4, generic_spectrum, populations, werner_spectrum, x_state_spectrum
from .states import CorrelationTriple, build_werner, build_x_state, concurrence
from .unruh import AccelerationParameter, PhysicalAcceleration, accelerate, rindler_parameter

__version__ = "0.1.0"

__all__ = [
    "AccelerationParameter",
    "ConfigError",
    "CorrelationTriple",
    "DegeneracyError",
    "DomainError",
    "Estimand",
    "FallbackRegion",
    "FisherDecomposition",
    "NotEstimable",
    "PhysicalAcceleration",
    "QfiEvaluation",
    "SingularDenominator",
    "Spectrum4",
    "UnruhQfiError",
    "accelerate",
    "build_werner",
    "build_x_state",
    "concurrence",
    "evaluate",
    "generic_spectrum",
    "populations",
    "qfi",
    "qfi_decomposed",
    "qfi_sld",
    "rindler_parameter",
    "werner_spectrum",
    "x_state_spectrum",
]
