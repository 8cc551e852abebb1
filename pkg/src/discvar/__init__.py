"""discvar: minimal discriminant varieties of parametric polynomial systems."""

from discvar.core.errors import ComputationError, DiscVarError, InputError, SystemParseError
from discvar.core.pipeline import (
    ComponentLabel,
    ComponentStatus,
    DiscriminantVarietyResult,
    ParametricSystem,
    discriminant_variety,
)
from discvar.core.poly import Polynomial, RingContext
from discvar.report import emit_report
from discvar.systems import parse_polynomial, parse_system_file

__all__ = [
    "ComponentLabel",
    "ComponentStatus",
    "ComputationError",
    "DiscVarError",
    "DiscriminantVarietyResult",
    "InputError",
    "ParametricSystem",
    "Polynomial",
    "RingContext",
    "SystemParseError",
    "discriminant_variety",
    "emit_report",
    "parse_polynomial",
    "parse_system_file",
]
