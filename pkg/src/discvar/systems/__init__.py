"""Reading and writing parametric systems."""

from .loader import SystemLoader
from .parser import format_polynomial, format_system, parse_polynomial, parse_system_file
from .schema import ComponentFile, SystemFile

__all__ = [
    "ComponentFile",
    "SystemFile",
    "SystemLoader",
    "format_polynomial",
    "format_system",
    "parse_polynomial",
    "parse_system_file",
]
