"""Built-in systems for the CLI and the test suites."""

from .basic import SYSTEMS, SystemSpec, random_system

__all__ = [
    "SYSTEMS",
    "SystemSpec",
    "random_system",
]
