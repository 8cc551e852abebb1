"""
Shared pytest fixtures for discvar tests.
"""

import logging

import pytest

from discvar.core.config import get_settings
from discvar.core.pipeline import ParametricSystem
from discvar.core.poly import Polynomial, RingContext
from discvar.systems.parser import parse_polynomial


@pytest.fixture(autouse=True)
def fresh_settings(monkeypatch):
    """Every test starts from default settings, unaffected by the environment."""
    for key in ("DISCVAR_LOG_LEVEL", "DISCVAR_ORACLE_PRIMES", "DISCVAR_ENUMERATION_GUARD", "DISCVAR_CHAIN_CRITERION"):
        monkeypatch.delenv(key, raising=False)
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture(autouse=True)
def restore_root_logging():
    """Drop the stderr handler a CLI run installs, which would outlive the captured stream."""
    root = logging.getLogger()
    level = root.level
    yield
    for handler in root.handlers[:]:
        if type(handler) is logging.StreamHandler:
            root.removeHandler(handler)
    root.setLevel(level)


@pytest.fixture
def cusp_ring() -> RingContext:
    """U = (r, a), X = (x, y)."""
    return RingContext.from_blocks(["r", "a"], ["x", "y"])


@pytest.fixture
def P(cusp_ring):
    """Parse expressions in the cusp ring."""

    def parse(text: str) -> Polynomial:
        return parse_polynomial(text, cusp_ring)

    return parse


@pytest.fixture
def cusp_system(cusp_ring, P) -> ParametricSystem:
    return ParametricSystem(
        cusp_ring,
        (P("a*x^2*y + 5*a*y^3 - r^3"), P("a - r^2")),
        (P("r"),),
    )
