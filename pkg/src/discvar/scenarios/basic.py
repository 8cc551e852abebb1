"""Built-in parametric systems and a seeded random-system generator."""

from __future__ import annotations

import itertools
import random
from typing import Dict, NamedTuple

from discvar.core.pipeline import ParametricSystem
from discvar.core.poly import Monomial, Polynomial, RingContext
from discvar.systems.parser import parse_system_file

CUSP_SURFACE = """\
# Solutions escape to infinity over the parabola r^2 = a.
parameters: r, a
variables: x, y
equations:
    a*x^2*y + 5*a*y^3 - r^3
    a - r^2
inequations:
    r
"""

QUADRATIC = """\
# Two roots merge on the classical discriminant.
parameters: a, b
variables: x
equations:
    x^2 + a*x + b
"""

HYPERBOLA = """\
# The only solution runs off to infinity as a tends to 0.
parameters: a
variables: x
equations:
    a*x - 1
"""

GRAPH = """\
# A graph over parameter space: no discriminant at all.
parameters: u
variables: x
equations:
    x - u
"""

COORDINATE_CROSS = """\
# Two intersection points of the coordinate cross with a moving line meet at u = 0.
parameters: u
variables: x, y
equations:
    x*y
    x + y - u
"""


class SystemSpec(NamedTuple):
    text: str
    description: str

    def build(self) -> ParametricSystem:
        return parse_system_file(self.text)


SYSTEMS: Dict[str, SystemSpec] = {
    "cusp_surface": SystemSpec(CUSP_SURFACE, "worked example: W_D = V(r^2 - a)"),
    "quadratic": SystemSpec(QUADRATIC, "monic quadratic: W_D = V(a^2 - 4*b)"),
    "hyperbola": SystemSpec(HYPERBOLA, "properness defect only: W_D = V(a)"),
    "graph": SystemSpec(GRAPH, "graph of a map: W_D is empty"),
    "coordinate_cross": SystemSpec(COORDINATE_CROSS, "critical values only: W_D = V(u^2), the point u = 0"),
}

RANDOM_PARAMETERS = ("a", "b")
RANDOM_UNKNOWNS = ("x", "y")


def _monomials(nvars: int, max_degree: int) -> list[Monomial]:
    return [m for m in itertools.product(range(max_degree + 1), repeat=nvars) if sum(m) <= max_degree]


def _random_polynomial(
    rng: random.Random,
    ring: RingContext,
    max_degree: int,
    *,
    allow_constant: bool,
) -> Polynomial:
    monomials = _monomials(ring.nvars, max_degree)
    while True:
        terms = {m: rng.randint(-3, 3) for m in monomials if rng.random() < 0.5}
        p = Polynomial(ring, terms)
        if p and (allow_constant or not p.is_constant):
            return p


def random_system(rng: random.Random) -> ParametricSystem:
    """Small random system: 1-2 parameters, 1-2 unknowns, 1-3 equations of degree ≤ 2,
    coefficients in [-3, 3], and one inequation of degree ≤ 1."""
    d = rng.randint(1, 2)
    n = rng.randint(1, 2)
    ring = RingContext.from_blocks(RANDOM_PARAMETERS[:d], RANDOM_UNKNOWNS[:n])
    equalities = [_random_polynomial(rng, ring, 2, allow_constant=False) for _ in range(rng.randint(1, 3))]
    inequation = _random_polynomial(rng, ring, 1, allow_constant=True)
    return ParametricSystem(ring, tuple(equalities), (inequation,))
