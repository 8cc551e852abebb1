"""Ideal-level primitives: elimination, saturation, dimension, Jacobians and minors."""

from __future__ import annotations

import itertools
import logging
import threading
from dataclasses import dataclass
from typing import Iterable, Sequence

from discvar.core.config import get_settings
from discvar.core.errors import (
    ComputationError,
    OrderMismatchError,
    RingMismatchError,
    SaturationCertificateError,
    ZeroPolynomialError,
)
from discvar.core.groebner import GroebnerBasis, buchberger, normal_form
from discvar.core.ordering import BlockOrder, elimination_order, leading_monomial
from discvar.core.poly import Polynomial, RingContext, partial_derivative

logger = logging.getLogger(__name__)


class Ideal:
    """Generators in one ring plus a per-order cache of reduced Gröbner bases."""

    def __init__(self, generators: Iterable[Polynomial], ring: RingContext | None = None):
        gens = tuple(generators)
        if ring is None:
            if not gens:
                raise ComputationError("an ideal without generators needs an explicit ring")
            ring = gens[0].ring
        for g in gens:
            if g.ring != ring:
                raise RingMismatchError("ideal generators belong to different rings")
        self.ring = ring
        self.generators: tuple[Polynomial, ...] = tuple(g for g in gens if g)
        self._gb_cache: dict[BlockOrder, GroebnerBasis] = {}
        self._lock = threading.RLock()

    @classmethod
    def unit(cls, ring: RingContext) -> "Ideal":
        return cls([Polynomial.one(ring)], ring)

    @classmethod
    def zero(cls, ring: RingContext) -> "Ideal":
        return cls([], ring)

    def groebner_basis(self, order: BlockOrder) -> GroebnerBasis:
        if order.ring != self.ring:
            raise RingMismatchError("order and ideal belong to different rings")
        with self._lock:
            basis = self._gb_cache.get(order)
            if basis is None:
                basis = buchberger(self.generators, order)
                self._gb_cache[order] = basis
            return basis

    def seed_basis(self, basis: GroebnerBasis) -> None:
        """Record an already known reduced basis of this ideal."""
        with self._lock:
            self._gb_cache[basis.order] = basis

    def is_unit(self, order: BlockOrder | None = None) -> bool:
        return self.groebner_basis(order or elimination_order(self.ring)).is_unit

    def contains(self, f: Polynomial, order: BlockOrder | None = None) -> bool:
        basis = self.groebner_basis(order or elimination_order(self.ring))
        return not normal_form(f, basis.elements, basis.order)

    def __repr__(self) -> str:
        return f"Ideal({list(self.generators)!r})"


@dataclass(frozen=True)
class JacobianMatrix:
    ring: RingContext
    generators: tuple[Polynomial, ...]
    variables: tuple[str, ...]
    entries: tuple[tuple[Polynomial, ...], ...]

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.variables)

    def entry(self, i: int, j: int) -> Polynomial:
        return self.entries[i][j]


def eliminate(basis: GroebnerBasis, drop: Iterable[str]) -> list[Polynomial]:
    """Elements of a basis free of the dropped variables.

    The basis order must have exactly the dropped variables as its first block;
    the result is then a reduced basis of the elimination ideal.
    """
    drop = tuple(drop)
    ring = basis.order.ring
    ring.indices(drop)
    if not drop:
        return list(basis.elements)
    if set(basis.order.first_block) != set(drop):
        raise OrderMismatchError(
            f"elimination of {list(drop)} needs an order whose first block is exactly those variables"
        )
    return [g for g in basis.elements if not g.involves(drop)]


def saturate(
    equalities: Sequence[Polynomial],
    f: Polynomial,
    order: BlockOrder | None = None,
) -> Ideal:
    """⟨E⟩ : f^∞ by adjoining a fresh dominant variable t and eliminating it from E ∪ {1 - t·f}."""
    if not f:
        raise ZeroPolynomialError("cannot saturate by the zero polynomial")
    ring = f.ring
    order = order or elimination_order(ring)
    name = ring.fresh_name("t")
    ring_t = ring.extend(name)
    order_t = order.with_leading_block((name,), ring_t)
    t = Polynomial.variable(ring_t, name)
    lifted = [e.change_ring(ring_t) for e in equalities]
    rabinowitsch = 1 - t * f.change_ring(ring_t)
    lifted_basis = buchberger(lifted + [rabinowitsch], order_t)
    kept = [g.change_ring(ring) for g in eliminate(lifted_basis, (name,))]
    ideal = Ideal(kept, ring)
    ideal.seed_basis(GroebnerBasis(tuple(kept), order, True))
    logger.debug("saturate: %d equalities -> %d generators", len(equalities), len(kept))
    return ideal


def saturation_certificate(
    equalities: Sequence[Polynomial],
    f: Polynomial,
    saturated: Ideal,
    *,
    limit: int | None = None,
) -> list[int]:
    """For each generator g of the saturation, the least t with g·f^t ∈ ⟨E⟩."""
    limit = limit if limit is not None else get_settings().saturation_certificate_limit
    order = elimination_order(f.ring)
    base = buchberger(equalities, order)
    exponents = []
    for g in saturated.generators:
        power = g
        for t in range(limit + 1):
            if not normal_form(power, base.elements, order):
                exponents.append(t)
                break
            power = power * f
        else:
            raise SaturationCertificateError(f"no exponent t <= {limit} certifies membership of {g!r}")
    return exponents


def dimension(basis: GroebnerBasis, ring_vars: Sequence[str]) -> int:
    """Krull dimension from leading monomials; -1 for the unit ideal."""
    ring = basis.order.ring
    idx = ring.indices(ring_vars)
    if basis.is_unit:
        return -1
    supports = []
    for m in basis.leading_monomials():
        supports.append(frozenset(i for i, e in enumerate(m) if e))
    for size in range(len(idx), -1, -1):
        for subset in itertools.combinations(idx, size):
            chosen = set(subset)
            if not any(s <= chosen for s in supports):
                return size
    return -1


def jacobian(gens: Sequence[Polynomial], variables: Sequence[str], ring: RingContext | None = None) -> JacobianMatrix:
    variables = tuple(variables)
    if not variables:
        raise ComputationError("the Jacobian needs a nonempty variable subset")
    if ring is None:
        if not gens:
            raise ComputationError("a Jacobian without generators needs an explicit ring")
        ring = gens[0].ring
    ring.indices(variables)
    rows = []
    for g in gens:
        if g.ring != ring:
            raise RingMismatchError("Jacobian generators belong to different rings")
        rows.append(tuple(partial_derivative(g, v) for v in variables))
    return JacobianMatrix(ring, tuple(gens), variables, tuple(rows))


def determinant(matrix: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Exact determinant by cofactor expansion along the first row."""
    n = len(matrix)
    if n == 0:
        raise ComputationError("determinant of an empty matrix")
    if n == 1:
        return matrix[0][0]
    if n == 2:
        return matrix[0][0] * matrix[1][1] - matrix[0][1] * matrix[1][0]
    total = Polynomial.zero(matrix[0][0].ring)
    for j, a in enumerate(matrix[0]):
        if not a:
            continue
        minor = [row[:j] + row[j + 1 :] for row in matrix[1:]]
        term = a * determinant(minor)
        total = total - term if j % 2 else total + term
    return total


def minors_ideal(matrix: JacobianMatrix, k: int) -> Ideal:
    """Ideal of all k×k minors; k outside 1..min(rows, cols) gives the unit ideal."""
    ring = matrix.ring
    if k <= 0 or k > min(matrix.rows, matrix.cols):
        return Ideal.unit(ring)
    gens = []
    for rows in itertools.combinations(range(matrix.rows), k):
        for cols in itertools.combinations(range(matrix.cols), k):
            sub = [[matrix.entries[i][j] for j in cols] for i in rows]
            d = determinant(sub)
            if d:
                gens.append(d.primitive_part())
    return Ideal(gens, ring)


def ideal_contains(a: Ideal, b: Ideal, order: BlockOrder) -> bool:
    """True iff B ⊆ A, i.e. every generator of B reduces to zero modulo A."""
    if a.ring != b.ring:
        raise RingMismatchError("ideals belong to different rings")
    basis = a.groebner_basis(order)
    return all(not normal_form(g, basis.elements, order) for g in b.generators)


def ideal_product(a: Ideal, b: Ideal) -> Ideal:
    """A·B; its variety is V(A) ∪ V(B)."""
    if a.ring != b.ring:
        raise RingMismatchError("ideals belong to different rings")
    return Ideal([g * h for g in a.generators for h in b.generators], a.ring)

