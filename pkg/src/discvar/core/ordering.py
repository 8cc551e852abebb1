"""Term orders: degree-reverse-lexicographic blocks and leading-term utilities.

A BlockOrder compares monomials block by block, first block first; inside a
block it is degrevlex over the block's declared variable sequence. Three orders
are built from the same mechanism:

    - ``degrevlex(ring)``: one block holding every variable
    - ``elimination_order(ring)``: X block before U block (X ≻ U)
    - ``parameter_order(ring)``: U block first, for bases over Q[U]
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import IntEnum
from fractions import Fraction
from typing import Iterable, Sequence

from discvar.core.errors import OrderMismatchError, RingMismatchError, ZeroPolynomialError
from discvar.core.poly import Monomial, Polynomial, RingContext

SortKey = tuple


class Comparison(IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


@dataclass(frozen=True)
class BlockOrder:
    ring: RingContext
    blocks: tuple[tuple[str, ...], ...]
    _block_indices: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False, hash=False)
    _keys: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        blocks = tuple(tuple(b) for b in self.blocks if b)
        object.__setattr__(self, "blocks", blocks)
        flat = [name for b in blocks for name in b]
        if len(flat) != len(set(flat)) or set(flat) != set(self.ring.variables):
            raise OrderMismatchError(
                f"blocks {[list(b) for b in blocks]} do not partition ring variables {list(self.ring.variables)}"
            )
        object.__setattr__(
            self,
            "_block_indices",
            tuple(tuple(reversed(self.ring.indices(b))) for b in blocks),
        )
        object.__setattr__(self, "_keys", {})

    def sort_key(self, m: Monomial) -> SortKey:
        """Key whose natural tuple order agrees with this term order."""
        key = self._keys.get(m)
        if key is None:
            parts = []
            for idx in self._block_indices:
                exps = tuple(m[i] for i in idx)
                # higher degree first; on ties the smaller trailing exponent is greater
                parts.append((sum(exps), tuple(-e for e in exps)))
            key = tuple(parts)
            self._keys[m] = key
        return key

    @property
    def first_block(self) -> tuple[str, ...]:
        return self.blocks[0] if self.blocks else ()

    def with_leading_block(self, names: Sequence[str], ring: RingContext) -> "BlockOrder":
        """Same blocks over ``ring`` with ``names`` prepended as a dominant block."""
        return BlockOrder(ring, (tuple(names),) + self.blocks)


def degrevlex(ring: RingContext, variables: Sequence[str] | None = None) -> BlockOrder:
    return BlockOrder(ring, (tuple(variables) if variables is not None else ring.variables,))


def elimination_order(ring: RingContext, drop: Iterable[str] | None = None) -> BlockOrder:
    """Two-block order with the dropped variables (default: the unknowns X) dominant."""
    dropped = tuple(drop) if drop is not None else ring.unknowns
    dropped_set = set(dropped)
    kept = tuple(v for v in ring.variables if v not in dropped_set)
    dropped = tuple(v for v in ring.variables if v in dropped_set)
    return BlockOrder(ring, (dropped, kept))


def parameter_order(ring: RingContext) -> BlockOrder:
    """≺_U on the parameters, extended by the unknowns as a trailing block."""
    return BlockOrder(ring, (ring.parameters, ring.unknowns + _auxiliary(ring)))


def _auxiliary(ring: RingContext) -> tuple[str, ...]:
    known = set(ring.parameters) | set(ring.unknowns)
    return tuple(v for v in ring.variables if v not in known)


def compare(m1: Monomial, m2: Monomial, order: BlockOrder) -> Comparison:
    n = order.ring.nvars
    if len(m1) != n or len(m2) != n:
        raise RingMismatchError("monomial length does not match the order's ring")
    k1 = order.sort_key(m1)
    k2 = order.sort_key(m2)
    if k1 == k2:
        return Comparison.EQUAL
    return Comparison.GREATER if k1 > k2 else Comparison.LESS


def leading_term(p: Polynomial, order: BlockOrder) -> tuple[Monomial, Fraction]:
    if p.ring != order.ring:
        raise RingMismatchError("polynomial and order belong to different rings")
    if not p:
        raise ZeroPolynomialError("the zero polynomial has no leading term")
    m = max(p.terms, key=order.sort_key)
    return m, p.terms[m]


def leading_monomial(p: Polynomial, order: BlockOrder) -> Monomial:
    return leading_term(p, order)[0]


def split_leading_x(p: Polynomial, order: BlockOrder | None = None) -> tuple[Monomial, Polynomial]:
    """Split off the X-part of the leading monomial and its coefficient in Q[U].

    Returns ``(x_part, lc_x)`` where ``x_part`` is the leading monomial with its
    U exponents zeroed, and ``lc_x`` gathers every term of p whose X-projection
    equals ``x_part``, with that X-part divided out.
    """
    ring = p.ring
    order = order or elimination_order(ring)
    x_idx = ring.indices(ring.unknowns)
    if set(order.first_block) != set(ring.unknowns) and ring.unknowns:
        raise OrderMismatchError("split_leading_x needs the (X ≻ U) block order")
    lead, _ = leading_term(p, order)
    x_set = set(x_idx)
    x_part = tuple(e if i in x_set else 0 for i, e in enumerate(lead))
    lc_terms: dict[Monomial, Fraction] = {}
    for m, c in p.items():
        if all(m[i] == x_part[i] for i in x_idx):
            lc_terms[tuple(0 if i in x_set else e for i, e in enumerate(m))] = c
    return x_part, Polynomial(ring, lc_terms)
