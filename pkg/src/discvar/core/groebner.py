"""Multivariate division and Buchberger's algorithm over Q.

Contains:
    - GroebnerBasis: basis elements together with the order they were computed for
    - divide / normal_form / certify_division: division with optional quotient trace
    - s_polynomial, buchberger, reduce_basis, is_member, is_groebner_basis
    - groebner_stats: thread-safe count of Buchberger invocations

Conventions: the zero ideal has the empty basis, the unit ideal the basis {1}.
Reduced bases are monic and sorted ascending by leading monomial.
"""

from __future__ import annotations

import logging
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from discvar.core.config import get_settings
from discvar.core.errors import RingMismatchError, ZeroPolynomialError
from discvar.core.ordering import BlockOrder, leading_monomial, leading_term
from discvar.core.poly import (
    Monomial,
    Polynomial,
    monomial_div,
    monomial_divides,
    monomial_lcm,
    monomial_mul,
    monomials_coprime,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GroebnerBasis:
    elements: tuple[Polynomial, ...]
    order: BlockOrder
    reduced: bool = True

    def __iter__(self) -> Iterator[Polynomial]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def is_unit(self) -> bool:
        return any(g.is_constant and g for g in self.elements)

    @property
    def is_zero(self) -> bool:
        return not self.elements

    def leading_monomials(self) -> list[Monomial]:
        return [leading_monomial(g, self.order) for g in self.elements]


@dataclass
class GroebnerStats:
    calls: int = 0
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def record_call(self) -> None:
        with self._lock:
            self.calls += 1

    def reset(self) -> None:
        with self._lock:
            self.calls = 0


groebner_stats = GroebnerStats()


@dataclass(frozen=True)
class DivisionResult:
    quotients: tuple[Polynomial, ...]
    remainder: Polynomial


def _check_rings(f: Polynomial, polys: Sequence[Polynomial], order: BlockOrder) -> None:
    if f.ring != order.ring or any(g.ring != order.ring for g in polys):
        raise RingMismatchError("division operands and order must share one ring")


def _reduce(
    f: Polynomial, G: Sequence[Polynomial], order: BlockOrder, track: bool
) -> tuple[list[dict[Monomial, Fraction]] | None, Polynomial]:
    divisors = [(g, *leading_term(g, order)) for g in G if g]
    positions = [i for i, g in enumerate(G) if g]
    key = order.sort_key
    p = dict(f.terms)
    remainder: dict[Monomial, Fraction] = {}
    quotients: list[dict[Monomial, Fraction]] | None = [{} for _ in G] if track else None
    while p:
        m = max(p, key=key)
        c = p[m]
        for slot, (g, lm, lc) in enumerate(divisors):
            if not monomial_divides(lm, m):
                continue
            qm = monomial_div(m, lm)
            qc = c / lc
            for gm, gc in g.items():
                t = monomial_mul(gm, qm)
                v = p.get(t, 0) - qc * gc
                if v:
                    p[t] = v
                else:
                    p.pop(t, None)
            if quotients is not None:
                q = quotients[positions[slot]]
                q[qm] = q.get(qm, 0) + qc
            break
        else:
            remainder[m] = c
            del p[m]
    return quotients, Polynomial(f.ring, remainder)


def divide(f: Polynomial, G: Iterable[Polynomial], order: BlockOrder) -> DivisionResult:
    """Division with remainder; f = sum(q_i * g_i) + r."""
    G = list(G)
    _check_rings(f, G, order)
    quotients, remainder = _reduce(f, G, order, track=True)
    assert quotients is not None
    return DivisionResult(tuple(Polynomial(f.ring, q) for q in quotients), remainder)


def normal_form(f: Polynomial, G: Iterable[Polynomial], order: BlockOrder) -> Polynomial:
    G = list(G)
    _check_rings(f, G, order)
    return _reduce(f, G, order, track=False)[1]


def certify_division(f: Polynomial, G: Iterable[Polynomial], order: BlockOrder) -> bool:
    """Replay the division trace: f - r must equal the quotient combination."""
    G = list(G)
    result = divide(f, G, order)
    combination = Polynomial.zero(f.ring)
    for q, g in zip(result.quotients, G):
        combination = combination + q * g
    return f - result.remainder == combination


def s_polynomial(f: Polynomial, g: Polynomial, order: BlockOrder) -> Polynomial:
    if not f or not g:
        raise ZeroPolynomialError("S-polynomial of a zero polynomial")
    mf, cf = leading_term(f, order)
    mg, cg = leading_term(g, order)
    lcm = monomial_lcm(mf, mg)
    return f.mul_term(monomial_div(lcm, mf), 1 / cf) - g.mul_term(monomial_div(lcm, mg), 1 / cg)


def _primitive(p: Polynomial, order: BlockOrder) -> Polynomial:
    """Content removed, leading coefficient positive."""
    p = p.primitive_part()
    if leading_term(p, order)[1] < 0:
        p = -p
    return p


def monic(p: Polynomial, order: BlockOrder) -> Polynomial:
    return p.scale(1 / leading_term(p, order)[1])


def reduce_basis(polys: Iterable[Polynomial], order: BlockOrder) -> list[Polynomial]:
    """Turn a Gröbner basis into the reduced one: minimal, inter-reduced, monic, ascending."""
    key = order.sort_key
    candidates = sorted(
        (monic(p, order) for p in polys if p),
        key=lambda p: key(leading_monomial(p, order)),
    )
    minimal: list[Polynomial] = []
    for p in candidates:
        lm = leading_monomial(p, order)
        if any(monomial_divides(leading_monomial(q, order), lm) for q in minimal):
            continue
        minimal.append(p)
    reduced = []
    for i, p in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1 :]
        reduced.append(monic(normal_form(p, others, order), order))
    return sorted(reduced, key=lambda p: key(leading_monomial(p, order)))


def _pair(i: int, j: int) -> tuple[int, int]:
    return (i, j) if i < j else (j, i)


def _chain_skips(
    i: int, j: int, lcm: Monomial, leads: Sequence[Monomial], pending: set[tuple[int, int]]
) -> bool:
    for k, lk in enumerate(leads):
        if k in (i, j) or not monomial_divides(lk, lcm):
            continue
        if _pair(i, k) not in pending and _pair(j, k) not in pending:
            return True
    return False


def buchberger(
    gens: Iterable[Polynomial],
    order: BlockOrder,
    *,
    chain_criterion: bool | None = None,
) -> GroebnerBasis:
    """Reduced Gröbner basis of the ideal generated by ``gens``.

    Pairs are taken smallest lcm first (normal strategy). Pairs with coprime
    leading monomials are always skipped; the chain criterion is applied when
    enabled in the settings or by argument.
    """
    if chain_criterion is None:
        chain_criterion = get_settings().chain_criterion
    groebner_stats.record_call()

    basis: list[Polynomial] = []
    for g in gens:
        if g.ring != order.ring:
            raise RingMismatchError("generator and order belong to different rings")
        if g:
            basis.append(_primitive(g, order))
    unit = GroebnerBasis((Polynomial.one(order.ring),), order, True)
    if not basis:
        return GroebnerBasis((), order, True)
    if any(g.is_constant for g in basis):
        return unit

    key = order.sort_key
    leads = [leading_monomial(g, order) for g in basis]
    pending = {(i, j) for j in range(len(basis)) for i in range(j)}
    reductions = 0
    while pending:
        i, j = min(pending, key=lambda ij: (key(monomial_lcm(leads[ij[0]], leads[ij[1]])), ij))
        pending.discard((i, j))
        if monomials_coprime(leads[i], leads[j]):
            continue
        lcm = monomial_lcm(leads[i], leads[j])
        if chain_criterion and _chain_skips(i, j, lcm, leads, pending):
            continue
        h = normal_form(s_polynomial(basis[i], basis[j], order), basis, order)
        reductions += 1
        if not h:
            continue
        h = _primitive(h, order)
        if h.is_constant:
            logger.debug("buchberger: unit ideal after %d reductions", reductions)
            return unit
        basis.append(h)
        leads.append(leading_monomial(h, order))
        k = len(basis) - 1
        pending.update((i, k) for i in range(k))

    reduced = reduce_basis(basis, order)
    logger.debug(
        "buchberger: %d generators -> %d basis elements (%d reductions)",
        len(basis),
        len(reduced),
        reductions,
    )
    return GroebnerBasis(tuple(reduced), order, True)


def is_member(f: Polynomial, basis: GroebnerBasis) -> bool:
    if not f:
        return True
    return not normal_form(f, basis.elements, basis.order)


def is_groebner_basis(elements: Sequence[Polynomial], order: BlockOrder) -> bool:
    """Buchberger's criterion: every S-polynomial reduces to zero."""
    elements = [g for g in elements if g]
    for j in range(len(elements)):
        for i in range(j):
            s = s_polynomial(elements[i], elements[j], order)
            if normal_form(s, elements, order):
                return False
    return True
