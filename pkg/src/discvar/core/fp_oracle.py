"""Brute-force verification over small prime fields.

Varieties are enumerated exhaustively, so Zariski statements about the
pipeline become decidable set equalities at desk scale. Membership of a point
in V(Jac^k) is decided by the rank of the Jacobian evaluated at that point:
all k×k minors vanish exactly when the rank is below k.

Characteristic-zero statements can fail at unlucky primes. A prime is refused
(BadPrimeError) when a relevant coefficient denominator vanishes modulo it, and
``check_over_primes`` then walks on to the next prime.
"""

from __future__ import annotations

import itertools
import logging
import random
from dataclasses import dataclass, field
from functools import reduce
from typing import Callable, Iterable, Sequence

from sympy import isprime, nextprime

from discvar.core.config import get_settings
from discvar.core.errors import (
    BadPrimeError,
    ComputationError,
    EnumerationGuardError,
    SaturationCertificateError,
)
from discvar.core.groebner import GroebnerBasis, buchberger, divide
from discvar.core.ideal import Ideal, eliminate, saturate, saturation_certificate
from discvar.core.ordering import elimination_order
from discvar.core.poly import Monomial, Polynomial, RingContext, evaluate, partial_derivative, reduce_rational

logger = logging.getLogger(__name__)

Point = tuple[int, ...]


@dataclass(frozen=True)
class FpPolynomial:
    ring: RingContext
    modulus: int
    terms: tuple[tuple[Monomial, int], ...]

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __call__(self, point: Sequence[int]) -> int:
        p = self.modulus
        acc = 0
        for m, c in self.terms:
            term = c
            for v, e in zip(point, m):
                if e:
                    term = term * pow(v, e, p) % p
            acc += term
        return acc % p


@dataclass(frozen=True)
class FpVariety:
    modulus: int
    variables: tuple[str, ...]
    points: frozenset[Point]

    def __len__(self) -> int:
        return len(self.points)

    def __contains__(self, point: object) -> bool:
        return point in self.points


def _require_prime(prime: int) -> None:
    if not isprime(prime):
        raise ComputationError(f"{prime} is not a prime")


def reduce_mod_p(p: Polynomial, prime: int) -> FpPolynomial:
    _require_prime(prime)
    terms = []
    for m, c in sorted(p.items()):
        r = reduce_rational(c, prime)
        if r:
            terms.append((m, r))
    return FpPolynomial(p.ring, prime, tuple(terms))


def _full_points(ring: RingContext, variables: Sequence[str], prime: int) -> Iterable[tuple[Point, Point]]:
    """Yield (point over ``variables``, full-length point with zeros elsewhere)."""
    idx = ring.indices(variables)
    base = [0] * ring.nvars
    for values in itertools.product(range(prime), repeat=len(idx)):
        for i, v in zip(idx, values):
            base[i] = v
        yield values, tuple(base)


def _check_guard(prime: int, nvars: int, guard: int | None) -> None:
    guard = guard if guard is not None else get_settings().enumeration_guard
    if prime**nvars > guard:
        raise EnumerationGuardError(f"{prime}^{nvars} points exceed the enumeration guard {guard}")


def enumerate_variety(
    gens: Sequence[Polynomial],
    prime: int,
    ring: RingContext | None = None,
    variables: Sequence[str] | None = None,
    *,
    guard: int | None = None,
) -> FpVariety:
    """Exact vanishing set of ``gens`` over F_p^k, k = len(variables)."""
    if ring is None:
        if not gens:
            raise ComputationError("enumerating the zero ideal needs an explicit ring")
        ring = gens[0].ring
    variables = tuple(variables) if variables is not None else ring.variables
    _require_prime(prime)
    _check_guard(prime, len(variables), guard)
    reduced = [reduce_mod_p(g, prime) for g in gens]
    points = frozenset(
        values for values, full in _full_points(ring, variables, prime) if all(not g(full) for g in reduced)
    )
    return FpVariety(prime, variables, points)


def _rank_mod_p(rows: list[list[int]], prime: int) -> int:
    rows = [r[:] for r in rows if any(r)]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col] % prime), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = pow(rows[rank][col], -1, prime)
        rows[rank] = [v * inv % prime for v in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                factor = rows[i][col]
                rows[i] = [(a - factor * b) % prime for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


class _JacobianAtPoints:
    """Jacobian entries reduced mod p, evaluated pointwise."""

    def __init__(self, gens: Sequence[Polynomial], variables: Sequence[str], prime: int):
        self.prime = prime
        self.entries = [[reduce_mod_p(partial_derivative(g, v), prime) for v in variables] for g in gens]

    def rank(self, point: Point) -> int:
        return _rank_mod_p([[e(point) for e in row] for row in self.entries], self.prime)

    def deficient(self, point: Point, k: int) -> bool:
        """True when every k×k minor vanishes at the point."""
        return self.rank(point) < k


def _require_good_reduction(polys: Iterable[Polynomial], prime: int) -> None:
    for p in polys:
        for _, c in p.items():
            if c.denominator % prime == 0:
                raise BadPrimeError(prime)


def _membership_cofactors(
    equalities: Sequence[Polynomial],
    f: Polynomial,
    saturated: Ideal,
    base: GroebnerBasis,
) -> list[Polynomial]:
    """Quotients witnessing I = ⟨E⟩ : f^∞ in both directions.

    A prime dividing one of their denominators may break the pointwise
    agreement of the two Jacobians, so such primes are refused as well.
    """
    order = base.order
    cofactors: list[Polynomial] = []
    try:
        exponents = saturation_certificate(equalities, f, saturated)
    except SaturationCertificateError:
        logger.debug("no saturation certificate within the limit; skipping its cofactors")
        exponents = []
    for g, t in zip(saturated.generators, exponents):
        cofactors.extend(divide(g * f**t, base.elements, order).quotients)
    basis_i = saturated.groebner_basis(order)
    for e in equalities:
        cofactors.extend(divide(e, basis_i.elements, order).quotients)
    return cofactors


def lemma1_check(
    equalities: Sequence[Polynomial],
    f: Polynomial,
    k: int,
    prime: int,
    saturated: Ideal | None = None,
    *,
    compare_equalities: bool = False,
    guard: int | None = None,
) -> bool:
    """I + Jac_X^k(I) and I + Jac_X^k(⟨E⟩) have the same F_p-zeros off V(f)."""
    ring = f.ring
    if not 1 <= k <= len(ring.unknowns):
        raise ComputationError(f"k = {k} is outside 1..{len(ring.unknowns)}")
    order = elimination_order(ring)
    saturated = saturated if saturated is not None else saturate(equalities, f, order)
    gens_i = list(saturated.generators)
    base = buchberger(equalities, order)
    _require_good_reduction(gens_i + list(equalities) + [f] + list(base.elements), prime)
    _require_good_reduction(_membership_cofactors(equalities, f, saturated, base), prime)

    f_p = reduce_mod_p(f, prime)
    jac_i = _JacobianAtPoints(gens_i, ring.unknowns, prime)
    jac_e = _JacobianAtPoints(equalities, ring.unknowns, prime)

    variety_i = enumerate_variety(gens_i, prime, ring, guard=guard)
    left = set()
    right = set()
    for point in sorted(variety_i.points):
        if not f_p(point):
            continue
        if jac_i.deficient(point, k):
            left.add(point)
        if jac_e.deficient(point, k):
            right.add(point)
    agree = left == right
    if compare_equalities:
        variety_e = enumerate_variety(equalities, prime, ring, guard=guard)
        third = {pt for pt in variety_e.points if f_p(pt) and jac_e.deficient(pt, k)}
        agree = agree and third == left
    if not agree:
        logger.warning("lemma1_check failed at p = %d, k = %d: %s vs %s", prime, k, sorted(left), sorted(right))
    return agree


def corollary1_check(
    equalities: Sequence[Polynomial],
    inequations: Sequence[Polynomial],
    delta: int,
    prime: int,
    *,
    guard: int | None = None,
) -> bool:
    """(I ∩ Q[U]) + Jac_U^{d-δ} of I ∩ Q[U] and of ⟨E⟩ ∩ Q[U] agree off V(⟨∏F⟩ ∩ Q[U])."""
    ring = equalities[0].ring
    params = ring.parameters
    k = len(params) - delta
    if k <= 0:
        return True
    order = elimination_order(ring)
    f = reduce(lambda a, b: a * b, inequations, Polynomial.one(ring))
    saturated = saturate(equalities, f, order)
    closure = eliminate(saturated.groebner_basis(order), ring.unknowns)
    eq_projection = eliminate(buchberger(equalities, order), ring.unknowns)
    excluded = eliminate(buchberger([f], order), ring.unknowns)
    _require_good_reduction(list(closure) + list(eq_projection) + list(excluded), prime)

    excluded_p = [reduce_mod_p(g, prime) for g in excluded]
    jac_closure = _JacobianAtPoints(closure, params, prime)
    jac_eq = _JacobianAtPoints(eq_projection, params, prime)
    variety = enumerate_variety(closure, prime, ring, params, guard=guard)
    idx = ring.indices(params)
    agree = True
    for values in sorted(variety.points):
        full = [0] * ring.nvars
        for i, v in zip(idx, values):
            full[i] = v
        point = tuple(full)
        if all(not g(point) for g in excluded_p):
            continue
        if jac_closure.deficient(point, k) != jac_eq.deficient(point, k):
            logger.warning("corollary1_check failed at p = %d, point %s", prime, values)
            agree = False
    return agree


def projection_containment_check(
    saturated: Ideal,
    proj: Sequence[Polynomial],
    prime: int,
    *,
    guard: int | None = None,
) -> bool:
    """Π_U(V_p(I)) ⊆ V_p(proj)."""
    ring = saturated.ring
    variety = enumerate_variety(saturated.generators, prime, ring, guard=guard)
    idx = ring.indices(ring.parameters)
    reduced = [reduce_mod_p(g, prime) for g in proj]
    for point in variety.points:
        projected = [0] * ring.nvars
        for i in idx:
            projected[i] = point[i]
        if any(g(tuple(projected)) for g in reduced):
            return False
    return True


def check_over_primes(
    check: Callable[[int], bool],
    primes: Sequence[int] | None = None,
    *,
    max_prime: int | None = None,
) -> dict[int, bool]:
    """Run ``check`` once per requested prime, moving to the next prime on bad reduction.

    Returns the outcome keyed by the prime actually used. Raises BadPrimeError
    when no good prime is found up to ``max_prime``.
    """
    settings = get_settings()
    primes = list(primes) if primes is not None else list(settings.oracle_primes)
    max_prime = max_prime if max_prime is not None else settings.max_retry_prime
    results: dict[int, bool] = {}
    for requested in primes:
        _require_prime(requested)
        prime = requested
        while True:
            if prime in results:
                prime = nextprime(prime)
            elif prime > max_prime:
                raise BadPrimeError(requested, f"no good prime found between {requested} and {max_prime}")
            else:
                try:
                    results[prime] = check(prime)
                    break
                except BadPrimeError:
                    logger.info("bad prime %d, retrying with %d", prime, nextprime(prime))
                    prime = nextprime(prime)
    return results


def sample_consistency(
    gens: Sequence[Polynomial],
    prime: int,
    ring: RingContext,
    *,
    samples: int = 100,
    seed: int = 0,
    guard: int | None = None,
) -> bool:
    """enumerate_variety agrees with evaluate on randomly sampled points."""
    variety = enumerate_variety(gens, prime, ring, guard=guard)
    rng = random.Random(seed)
    for _ in range(samples):
        point = tuple(rng.randrange(prime) for _ in ring.variables)
        assignment = dict(zip(ring.variables, point))
        vanishes = all(evaluate(g, assignment, prime) == 0 for g in gens)
        if vanishes != (point in variety):
            return False
    return True


@dataclass(frozen=True)
class OracleOutcome:
    """Per-prime outcomes of the checks run against one pipeline result."""

    lemma1: dict[int, bool]
    corollary1: dict[int, bool]
    ks: tuple[int, ...]
    sampling: dict[int, bool] = field(default_factory=dict)

    @property
    def lemma1_passed(self) -> bool:
        return all(self.lemma1.values())

    @property
    def corollary1_passed(self) -> bool:
        return all(self.corollary1.values())

    @property
    def passed(self) -> bool:
        return self.lemma1_passed and self.corollary1_passed and all(self.sampling.values())


def lemma1_sizes(equalities: Sequence[Polynomial], ring: RingContext) -> tuple[int, ...]:
    """Every admissible minor size k ≤ min(#generators, #X)."""
    return tuple(range(1, min(len(equalities), len(ring.unknowns)) + 1))


def verify_system(
    equalities: Sequence[Polynomial],
    inequations: Sequence[Polynomial],
    delta: int,
    saturated: Ideal | None = None,
    primes: Sequence[int] | None = None,
    *,
    seed: int = 0,
    guard: int | None = None,
) -> OracleOutcome:
    """Run lemma1_check for every admissible k and corollary1_check over each prime.

    Each prime lemma1_check settled on also gets a sampled self-consistency
    check of the enumeration against pointwise evaluation, driven by ``seed``.
    """
    ring = equalities[0].ring
    f = reduce(lambda a, b: a * b, inequations, Polynomial.one(ring))
    saturated = saturated if saturated is not None else saturate(equalities, f, elimination_order(ring))
    ks = lemma1_sizes(equalities, ring)

    def lemma1_all(prime: int) -> bool:
        _require_good_reduction(saturated.generators, prime)
        return all(lemma1_check(equalities, f, k, prime, saturated, guard=guard) for k in ks)

    lemma1 = check_over_primes(lemma1_all, primes)
    corollary1 = check_over_primes(
        lambda prime: corollary1_check(equalities, inequations, delta, prime, guard=guard), primes
    )
    sampling = {
        prime: sample_consistency(list(saturated.generators), prime, ring, seed=seed, guard=guard) for prime in lemma1
    }
    outcome = OracleOutcome(lemma1, corollary1, ks, sampling)
    logger.info("oracle: lemma1 %s, corollary1 %s", lemma1, corollary1)
    return outcome
