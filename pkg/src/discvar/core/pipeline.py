"""Discriminant-variety pipeline.

Stages, in the order ``discriminant_variety`` runs them:

    1. preprocess: saturation I = ⟨E⟩ : (∏F)^∞, its (X ≻ U) basis G, the
       projection closure I ∩ Q[U], its dimension δ and the inequation boundary W_F
    2. properness_defects (W_∞), critical (W_c), singular (W_sing): independent,
       optionally run on a thread pool
    3. assemble: union of the non-empty components, dropping absorbed ones

W_sd is never computed; it is either supplied by the caller or assumed empty
with a warning.
"""

from __future__ import annotations

import concurrent.futures
import logging
from dataclasses import dataclass, field
from enum import Enum
from functools import reduce
from typing import Callable, Iterable, Sequence

from discvar.core.config import get_settings
from discvar.core.errors import InputError
from discvar.core.groebner import GroebnerBasis, buchberger
from discvar.core.ideal import (
    Ideal,
    dimension,
    eliminate,
    ideal_contains,
    ideal_product,
    jacobian,
    minors_ideal,
    saturate,
)
from discvar.core.ordering import BlockOrder, elimination_order, parameter_order, split_leading_x
from discvar.core.poly import Polynomial, RingContext

logger = logging.getLogger(__name__)

WSD_WARNING = (
    "w_sd was not computed (it needs a primary decomposition); it is assumed empty. "
    "Supply it with --wsd-file if it is known to be non-empty."
)


class ComponentLabel(str, Enum):
    W_INFINITY = "w_infinity"
    W_F = "w_f"
    W_C = "w_c"
    W_SING = "w_sing"
    W_SD = "w_sd"


class ComponentStatus(str, Enum):
    COMPUTED = "computed"
    EMPTY = "empty"
    ASSUMED_EMPTY = "assumed_empty"
    USER_SUPPLIED = "user_supplied"
    SKIPPED = "skipped"


class CriticalVariant(str, Enum):
    # I + Jac_X(⟨E⟩)
    EQUALITIES_JACOBIAN = "equalities_jacobian"
    # I + Jac_X(I)
    SATURATED_JACOBIAN = "saturated_jacobian"
    # ⟨E⟩ + Jac_X(⟨E⟩)
    EQUALITIES_BASE = "equalities_base"


class SingularSource(str, Enum):
    PROJECTION = "projection"
    EQUALITIES = "equalities"


COMPUTABLE = (ComponentLabel.W_INFINITY, ComponentLabel.W_F, ComponentLabel.W_C, ComponentLabel.W_SING)


@dataclass(frozen=True)
class ParametricSystem:
    ring: RingContext
    equalities: tuple[Polynomial, ...]
    inequations: tuple[Polynomial, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "equalities", tuple(self.equalities))
        object.__setattr__(self, "inequations", tuple(self.inequations))
        if not self.equalities:
            raise InputError("empty equations section")
        for p in self.equalities + self.inequations:
            if p.ring != self.ring:
                raise InputError("every polynomial of a system must live in the system ring")

    @property
    def parameters(self) -> tuple[str, ...]:
        return self.ring.parameters

    @property
    def unknowns(self) -> tuple[str, ...]:
        return self.ring.unknowns

    def inequation_product(self) -> Polynomial:
        return reduce(lambda a, b: a * b, self.inequations, Polynomial.one(self.ring))


@dataclass(frozen=True)
class VarietyComponent:
    label: ComponentLabel
    generators: tuple[Polynomial, ...]
    status: ComponentStatus

    def __post_init__(self) -> None:
        object.__setattr__(self, "generators", tuple(self.generators))
        for g in self.generators:
            if g.involves(g.ring.unknowns):
                raise InputError(f"component {self.label.value} has a generator involving unknowns: {g!r}")

    @classmethod
    def from_generators(cls, label: ComponentLabel, generators: Sequence[Polynomial]) -> "VarietyComponent":
        """Computed component; empty when the generators form the unit ideal."""
        gens = tuple(generators)
        is_unit = any(g.is_constant and g for g in gens)
        if is_unit:
            ring = gens[0].ring
            return cls(label, (Polynomial.one(ring),), ComponentStatus.EMPTY)
        return cls(label, gens, ComponentStatus.COMPUTED)

    @classmethod
    def supplied(cls, label: ComponentLabel, generators: Sequence[Polynomial], ring: RingContext) -> "VarietyComponent":
        """Caller-supplied component; empty when the generators reduce to the unit ideal."""
        gens = tuple(generators)
        if Ideal(gens, ring).is_unit(parameter_order(ring)):
            logger.info("supplied %s generates the unit ideal; treating it as empty", label.value)
            return cls.empty(label, ring)
        return cls(label, gens, ComponentStatus.USER_SUPPLIED)

    @classmethod
    def empty(cls, label: ComponentLabel, ring: RingContext, status: ComponentStatus = ComponentStatus.EMPTY) -> "VarietyComponent":
        return cls(label, (Polynomial.one(ring),), status)

    @property
    def contributes(self) -> bool:
        return self.status in (ComponentStatus.COMPUTED, ComponentStatus.USER_SUPPLIED)


@dataclass(frozen=True)
class PreprocessResult:
    system: ParametricSystem
    saturated: Ideal
    basis: GroebnerBasis
    proj_closure: tuple[Polynomial, ...]
    delta: int
    w_f: VarietyComponent

    @property
    def ring(self) -> RingContext:
        return self.system.ring

    @property
    def order(self) -> BlockOrder:
        return self.basis.order

    def projection_basis(self) -> GroebnerBasis:
        """I ∩ Q[U] as a reduced basis under ≺_U."""
        return GroebnerBasis(self.proj_closure, parameter_order(self.ring), True)


@dataclass(frozen=True)
class DiscriminantVarietyResult:
    preprocess: PreprocessResult
    components: dict[ComponentLabel, VarietyComponent]
    w_d: tuple[tuple[Polynomial, ...], ...]
    warnings: tuple[str, ...] = field(default=())

    @property
    def delta(self) -> int:
        return self.preprocess.delta


# ----- Stage 1 -----


def w_f_component(saturated: Ideal, inequations: Sequence[Polynomial]) -> VarietyComponent:
    ring = saturated.ring
    if not inequations:
        return VarietyComponent.empty(ComponentLabel.W_F, ring)
    order = elimination_order(ring)
    product = reduce(lambda a, b: a * b, inequations)
    basis = buchberger(list(saturated.generators) + [product], order)
    return VarietyComponent.from_generators(ComponentLabel.W_F, eliminate(basis, ring.unknowns))


def preprocess(system: ParametricSystem) -> PreprocessResult:
    ring = system.ring
    order = elimination_order(ring)
    saturated = saturate(system.equalities, system.inequation_product(), order)
    basis = saturated.groebner_basis(order)
    proj_closure = tuple(eliminate(basis, ring.unknowns))
    delta = dimension(GroebnerBasis(proj_closure, order, True), ring.parameters)
    w_f = w_f_component(saturated, system.inequations)
    logger.info("preprocess: |I| = %d, |closure| = %d, delta = %d", len(basis), len(proj_closure), delta)
    return PreprocessResult(system, saturated, basis, proj_closure, delta, w_f)


# ----- Stage 2 -----


def properness_defects(pre: PreprocessResult) -> VarietyComponent:
    """Parameters over which solutions escape to infinity.

    Every unknown x_i needs basis elements whose leading X-monomial is a pure
    power of x_i; the defect locus for x_i is where all their U-coefficients
    vanish on the projection closure. If some unknown has no such element the
    whole closure is returned.
    """
    ring = pre.ring
    order = pre.order
    closure = Ideal(pre.proj_closure, ring)
    x_idx = ring.indices(ring.unknowns)
    per_variable: list[list[Polynomial]] = [[] for _ in x_idx]
    for g in pre.basis.elements:
        x_part, lc_x = split_leading_x(g, order)
        used = [pos for pos, i in enumerate(x_idx) if x_part[i]]
        if len(used) == 1:
            per_variable[used[0]].append(lc_x)
    if any(not coeffs for coeffs in per_variable):
        logger.info("properness_defects: some unknown has no pure-power leading monomial")
        return VarietyComponent(
            ComponentLabel.W_INFINITY,
            pre.proj_closure,
            ComponentStatus.EMPTY if closure.is_unit(order) else ComponentStatus.COMPUTED,
        )
    union = Ideal.unit(ring)
    for coeffs in per_variable:
        local = Ideal(list(coeffs) + list(pre.proj_closure), ring)
        union = ideal_product(union, local)
    basis = buchberger(union.generators, order)
    return VarietyComponent.from_generators(ComponentLabel.W_INFINITY, basis.elements)


def critical(
    equalities: Sequence[Polynomial],
    basis: GroebnerBasis,
    delta: int,
    variant: CriticalVariant = CriticalVariant.EQUALITIES_JACOBIAN,
) -> GroebnerBasis:
    """G_c with W_F ∪ W_c = W_F ∪ V(G_c)."""
    order = basis.order
    ring = order.ring
    k = ring.nvars - delta
    if variant is CriticalVariant.SATURATED_JACOBIAN:
        jac_source: Sequence[Polynomial] = basis.elements
    else:
        jac_source = equalities
    base = list(equalities) if variant is CriticalVariant.EQUALITIES_BASE else list(basis.elements)
    if ring.unknowns:
        minors = minors_ideal(jacobian(jac_source, ring.unknowns, ring), k)
    else:
        minors = Ideal.unit(ring)
    g_jac = buchberger(base + list(minors.generators), order)
    return GroebnerBasis(tuple(eliminate(g_jac, ring.unknowns)), order, True)


def singular(
    g_ii: GroebnerBasis,
    delta: int,
    d: int,
    jacobian_source: Sequence[Polynomial] | None = None,
) -> GroebnerBasis:
    """G_sing with W_F ∪ W_sing = W_F ∪ V(G_sing); {1} without any basis computation when δ = d."""
    order = g_ii.order
    ring = order.ring
    if delta >= d or not ring.parameters:
        return GroebnerBasis((Polynomial.one(ring),), order, True)
    source = list(g_ii.elements) if jacobian_source is None else list(jacobian_source)
    minors = minors_ideal(jacobian(source, ring.parameters, ring), d - delta)
    return buchberger(list(g_ii.elements) + list(minors.generators), order)


def equalities_projection(system: ParametricSystem) -> list[Polynomial]:
    """Reduced basis of ⟨E⟩ ∩ Q[U]."""
    ring = system.ring
    basis = buchberger(system.equalities, elimination_order(ring))
    return eliminate(basis, ring.unknowns)


# ----- Stage 3 -----


def assemble(
    pre: PreprocessResult,
    w_inf: VarietyComponent,
    w_sd: VarietyComponent | None,
    w_c: VarietyComponent,
    w_sing: VarietyComponent,
) -> DiscriminantVarietyResult:
    ring = pre.ring
    order = pre.order
    warnings: list[str] = []
    if w_sd is None:
        w_sd = VarietyComponent.empty(ComponentLabel.W_SD, ring, ComponentStatus.ASSUMED_EMPTY)
    if w_sd.status is ComponentStatus.ASSUMED_EMPTY:
        logger.warning(WSD_WARNING)
        warnings.append(WSD_WARNING)

    components = {
        ComponentLabel.W_INFINITY: w_inf,
        ComponentLabel.W_F: pre.w_f,
        ComponentLabel.W_C: w_c,
        ComponentLabel.W_SING: w_sing,
        ComponentLabel.W_SD: w_sd,
    }
    candidates = [c for c in components.values() if c.contributes]
    ideals = [Ideal(c.generators, ring) for c in candidates]

    kept = []
    for i, c in enumerate(candidates):
        absorbed = False
        for j in range(len(candidates)):
            if i == j or not ideal_contains(ideals[i], ideals[j], order):
                continue
            # V(J_i) ⊆ V(J_j); on equal varieties the earlier label survives
            if j < i or not ideal_contains(ideals[j], ideals[i], order):
                absorbed = True
                break
        if absorbed:
            logger.info("assemble: %s is absorbed by another component", c.label.value)
        else:
            kept.append(c.generators)
    return DiscriminantVarietyResult(pre, components, tuple(kept), tuple(warnings))


# ----- Orchestration -----


def _run_jobs(jobs: dict[ComponentLabel, Callable[[], VarietyComponent]], parallel: bool, workers: int) -> dict:
    if not parallel or len(jobs) < 2:
        return {label: job() for label, job in jobs.items()}
    with concurrent.futures.ThreadPoolExecutor(max_workers=min(workers, len(jobs))) as ex:
        futures = {label: ex.submit(job) for label, job in jobs.items()}
        return {label: fut.result() for label, fut in futures.items()}


def discriminant_variety(
    system: ParametricSystem,
    *,
    components: Iterable[ComponentLabel] | None = None,
    w_sd: Sequence[Polynomial] | None = None,
    critical_variant: CriticalVariant = CriticalVariant.EQUALITIES_JACOBIAN,
    singular_source: SingularSource = SingularSource.PROJECTION,
    parallel: bool | None = None,
) -> DiscriminantVarietyResult:
    """Run every stage and assemble the minimal discriminant variety."""
    settings = get_settings()
    parallel = settings.parallel_components if parallel is None else parallel
    requested = set(COMPUTABLE if components is None else components)
    ring = system.ring
    d = len(ring.parameters)

    pre = preprocess(system)
    if ComponentLabel.W_F not in requested:
        pre = PreprocessResult(
            pre.system,
            pre.saturated,
            pre.basis,
            pre.proj_closure,
            pre.delta,
            VarietyComponent.empty(ComponentLabel.W_F, ring, ComponentStatus.SKIPPED),
        )

    def run_critical() -> VarietyComponent:
        g_c = critical(system.equalities, pre.basis, pre.delta, critical_variant)
        component = VarietyComponent.from_generators(ComponentLabel.W_C, g_c.elements)
        if component.status is ComponentStatus.COMPUTED:
            dim_c = dimension(g_c, ring.parameters)
            logger.info("critical: dim W_c = %d (delta = %d, below delta: %s)", dim_c, pre.delta, dim_c < pre.delta)
        return component

    def run_singular() -> VarietyComponent:
        source = equalities_projection(system) if singular_source is SingularSource.EQUALITIES else None
        g_sing = singular(pre.projection_basis(), pre.delta, d, source)
        return VarietyComponent.from_generators(ComponentLabel.W_SING, g_sing.elements)

    jobs: dict[ComponentLabel, Callable[[], VarietyComponent]] = {}
    if ComponentLabel.W_INFINITY in requested:
        jobs[ComponentLabel.W_INFINITY] = lambda: properness_defects(pre)
    if ComponentLabel.W_C in requested:
        jobs[ComponentLabel.W_C] = run_critical
    if ComponentLabel.W_SING in requested:
        jobs[ComponentLabel.W_SING] = run_singular
    done = _run_jobs(jobs, parallel, settings.max_workers)

    def pick(label: ComponentLabel) -> VarietyComponent:
        return done.get(label) or VarietyComponent.empty(label, ring, ComponentStatus.SKIPPED)

    supplied = None
    if w_sd is not None:
        supplied = VarietyComponent.supplied(ComponentLabel.W_SD, w_sd, ring)

    result = assemble(pre, pick(ComponentLabel.W_INFINITY), supplied, pick(ComponentLabel.W_C), pick(ComponentLabel.W_SING))
    for label, component in result.components.items():
        logger.info("component %s: %s", label.value, component.status.value)
    return result
