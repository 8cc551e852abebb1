"""Tests for the finite-field oracle."""

import random

import pytest

from discvar.core.errors import BadPrimeError, ComputationError, EnumerationGuardError
from discvar.core.fp_oracle import (
    check_over_primes,
    corollary1_check,
    enumerate_variety,
    lemma1_check,
    lemma1_sizes,
    projection_containment_check,
    reduce_mod_p,
    sample_consistency,
    verify_system,
)
from discvar.core.ideal import Ideal, saturate
from discvar.core.pipeline import preprocess
from discvar.core.poly import Polynomial, RingContext
from discvar.scenarios import random_system
from discvar.systems.parser import parse_polynomial


@pytest.fixture
def line_ring() -> RingContext:
    return RingContext.from_blocks(["u"], ["x"])


class TestReduceModP:
    """Tests for coefficient reduction."""

    def test_sign_normalization(self, P):
        """Coefficients land in 0..p-1."""
        fp = reduce_mod_p(P("r^2 - a"), 5)
        assert dict(fp.terms) == {(2, 0, 0, 0): 1, (0, 1, 0, 0): 4}

    def test_bad_prime(self, P):
        """A denominator divisible by p is a bad prime."""
        with pytest.raises(BadPrimeError):
            reduce_mod_p(P("1/5*x"), 5)

    def test_vanishing_coefficient(self, P):
        """Multiples of p vanish."""
        assert not reduce_mod_p(P("7*x"), 7)

    def test_not_prime(self, P):
        """Composite moduli are rejected."""
        with pytest.raises(ComputationError):
            reduce_mod_p(P("x"), 6)


class TestEnumerateVariety:
    """Tests for exhaustive enumeration."""

    def test_two_roots(self):
        """x^2 - 1 has two roots mod 5."""
        ring = RingContext.from_blocks([], ["x"])
        variety = enumerate_variety([parse_polynomial("x^2 - 1", ring)], 5)
        assert variety.points == frozenset({(1,), (4,)})

    def test_unit_ideal(self, P):
        """The unit ideal has no points."""
        assert len(enumerate_variety([P("1")], 3)) == 0

    def test_zero_ideal(self):
        """The zero ideal is the whole affine space."""
        ring = RingContext.from_blocks(["u"], ["x"])
        assert len(enumerate_variety([], 3, ring)) == 9

    def test_guard(self):
        """Point counts beyond the guard raise instead of enumerating."""
        ring = RingContext.from_blocks(["a", "b", "c"], ["x", "y"])
        with pytest.raises(EnumerationGuardError):
            enumerate_variety([Polynomial.variable(ring, "x")], 31)
        with pytest.raises(EnumerationGuardError):
            enumerate_variety([Polynomial.variable(ring, "x")], 3, guard=100)

    def test_points_vanish(self, cusp_system):
        """Every enumerated point is a common zero."""
        saturated = saturate(cusp_system.equalities, cusp_system.inequation_product())
        variety = enumerate_variety(saturated.generators, 7)
        assert variety
        for point in variety.points:
            for g in saturated.generators:
                assert g(dict(zip(cusp_system.ring.variables, point)), 7) == 0

    def test_sampling_agrees(self, cusp_system):
        """Sampled membership agrees with the enumeration."""
        saturated = saturate(cusp_system.equalities, cusp_system.inequation_product())
        for seed in range(3):
            assert sample_consistency(saturated.generators, 5, cusp_system.ring, seed=seed)


class TestLemma1:
    """Tests for the Jacobian comparison off V(f)."""

    def test_worked_example_k1_mod7(self, cusp_system):
        """Rank statement for 1x1 minors on the worked example mod 7."""
        assert lemma1_check(cusp_system.equalities, cusp_system.inequation_product(), 1, 7)

    def test_worked_example_k2_mod5(self, cusp_system):
        """Rank statement for 2x2 minors on the worked example mod 5."""
        assert lemma1_check(cusp_system.equalities, cusp_system.inequation_product(), 2, 5)

    def test_worked_example_with_equalities_base(self, cusp_system):
        """The statement also holds against the equalities' own Jacobian."""
        f = cusp_system.inequation_product()
        assert lemma1_check(cusp_system.equalities, f, 1, 7, compare_equalities=True)

    def test_trivial_inequation(self, line_ring):
        """With f = 1 both sides range over the whole variety."""
        e = parse_polynomial("x^2 - u", line_ring)
        assert lemma1_check([e], Polynomial.one(line_ring), 1, 5)

    def test_k_out_of_range(self, cusp_system):
        """Minor sizes beyond the Jacobian are rejected."""
        with pytest.raises(ComputationError):
            lemma1_check(cusp_system.equalities, cusp_system.inequation_product(), 3, 5)

    def test_bad_prime(self, line_ring):
        """Reductions hitting a denominator report a bad prime."""
        e = parse_polynomial("x - 1/5*u", line_ring)
        with pytest.raises(BadPrimeError):
            lemma1_check([e], Polynomial.one(line_ring), 1, 5)

    @pytest.mark.parametrize("seed", range(25))
    def test_random_systems(self, seed):
        """The rank statement holds for every minor size on random systems."""
        system = random_system(random.Random(seed))
        f = system.inequation_product()
        saturated = saturate(system.equalities, f)
        for k in lemma1_sizes(system.equalities, system.ring):
            results = check_over_primes(
                lambda prime: lemma1_check(system.equalities, f, k, prime, saturated), [5, 7]
            )
            assert len(results) == 2
            assert all(results.values()), (seed, k, results)


class TestCorollary1:
    """Tests for the singular-locus comparison on parameter space."""

    def test_worked_example(self, cusp_system):
        """Singular points of the projection agree on the worked example."""
        assert corollary1_check(cusp_system.equalities, cusp_system.inequations, 1, 7)

    def test_full_dimension_is_vacuous(self, line_ring):
        """A full-dimensional projection has nothing to compare."""
        e = parse_polynomial("x - u", line_ring)
        assert corollary1_check([e], [], 1, 5)

    @pytest.mark.parametrize("seed", range(25))
    def test_random_systems(self, seed):
        """Singular loci agree on random systems below full dimension."""
        system = random_system(random.Random(seed))
        delta = preprocess(system).delta
        if delta >= len(system.parameters):
            pytest.skip("full-dimensional projection")
        results = check_over_primes(
            lambda prime: corollary1_check(system.equalities, system.inequations, delta, prime), [5, 7]
        )
        assert all(results.values()), (seed, results)


class TestProjectionContainment:
    """Tests for soundness of elimination."""

    def test_worked_example(self, cusp_system):
        """Projected points of the saturated variety lie on the closure."""
        pre = preprocess(cusp_system)
        assert projection_containment_check(pre.saturated, pre.proj_closure, 7)

    def test_zero_ideal(self, line_ring):
        """The zero ideal projects onto everything."""
        assert projection_containment_check(Ideal.zero(line_ring), [], 5)

    def test_graph(self, line_ring):
        """A graph projects onto the whole parameter line."""
        ideal = Ideal([parse_polynomial("x - u", line_ring)])
        assert projection_containment_check(ideal, [], 5)

    def test_detects_wrong_projection(self, line_ring):
        """A closure missing projected points fails the check."""
        ideal = Ideal([parse_polynomial("x - u", line_ring)])
        assert not projection_containment_check(ideal, [parse_polynomial("u", line_ring)], 5)

    @pytest.mark.parametrize("seed", range(10))
    def test_random_systems(self, seed):
        """Projection closures contain the projected points of random systems."""
        system = random_system(random.Random(seed))
        pre = preprocess(system)
        results = check_over_primes(
            lambda prime: projection_containment_check(pre.saturated, pre.proj_closure, prime), [5, 7]
        )
        assert all(results.values())


class TestPrimeRetry:
    """Tests for walking past bad primes."""

    def test_skips_bad_prime(self):
        """A bad prime is replaced by the next prime."""
        def check(prime):
            if prime == 5:
                raise BadPrimeError(prime)
            return True

        assert check_over_primes(check, [5, 7]) == {7: True, 11: True}

    def test_gives_up_after_limit(self):
        """Past the retry ceiling the bad prime error propagates."""
        def check(prime):
            raise BadPrimeError(prime)

        with pytest.raises(BadPrimeError):
            check_over_primes(check, [5], max_prime=31)

    def test_defaults_from_settings(self):
        """Without primes the configured defaults are used."""
        seen = []
        check_over_primes(lambda prime: seen.append(prime) or True)
        assert seen == [5, 7]


class TestVerifySystem:
    """Tests for the combined oracle run."""

    def test_worked_example(self, cusp_system):
        """The full oracle run passes on the worked example."""
        pre = preprocess(cusp_system)
        outcome = verify_system(cusp_system.equalities, cusp_system.inequations, pre.delta, pre.saturated, [5, 7])
        assert outcome.passed
        assert outcome.ks == (1, 2)
        assert set(outcome.lemma1) == {5, 7}
        assert set(outcome.sampling) == {5, 7}

    def test_graph_has_no_corollary_work(self, line_ring):
        """A full-dimensional projection passes the singular-locus statement vacuously."""
        e = parse_polynomial("x - u", line_ring)
        outcome = verify_system([e], [], 1, primes=[5])
        assert outcome.passed
        assert outcome.ks == (1,)
        assert outcome.corollary1 == {5: True}
