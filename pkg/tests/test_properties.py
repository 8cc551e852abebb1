"""
Property-based tests for the polynomial kernel.
"""

import functools
import itertools

from hypothesis import given, settings
from hypothesis import strategies as st

from discvar.core.groebner import buchberger, normal_form
from discvar.core.ordering import (
    Comparison,
    compare,
    degrevlex,
    elimination_order,
    leading_monomial,
    parameter_order,
)
from discvar.core.poly import Polynomial, RingContext, evaluate, monomial_mul, partial_derivative

RING = RingContext.from_blocks(["u"], ["x", "y"])
ORDERS = [degrevlex(RING), elimination_order(RING), parameter_order(RING)]

monomials = st.tuples(*[st.integers(0, 3)] * 3)
polynomials = st.dictionaries(monomials, st.integers(-5, 5), max_size=5).map(lambda t: Polynomial(RING, t))
points = st.tuples(*[st.integers(0, 6)] * 3)
scalars = st.fractions(min_value=-5, max_value=5, max_denominator=5)

FAST = settings(max_examples=60, deadline=None)


@functools.cache
def _fixed_basis():
    u, x, y = (Polynomial.variable(RING, v) for v in RING.variables)
    return buchberger([x * x - u * y, x * y - u], degrevlex(RING))


class TestRingAxioms:
    """Q[u, x, y] is a commutative ring."""

    @FAST
    @given(polynomials, polynomials, polynomials)
    def test_associative(self, p, q, r):
        """Addition and multiplication are associative."""
        assert (p + q) + r == p + (q + r)
        assert (p * q) * r == p * (q * r)

    @FAST
    @given(polynomials, polynomials)
    def test_commutative(self, p, q):
        """Addition and multiplication are commutative."""
        assert p + q == q + p
        assert p * q == q * p

    @FAST
    @given(polynomials, polynomials, polynomials)
    def test_distributive(self, p, q, r):
        """Multiplication distributes over addition."""
        assert p * (q + r) == p * q + p * r

    @FAST
    @given(polynomials)
    def test_additive_inverse(self, p):
        """Zero and one are identities and p - p vanishes."""
        assert (p - p).is_zero
        assert p + Polynomial.zero(RING) == p
        assert p * Polynomial.one(RING) == p


class TestDerivatives:
    """Partial derivatives are derivations."""

    @FAST
    @given(polynomials, polynomials, st.sampled_from(RING.variables))
    def test_linear(self, p, q, name):
        """Differentiation is Q-linear."""
        assert partial_derivative(p + 3 * q, name) == partial_derivative(p, name) + 3 * partial_derivative(q, name)

    @FAST
    @given(polynomials, polynomials, st.sampled_from(RING.variables))
    def test_leibniz(self, p, q, name):
        """Differentiation satisfies the product rule."""
        expected = partial_derivative(p, name) * q + p * partial_derivative(q, name)
        assert partial_derivative(p * q, name) == expected


class TestOrders:
    """Every order used by the pipeline is a monomial order."""

    @FAST
    @given(monomials, monomials, monomials, st.sampled_from(ORDERS))
    def test_multiplicative(self, a, b, c, order):
        """Comparison is preserved by multiplying both sides by a monomial."""
        assert compare(a, b, order) is compare(monomial_mul(a, c), monomial_mul(b, c), order)

    @FAST
    @given(monomials, st.sampled_from(ORDERS))
    def test_one_is_smallest(self, a, order):
        """The constant monomial is below every other monomial."""
        assert compare(a, (0, 0, 0), order) is (Comparison.EQUAL if a == (0, 0, 0) else Comparison.GREATER)

    @FAST
    @given(monomials, monomials, st.sampled_from(ORDERS))
    def test_total_and_antisymmetric(self, a, b, order):
        """Exactly one of less, equal, greater holds, and swapping flips it."""
        assert (compare(a, b, order) is Comparison.EQUAL) == (a == b)
        assert compare(a, b, order) == -compare(b, a, order)

    @FAST
    @given(monomials, monomials, monomials, st.sampled_from(ORDERS))
    def test_transitive(self, a, b, c, order):
        """Sorting three monomials yields a consistent chain."""
        ranked = sorted([a, b, c], key=functools.cmp_to_key(lambda m1, m2: compare(m1, m2, order)))
        for low, high in itertools.combinations(ranked, 2):
            assert compare(low, high, order) is not Comparison.GREATER

    @FAST
    @given(polynomials)
    def test_elimination_leading_monomial(self, p):
        """An X-free leading monomial under the elimination order means an X-free polynomial."""
        if p.is_zero:
            return
        m = leading_monomial(p, elimination_order(RING))
        if not any(m[RING.index(v)] for v in RING.unknowns):
            assert not p.involves(RING.unknowns)


class TestEvaluation:
    """Reduction mod p commutes with ring operations."""

    @FAST
    @given(polynomials, polynomials, points)
    def test_homomorphism(self, p, q, point):
        """Evaluation mod 7 respects sums and products."""
        assert evaluate(p * q, point, 7) == evaluate(p, point, 7) * evaluate(q, point, 7) % 7
        assert evaluate(p + q, point, 7) == (evaluate(p, point, 7) + evaluate(q, point, 7)) % 7


class TestReduction:
    """Normal forms modulo Gröbner bases."""

    @settings(max_examples=30, deadline=None)
    @given(polynomials, polynomials)
    def test_principal_ideal_membership(self, g, h):
        """Multiples of g reduce to zero modulo the basis of <g>."""
        if g.is_zero:
            return
        basis = buchberger([g], degrevlex(RING))
        assert normal_form(g * h, basis.elements, basis.order).is_zero

    @FAST
    @given(polynomials, polynomials, scalars, scalars)
    def test_normal_form_is_linear(self, f, g, alpha, beta):
        """NF(alpha*f + beta*g) = alpha*NF(f) + beta*NF(g) modulo a fixed reduced basis."""
        basis = _fixed_basis()
        nf = functools.partial(normal_form, G=basis.elements, order=basis.order)
        assert nf(alpha * f + beta * g) == alpha * nf(f) + beta * nf(g)
