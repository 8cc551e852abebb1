"""Tests for elimination, saturation, dimension, Jacobians and minors."""

import itertools
import random

import pytest

from discvar.core.errors import ComputationError, OrderMismatchError, ZeroPolynomialError
from discvar.core.groebner import GroebnerBasis, buchberger
from discvar.core.ideal import (
    Ideal,
    determinant,
    dimension,
    eliminate,
    ideal_contains,
    ideal_product,
    jacobian,
    minors_ideal,
    saturate,
    saturation_certificate,
)
from discvar.core.ordering import degrevlex, elimination_order, parameter_order
from discvar.core.poly import Polynomial, RingContext, canonical_string, evaluate
from discvar.scenarios import random_system


def _strings(polys, order):
    return [canonical_string(p, order) for p in polys]


def _random_polynomials(rng: random.Random, ring: RingContext, count: int) -> list[Polynomial]:
    monomials = [m for m in itertools.product(range(3), repeat=ring.nvars) if 0 < sum(m) <= 2]
    polys = []
    while len(polys) < count:
        p = Polynomial(ring, {m: rng.randint(-3, 3) for m in rng.sample(monomials, 3)})
        p = p + rng.randint(-2, 2)
        if p and not p.is_constant:
            polys.append(p)
    return polys


def _leibniz(rows):
    n = len(rows)
    total = Polynomial.zero(rows[0][0].ring)
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for i, j in itertools.combinations(range(n), 2) if perm[i] > perm[j])
        term = Polynomial.one(total.ring) * (-1) ** inversions
        for i in range(n):
            term = term * rows[i][perm[i]]
        total = total + term
    return total


class TestEliminate:
    """Tests for elimination ideals."""

    def test_projection_of_worked_example(self, cusp_system):
        """The worked example projects onto the parabola."""
        order = elimination_order(cusp_system.ring)
        basis = buchberger(cusp_system.equalities, order)
        assert _strings(eliminate(basis, ("x", "y")), order) == ["r^2 - a"]

    def test_graph_projects_to_zero_ideal(self):
        """A graph over the parameter line has no elimination ideal."""
        ring = RingContext.from_blocks(["u"], ["x"])
        order = elimination_order(ring)
        basis = buchberger([Polynomial.variable(ring, "x") - Polynomial.variable(ring, "u")], order)
        assert eliminate(basis, ("x",)) == []

    def test_wrong_order(self, cusp_system):
        """Elimination needs the dropped block first."""
        basis = buchberger(cusp_system.equalities, parameter_order(cusp_system.ring))
        with pytest.raises(OrderMismatchError):
            eliminate(basis, ("x", "y"))

    def test_empty_drop_keeps_everything(self, cusp_system):
        """Dropping no variables keeps the whole basis."""
        basis = buchberger(cusp_system.equalities, elimination_order(cusp_system.ring))
        assert eliminate(basis, ()) == list(basis.elements)


class TestSaturate:
    """Tests for saturation by an inequation."""

    def test_worked_example(self, cusp_system, P):
        """Saturating by r removes the a*(...) factor."""
        order = elimination_order(cusp_system.ring)
        ideal = saturate(cusp_system.equalities, P("r"), order)
        assert _strings(ideal.generators, order) == ["r^2 - a", "x^2*y + 5*y^3 - r"]

    def test_saturation_by_one_is_identity(self, cusp_system, P):
        """Saturating by a unit leaves the ideal unchanged."""
        order = elimination_order(cusp_system.ring)
        ideal = saturate(cusp_system.equalities, P("1"), order)
        assert ideal.groebner_basis(order).elements == buchberger(cusp_system.equalities, order).elements

    def test_removes_component(self):
        """Saturating xy by x removes the line x = 0."""
        ring = RingContext.from_blocks([], ["x", "y"])
        x = Polynomial.variable(ring, "x")
        y = Polynomial.variable(ring, "y")
        ideal = saturate([x * y], x)
        assert ideal.generators == (y,)

    def test_zero_polynomial(self, cusp_system, cusp_ring):
        """Saturating by zero is rejected."""
        with pytest.raises(ZeroPolynomialError):
            saturate(cusp_system.equalities, Polynomial.zero(cusp_ring))

    def test_certificate(self, cusp_system, P):
        """Each saturated generator times a power of f lies in the input ideal."""
        ideal = saturate(cusp_system.equalities, P("r"))
        assert saturation_certificate(cusp_system.equalities, P("r"), ideal) == [0, 2]

    def test_contains(self, cusp_system, P):
        """Membership in the saturated ideal."""
        ideal = saturate(cusp_system.equalities, P("r"))
        assert ideal.contains(P("x^2*y + 5*y^3 - r"))
        assert not ideal.contains(P("x"))

    @pytest.mark.parametrize("seed", range(15))
    def test_saturation_contains_equalities(self, seed):
        """Saturation only grows the ideal: every equality stays a member."""
        system = random_system(random.Random(seed))
        ideal = saturate(system.equalities, system.inequation_product())
        for e in system.equalities:
            assert ideal.contains(e)


class TestDimension:
    """Tests for Krull dimension from leading monomials."""

    def test_zero_ideal(self, cusp_ring):
        """The zero ideal has full dimension."""
        assert dimension(GroebnerBasis((), degrevlex(cusp_ring)), cusp_ring.variables) == 4

    def test_all_variables(self, cusp_ring):
        """The maximal ideal at the origin has dimension zero."""
        gens = [Polynomial.variable(cusp_ring, v) for v in cusp_ring.variables]
        assert dimension(buchberger(gens, degrevlex(cusp_ring)), cusp_ring.variables) == 0

    def test_parabola(self, P, cusp_ring):
        """A plane curve has dimension one."""
        order = elimination_order(cusp_ring)
        assert dimension(buchberger([P("r^2 - a")], order), ("r", "a")) == 1

    def test_unit_ideal(self, P, cusp_ring):
        """The unit ideal reports the empty sentinel."""
        assert dimension(buchberger([P("1")], degrevlex(cusp_ring)), cusp_ring.variables) == -1

    @pytest.mark.parametrize("seed", range(20))
    def test_monomial_staircases(self, seed):
        """Compare with the largest coordinate subspace inside V(I)."""
        rng = random.Random(seed)
        ring = RingContext.from_blocks([], ["w", "x", "y", "z"])
        gens = []
        for _ in range(rng.randint(1, 4)):
            exps = tuple(rng.randint(0, 2) if rng.random() < 0.5 else 0 for _ in range(4))
            if any(exps):
                gens.append(Polynomial.monomial(ring, exps))
        basis = buchberger(gens, degrevlex(ring))

        best = -1
        for size in range(5):
            for subset in itertools.combinations(range(4), size):
                point = [1 if i in subset else 0 for i in range(4)]
                if all(evaluate(g, point) == 0 for g in gens):
                    best = max(best, size)
        assert dimension(basis, ring.variables) == best

    @pytest.mark.parametrize("seed", range(15))
    def test_antitone_on_nested_ideals(self, seed):
        """A larger ideal never has a larger dimension."""
        rng = random.Random(seed)
        ring = RingContext.from_blocks([], ["x", "y", "z"])
        gens = _random_polynomials(rng, ring, 3)
        order = degrevlex(ring)
        small = buchberger(gens[: rng.randint(1, 2)], order)
        big = buchberger(gens, order)
        assert dimension(big, ring.variables) <= dimension(small, ring.variables)


class TestJacobianAndMinors:
    """Tests for Jacobian matrices and minor ideals."""

    def test_jacobian_entries(self, cusp_system, P):
        """Jacobian of the worked example with respect to X."""
        m = jacobian(cusp_system.equalities, ("x", "y"))
        assert (m.rows, m.cols) == (2, 2)
        assert m.entry(0, 0) == P("2*a*x*y")
        assert m.entry(0, 1) == P("a*x^2 + 15*a*y^2")
        assert m.entry(1, 0).is_zero

    def test_empty_variable_subset(self, cusp_system):
        """A Jacobian needs at least one variable."""
        with pytest.raises(ComputationError):
            jacobian(cusp_system.equalities, ())

    def test_oversize_minor_is_unit(self, cusp_system):
        """Minor sizes outside 1..min(rows, cols) give the unit ideal."""
        m = jacobian(cusp_system.equalities, ("x", "y"))
        assert minors_ideal(m, 3).is_unit()
        assert minors_ideal(m, 0).is_unit()

    def test_one_by_one_minors_are_entries(self, P):
        """The 1x1 minors are the nonzero entries."""
        m = jacobian([P("r^2 - a")], ("r", "a"))
        gens = minors_ideal(m, 1).generators
        assert set(gens) == {P("r"), P("-1")}

    @pytest.mark.parametrize("seed", range(12))
    def test_determinant_matches_permutation_expansion(self, seed):
        """Cofactor expansion agrees with the Leibniz formula."""
        rng = random.Random(seed)
        ring = RingContext.from_blocks([], ["x"])
        n = rng.randint(1, 4)
        values = [[rng.randint(-5, 5) for _ in range(n)] for _ in range(n)]
        matrix = [[Polynomial.constant(ring, v) for v in row] for row in values]

        expected = 0
        for perm in itertools.permutations(range(n)):
            inversions = sum(1 for i, j in itertools.combinations(range(n), 2) if perm[i] > perm[j])
            term = (-1) ** inversions
            for i in range(n):
                term *= values[i][perm[i]]
            expected += term
        assert determinant(matrix) == expected

    @pytest.mark.parametrize("seed", range(10))
    def test_minors_match_permutation_expansion(self, seed):
        """Every kxk minor of a Jacobian, including k below full size, matches the Leibniz formula."""
        rng = random.Random(seed)
        ring = RingContext.from_blocks([], ["x", "y", "z"])
        m = jacobian(_random_polynomials(rng, ring, rng.randint(2, 3)), ring.variables)
        for k in range(1, min(m.rows, m.cols) + 1):
            expected = set()
            for rows in itertools.combinations(range(m.rows), k):
                for cols in itertools.combinations(range(m.cols), k):
                    d = _leibniz([[m.entry(i, j) for j in cols] for i in rows])
                    if d:
                        expected.add(d.primitive_part())
            assert set(minors_ideal(m, k).generators) == expected

    def test_symbolic_determinant(self, P):
        """Determinants of polynomial matrices."""
        matrix = [[P("x"), P("y")], [P("a"), P("r")]]
        assert determinant(matrix) == P("r*x - a*y")
        three = [[P("x"), P("0"), P("0")], [P("0"), P("y"), P("0")], [P("0"), P("0"), P("a")]]
        assert determinant(three) == P("a*x*y")


class TestIdealRelations:
    """Tests for containment and products."""

    def test_contains(self, P, cusp_ring):
        """Containment of ideals is certified in one direction only."""
        order = elimination_order(cusp_ring)
        big = Ideal([P("a"), P("r")])
        small = Ideal([P("r^2 - a")])
        assert ideal_contains(big, small, order)
        assert not ideal_contains(small, big, order)

    def test_product_variety_is_union(self, P):
        """The product ideal collects pairwise products."""
        prod = ideal_product(Ideal([P("a")]), Ideal([P("r"), P("x")]))
        assert set(prod.generators) == {P("a*r"), P("a*x")}
