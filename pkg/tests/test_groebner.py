"""Tests for the groebner package: Buchberger, graded pieces and resolutions."""

import random

import numpy as np
import pytest
import sympy

from detstrata.exceptions import InvalidSpecError, TruncationExceeded
from detstrata.groebner.buchberger import (
    GradedFreeModule,
    ModuleElement,
    buchberger,
    codimension,
    hilbert_function_of_initial_ideal,
    ideal_groebner_basis,
    krull_dimension,
    syzygies,
)
from detstrata.groebner.graded import (
    GradedModulePresentation,
    QuotientRing,
    hilbert_function_by_linear_algebra,
)
from detstrata.groebner.resolution import (
    BettiTable,
    minimal_free_resolution,
    minimal_kernel_generators,
)
from detstrata.poly import PolynomialRing

P = 10007


@pytest.fixture
def cubic():
    """The 2 x 2 minors of [[x0, x1, x2], [x1, x2, x3]] in k[x0..x3]."""
    ring = PolynomialRing(3)
    return ring, [ring.parse(text) for text in ("x0*x2 - x1^2", "x1*x3 - x2^2", "x0*x3 - x1*x2")]


@pytest.fixture
def quadrics():
    """Three random quadrics in k[x0, x1, x2]."""
    ring = PolynomialRing(2)
    rng = np.random.default_rng(2024)
    return ring, [ring.random_homogeneous(2, rng) for _ in range(3)]


def _ideal_presentation(ring, generators):
    source = tuple(f.degree for f in generators)
    return GradedModulePresentation(
        QuotientRing(ring), (0,), source, tuple((f,) for f in generators)
    )


def _to_sympy(f, symbols):
    return sum(
        c * sympy.Mul(*(s**e for s, e in zip(symbols, m, strict=True)))
        for m, c in f.terms.items()
    )


def _sympy_leading_monomials(polys, nvars):
    symbols = sympy.symbols(f"x0:{nvars}")
    basis = sympy.groebner(
        [_to_sympy(f, symbols) for f in polys], *symbols, modulus=P, order="grevlex"
    )
    return {g.monoms(order="grevlex")[0] for g in basis.polys}


class TestBuchberger:
    def test_twisted_cubic_leading_monomials(self, cubic):
        """Test the grevlex initial ideal (x1^2, x1*x2, x2^2) of the twisted cubic."""
        ring, minors = cubic
        gb = ideal_groebner_basis(minors, ring)
        assert set(gb.leading_monomials) == {(0, 2, 0, 0), (0, 1, 1, 0), (0, 0, 2, 0)}

    @pytest.mark.parametrize("name", ["cubic", "quadrics"])
    def test_leading_monomials_match_sympy(self, name, request):
        """Test leading monomials against sympy's groebner over GF(p)."""
        ring, polys = request.getfixturevalue(name)
        gb = ideal_groebner_basis(polys, ring)
        assert set(gb.leading_monomials) == _sympy_leading_monomials(polys, ring.nvars)

    def test_permutation_invariance(self, quadrics):
        """Test that the reduced basis does not depend on generator order."""
        ring, polys = quadrics
        shuffled = list(polys)
        random.Random(3).shuffle(shuffled)
        first = ideal_groebner_basis(polys, ring)
        second = ideal_groebner_basis(list(reversed(shuffled)), ring)
        assert first.elements == second.elements

    def test_sugar_strategy_agrees(self, cubic):
        """Test that both pair selection strategies give the same reduced basis."""
        ring, minors = cubic
        ambient = GradedFreeModule.of_rank_one(ring)
        gens = [ModuleElement.from_components(ambient, [f]) for f in minors]
        normal = buchberger(gens, ambient)
        sugar = buchberger(gens, ambient, strategy="sugar")
        assert normal.elements == sugar.elements

    def test_membership(self, cubic):
        """Test ideal membership through normal forms."""
        ring, minors = cubic
        gb = ideal_groebner_basis(minors, ring)
        member = minors[0] * ring.variable(3) + minors[2] * ring.variable(1)
        assert gb.contains(ModuleElement.from_polynomial(member))
        assert not gb.contains(ModuleElement.from_polynomial(ring.parse("x0^2")))

    def test_dimension(self, cubic, quadrics):
        """Test Krull dimension and codimension from the initial ideal."""
        ring, minors = cubic
        gb = ideal_groebner_basis(minors, ring)
        assert krull_dimension(gb) == 2
        assert codimension(gb) == 2
        ring, polys = quadrics
        gb = ideal_groebner_basis(polys, ring)
        assert krull_dimension(gb) == 0
        assert codimension(gb) == 3

    def test_unit_ideal(self):
        """Test that the unit ideal has dimension -1."""
        ring = PolynomialRing(1)
        gb = ideal_groebner_basis([ring.one()], ring)
        assert krull_dimension(gb) == -1
        assert codimension(gb) == 2

    def test_syzygies(self):
        """Test that syzygies of (x0, x1) are relations among them."""
        ring = PolynomialRing(1)
        ambient = GradedFreeModule.of_rank_one(ring)
        gens = [ModuleElement.from_components(ambient, [ring.variable(k)]) for k in range(2)]
        found = syzygies(gens, ambient)
        assert found
        for syzygy in found:
            s0, s1 = syzygy.components()
            assert (s0 * ring.variable(0) + s1 * ring.variable(1)).is_zero


class TestHilbertFunction:
    @pytest.mark.parametrize("d", range(6))
    def test_twisted_cubic(self, cubic, d):
        """Test H(d) = 3d + 1 three ways."""
        ring, minors = cubic
        gb = ideal_groebner_basis(minors, ring)
        assert hilbert_function_of_initial_ideal(gb, d) == 3 * d + 1
        assert hilbert_function_by_linear_algebra(ring, minors, d) == 3 * d + 1
        assert QuotientRing(ring, gb).dimension(d) == 3 * d + 1

    def test_complete_intersection(self, quadrics):
        """Test h = (1, 3, 3, 1) for three general quadrics."""
        ring, polys = quadrics
        quotient = QuotientRing.from_generators(ring, polys)
        assert [quotient.dimension(d) for d in range(5)] == [1, 3, 3, 1, 0]
        assert quotient.top_degree(10) == 3

    def test_reduce_and_lift(self, quadrics):
        """Test that lifting reduced coordinates gives a representative of the same class."""
        ring, polys = quadrics
        quotient = QuotientRing.from_generators(ring, polys)
        f = ring.parse("x0^2 + 3*x1*x2")
        coordinates = quotient.reduce(f, 2)
        lifted = quotient.lift(coordinates, 2)
        assert np.array_equal(quotient.reduce(lifted, 2), coordinates)


class TestResolution:
    def test_koszul(self):
        """Test the Koszul Betti numbers of k = R/(x0, x1, x2)."""
        ring = PolynomialRing(2)
        base = QuotientRing(ring)
        columns = tuple((ring.variable(k),) for k in range(3))
        pres = GradedModulePresentation(base, (0,), (1, 1, 1), columns)
        resolution = minimal_free_resolution(pres)
        assert resolution.betti.entries == {(0, 0): 1, (1, 1): 3, (2, 2): 3, (3, 3): 1}
        assert not resolution.betti.truncated

    def test_twisted_cubic_is_hilbert_burch(self, cubic):
        """Test the resolution R ← R(-2)^3 ← R(-3)^2 of the twisted cubic."""
        ring, minors = cubic
        pres = _ideal_presentation(ring, minors)
        betti = minimal_free_resolution(pres).betti
        assert betti.entries == {(0, 0): 1, (1, 2): 3, (2, 3): 2}

    def test_alternating_sum(self, cubic):
        """Test that the Betti table reproduces the Hilbert function."""
        ring, minors = cubic
        pres = _ideal_presentation(ring, minors)
        betti = minimal_free_resolution(pres).betti
        for d in range(8):
            total = sum(
                (-1) ** i * value * ring.piece_dimension(d - j)
                for (i, j), value in betti.entries.items()
            )
            assert total == pres.hilbert_function(d) == 3 * d + 1

    def test_presentation_checks_degrees(self, cubic):
        """Test that an entry of the wrong degree is refused."""
        ring, minors = cubic
        with pytest.raises(InvalidSpecError):
            GradedModulePresentation(QuotientRing(ring), (0,), (3,), ((minors[0],),))

    def test_syzygy_two_degrees_above_bound(self):
        """Test that a syzygy two degrees above the bound marks the table as truncated."""
        ring = PolynomialRing(1)
        base = QuotientRing(ring)
        cubes = tuple((ring.parse(text),) for text in ("x0^3", "x1^3"))
        pres = GradedModulePresentation(base, (0,), (3, 3), cubes)
        betti = minimal_free_resolution(pres, degree_bound=4, strict=False).betti
        assert betti.truncated
        assert betti.length == 1
        with pytest.raises(TruncationExceeded):
            minimal_free_resolution(pres, degree_bound=4)
        assert minimal_free_resolution(pres, degree_bound=6).betti.entries == {
            (0, 0): 1,
            (1, 3): 2,
            (2, 6): 1,
        }

    def test_lookahead_window(self):
        """Test that only the probed degrees above the bound are searched."""
        ring = PolynomialRing(1)
        base = QuotientRing(ring)
        cubes = tuple((ring.parse(text),) for text in ("x0^3", "x1^3"))
        assert not minimal_kernel_generators(base, (3, 3), cubes, (0,), 4).beyond_bound
        found = minimal_kernel_generators(base, (3, 3), cubes, (0,), 4, lookahead=2)
        assert found.beyond_bound
        assert found.twists == []


class TestBettiTable:
    @pytest.fixture
    def table(self):
        return BettiTable.from_twists([[0], [4, 3, 3, 3, 3, 3, 3, 4, 4, 4], [5, 5, 6]])

    def test_summands(self, table):
        """Test the R(-j)^k rendering, largest shift first."""
        assert table.summands(0) == "R"
        assert table.summands(1) == "R(-4)^4 ⊕ R(-3)^6"
        assert table.summands(2) == "R(-6) ⊕ R(-5)^2"
        assert table.summands(5) == "0"

    def test_shape(self, table):
        """Test length, ranks and twists."""
        assert table.length == 2
        assert table.rank(1) == 10
        assert table.twists(2) == [5, 5, 6]
        assert BettiTable().length == -1

    def test_shifted(self, table):
        """Test that shifting by -1 drops step 0 and renumbers the rest."""
        ideal = table.shifted(-1)
        assert ideal.beta(0, 3) == 6
        assert ideal.beta(1, 6) == 1
        assert ideal.length == 1

    def test_difference_and_contains(self, table):
        """Test multiset difference and containment."""
        smaller = BettiTable({(0, 0): 1, (1, 3): 6, (2, 5): 2})
        assert table.contains(smaller)
        assert not smaller.contains(table)
        assert table.difference(smaller) == BettiTable({(1, 4): 4, (2, 6): 1})

    def test_json_round_trip(self, table):
        """Test that the JSON form reconstructs the table."""
        assert BettiTable.from_json(table.to_json()) == table

    def test_render(self, table):
        """Test the text rendering and the truncation note."""
        text = table.render()
        assert text.splitlines()[1].split() == ["total:", "1", "10", "3"]
        truncated = BettiTable({(0, 0): 1}, truncated=True, degree_bound=7)
        assert "truncated at internal degree 7" in truncated.render()
        assert BettiTable().render() == "total: 0"

    def test_zero_entries_dropped(self):
        """Test that zero entries are not stored."""
        assert BettiTable({(0, 0): 1, (1, 2): 0}).entries == {(0, 0): 1}
