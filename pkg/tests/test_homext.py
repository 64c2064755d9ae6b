"""Tests for the homext module."""

import dataclasses

import pytest

from detstrata import homext
from detstrata.determinantal import DegreeMatrixSpec, DeterminantalAlgebra
from detstrata.exceptions import InconsistentSystem, InvalidSpecError
from detstrata.groebner.graded import GradedModulePresentation, QuotientRing
from detstrata.homext import (
    ext1_A_conormal,
    ext1_R_MM,
    ext_A_MM_truncated,
    five_term_degree_zero,
    hom_A_MM,
    hom_degree_zero,
    hom_I_A,
    homAMM_is_k,
    tangent_map_eM,
)
from detstrata.poly import PolynomialRing


@pytest.fixture(scope="module")
def three_points():
    """Three general points in the plane: a general linear 2 x 3 matrix over k[x0, x1, x2]."""
    return DeterminantalAlgebra.sample(DegreeMatrixSpec(n=2, b=(0, 0), a=(1, 1, 1)))


@pytest.fixture(scope="module")
def artinian():
    """k[x0, x1]/(x0, x1)^2 as the minors of a linear 2 x 3 matrix."""
    return DeterminantalAlgebra.sample(DegreeMatrixSpec(n=1, b=(0, 0), a=(1, 1, 1)))


@pytest.fixture(scope="module")
def blin_i():
    """2 x 4 matrix over k[x0, x1, x2], linear except a cubic last column."""
    return DeterminantalAlgebra.sample(DegreeMatrixSpec(n=2, b=(0, 0), a=(1, 1, 1, 3)))


class TestHom:
    def test_endomorphisms_of_M(self, three_points):
        """Test ₀Hom_A(M, M) = k, spanned by the identity."""
        assert homAMM_is_k(three_points)
        space = hom_A_MM(three_points)
        ring = three_points.ring
        t = three_points.spec.t
        identity = [
            tuple(ring.one() if slot == q else ring.zero() for slot in range(t)) for q in range(t)
        ]
        assert space.rank_of([space.coordinates(identity)]) == 1
        assert space.rank_of([]) == 0

    def test_hom_I_A_of_points(self, three_points):
        """Test ₀Hom_R(I, A) = 6, the tangent space to the Hilbert scheme of 3 points."""
        assert hom_I_A(three_points) == 6

    def test_conormal_routes_agree(self, artinian):
        """Test that ₀Hom(I/I², A) agrees between the direct and the resolution computation."""
        assert ext1_A_conormal(artinian).hom == hom_I_A(artinian)


class TestExt1R:
    def test_points(self, three_points):
        """Test ₀Ext¹_R(M, M) = λ_2 = 6 for three points."""
        ext1 = ext1_R_MM(three_points.matrix)
        assert ext1.summary.dimension == 6
        assert len(ext1.cocycles) == 6
        assert ext1.summary.hom_M_M == 1

    def test_hom_M_M_balances_the_sequence(self, artinian):
        """Test that the direct ₀Hom_R(M, M) equals ₀ext¹ - ₀hom(G*, M) + ₀hom(F*, M)."""
        summary = ext1_R_MM(artinian.matrix).summary
        pres = artinian.matrix.presentation()
        assert summary.hom_M_M == hom_degree_zero(pres, pres).dimension
        assert summary.hom_M_M == summary.dimension - summary.hom_G_M + summary.hom_F_M

    def test_unbalanced_sequence_is_refused(self, three_points, monkeypatch):
        """Test that a ₀Hom_R(M, M) off the exact sequence raises."""
        real = homext.hom_degree_zero

        def inflated(source, target):
            space = real(source, target)
            return dataclasses.replace(space, dimension=space.dimension + 1)

        monkeypatch.setattr(homext, "hom_degree_zero", inflated)
        with pytest.raises(InconsistentSystem):
            ext1_R_MM(three_points.matrix)

    def test_cocycles_keep_degrees(self, three_points):
        """Test that cocycle representatives are degree-zero maps G* → F*."""
        for eta in ext1_R_MM(three_points.matrix).cocycles:
            assert eta.spec == three_points.spec

    def test_tangent_map_shape(self, three_points):
        """Test that e_M has one row per cocycle."""
        cocycles = ext1_R_MM(three_points.matrix).cocycles
        assert tangent_map_eM(three_points, cocycles).shape[0] == len(cocycles)


class TestFiveTerm:
    def test_c2(self, three_points):
        """Test that for c = 2 δ₀ is onto, ₀Ext¹_A(M, M) = 0 and e_M is an isomorphism."""
        five = five_term_degree_zero(three_points)
        assert five.ext1_R == 6
        assert five.ext1_A == 0
        assert five.e2_equals_hom_I_A
        assert five.delta0_surjective
        assert five.rank_eM == 6
        assert five.ext2_kernel == 0

    @pytest.mark.slow
    def test_nonzero_ext1_A(self, blin_i):
        """Test ₀ext¹_R(M, M) = 8 and ₀ext¹_A(M, M) = 2 with δ₀ onto."""
        five = five_term_degree_zero(blin_i)
        assert five.ext1_R == 8
        assert five.ext1_A == 2
        assert five.delta0_surjective

    @pytest.mark.slow
    def test_two_routes_to_ext1_A(self, blin_i):
        """Test that the truncated A-resolution gives the same ₀ext¹_A(M, M)."""
        assert ext_A_MM_truncated(blin_i, 1) == five_term_degree_zero(blin_i).ext1_A

    @pytest.mark.slow
    def test_strict_inclusions_with_quadratic_column(self):
        """Test ₀ext¹_R = 8, ₀ext¹_A = 2 and rank e_M < ₀hom(I, A) < dim E₂^{0,1}."""
        alg = DeterminantalAlgebra.sample(DegreeMatrixSpec(n=2, b=(0, 0), a=(1, 1, 1, 2)))
        five = five_term_degree_zero(alg)
        assert (five.ext1_R, five.ext1_A) == (8, 2)
        assert (five.rank_eM, five.hom_I_A, five.e2_01) == (6, 9, 12)
        assert five.rank_eM < five.hom_I_A < five.e2_01
        assert not five.e2_equals_hom_I_A


@pytest.mark.slow
@pytest.mark.parametrize(
    ("n", "b", "a"),
    [
        (1, (0, 0), (1, 1, 1)),
        (1, (0, 0), (1, 1, 2)),
        (1, (0, 0), (1, 2, 2)),
        (1, (0, 1), (2, 2, 2)),
        (1, (0, 0, 0), (1, 1, 1, 1)),
        (2, (0, 0), (1, 1, 1, 1)),
        (2, (0, 0), (1, 1, 1, 2)),
        (2, (0, 0), (1, 1, 2, 2)),
        (2, (0, 0), (1, 1, 1, 3)),
        (2, (-1, 0), (1, 1, 1, 1)),
    ],
)
def test_ext1_A_routes_agree(n, b, a):
    """Test ₀ext¹_A(M, M) from the A-resolution against ₀ext¹_R(M, M) - rank δ₀."""
    alg = DeterminantalAlgebra.sample(DegreeMatrixSpec(n=n, b=b, a=a))
    five = five_term_degree_zero(alg)
    assert ext_A_MM_truncated(alg, 1) == five.ext1_R - five.rank_delta0


def test_negative_ext_index(artinian):
    """Test that Ext^{-1} is refused."""
    with pytest.raises(InvalidSpecError):
        ext_A_MM_truncated(artinian, -1)


def test_hom_via_truncated_resolution(artinian):
    """Test that ₀Ext⁰_A(M, M) from the resolution matches ₀Hom_A(M, M)."""
    assert ext_A_MM_truncated(artinian, 0) == hom_A_MM(artinian).dimension


class TestHomDegreeZero:
    @pytest.fixture
    def modules(self):
        """R/(x0) and k = R/(x0, x1, x2) over k[x0, x1, x2]."""
        ring = PolynomialRing(2)
        base = QuotientRing(ring)
        line = GradedModulePresentation(base, (0,), (1,), ((ring.variable(0),),))
        point = GradedModulePresentation(
            base, (0,), (1, 1, 1), tuple((ring.variable(k),) for k in range(3))
        )
        return line, point

    def test_onto_residue_field(self, modules):
        """Test ₀Hom_R(R/(x0), k) = k."""
        line, point = modules
        assert hom_degree_zero(line, point).dimension == 1

    def test_no_torsion(self, modules):
        """Test ₀Hom_R(k, R/(x0)) = 0 since R/(x0) has positive depth."""
        line, point = modules
        assert hom_degree_zero(point, line).dimension == 0

    def test_rings_must_agree(self, modules):
        """Test that modules over different rings are refused."""
        line, _ = modules
        ring = PolynomialRing(2)
        other = GradedModulePresentation(QuotientRing(ring), (0,), (1,), ((ring.variable(1),),))
        with pytest.raises(InvalidSpecError):
            hom_degree_zero(line, other)
