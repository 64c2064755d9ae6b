"""Tests for the poly module."""

import math

import numpy as np
import pytest

from detstrata.arith import PrimeField
from detstrata.exceptions import InvalidSpecError
from detstrata.poly import (
    PolynomialRing,
    divides,
    graded_piece_dimension,
    grevlex_key,
    monomials_of_degree,
)


@pytest.fixture
def ring():
    """k[x0, x1, x2] over GF(10007)."""
    return PolynomialRing(2)


class TestMonomials:
    def test_grevlex_order(self):
        """Test that x1^2 > x0*x2 and x0 > x1 > x2 in grevlex."""
        assert grevlex_key((0, 2, 0)) > grevlex_key((1, 0, 1))
        assert grevlex_key((1, 0, 0)) > grevlex_key((0, 1, 0)) > grevlex_key((0, 0, 1))
        assert grevlex_key((0, 0, 2)) > grevlex_key((1, 0, 0))

    def test_monomials_descending(self):
        """Test that monomials of one degree come out in descending grevlex."""
        monomials = monomials_of_degree(3, 3)
        keys = [grevlex_key(m) for m in monomials]
        assert keys == sorted(keys, reverse=True)
        assert monomials[0] == (3, 0, 0)
        assert monomials[-1] == (0, 0, 3)

    @pytest.mark.parametrize(("d", "n"), [(0, 2), (1, 3), (4, 2), (5, 4)])
    def test_piece_dimension(self, d, n):
        """Test dim R_d = C(d + n, n)."""
        assert len(monomials_of_degree(d, n + 1)) == graded_piece_dimension(d, n)
        assert graded_piece_dimension(d, n) == math.comb(d + n, n)

    def test_negative_degree(self):
        """Test that negative degrees give empty pieces."""
        assert monomials_of_degree(-1, 3) == ()
        assert graded_piece_dimension(-2, 3) == 0

    def test_divides(self):
        """Test monomial divisibility."""
        assert divides((1, 0, 1), (2, 1, 1))
        assert not divides((0, 2, 0), (1, 1, 5))


class TestParse:
    def test_round_trip_text(self, ring):
        """Test that a parsed polynomial prints back in the same form."""
        assert str(ring.parse("3*x0^2*x1")) == "3*x0^2*x1"
        assert str(ring.parse("x1^2 + x0^2")) == "x0^2 + x1^2"

    def test_signs_and_repeats(self, ring):
        """Test that signs and repeated terms combine modulo p."""
        f = ring.parse("x0 - x1 + 2*x0")
        assert f == ring.variable(0) * 3 - ring.variable(1)
        assert ring.parse("x2 - x2").is_zero

    def test_constant(self, ring):
        """Test parsing of a bare constant."""
        assert ring.parse("7") == 7

    @pytest.mark.parametrize("text", ["", "x3", "y0", "x0^", "2*", "x0 +"])
    def test_invalid_text(self, ring, text):
        """Test that malformed text raises InvalidSpecError."""
        with pytest.raises(InvalidSpecError):
            ring.parse(text)


class TestPolynomial:
    def test_product(self, ring):
        """Test (x0 + x1)(x0 - x1) = x0^2 - x1^2."""
        x0, x1 = ring.variable(0), ring.variable(1)
        assert (x0 + x1) * (x0 - x1) == x0 * x0 - x1 * x1

    def test_leading_term(self, ring):
        """Test the leading monomial and monic normalisation."""
        f = ring.parse("2*x0*x2 + 5*x1^2")
        assert f.leading_monomial == (0, 2, 0)
        assert f.leading_coefficient == 5
        assert f.monic().leading_coefficient == 1

    def test_degree_and_homogeneity(self, ring):
        """Test degree and homogeneity of mixed and pure polynomials."""
        assert ring.parse("x0^2 + x1").degree == 2
        assert not ring.parse("x0^2 + x1").is_homogeneous
        assert ring.parse("x0*x1 + x2^2").is_homogeneous
        assert ring.zero().degree == -1

    def test_coefficients_in_basis(self, ring):
        """Test coefficient vectors against the monomial basis."""
        basis = ring.basis(2)
        f = ring.parse("x0^2 + 4*x2^2")
        vector = f.coefficients(basis)
        assert vector.sum() == 5
        assert ring.from_vector(basis, vector) == f

    def test_coefficients_wrong_degree(self, ring):
        """Test that a term outside the piece is refused."""
        with pytest.raises(ValueError):
            ring.parse("x0").coefficients(ring.basis(2))

    def test_random_homogeneous_is_deterministic(self, ring):
        """Test that equal seeds give equal forms of the requested degree."""
        f = ring.random_homogeneous(3, np.random.default_rng(5))
        g = ring.random_homogeneous(3, np.random.default_rng(5))
        assert f == g
        assert f.is_homogeneous
        assert f.degree == 3

    def test_random_form_of_negative_degree(self, ring):
        """Test that negative degrees give zero."""
        assert ring.random_homogeneous(-1, np.random.default_rng(0)).is_zero

    def test_different_fields_do_not_mix(self, ring):
        """Test that polynomials over different primes cannot be combined."""
        other = PolynomialRing(2, PrimeField(32003))
        with pytest.raises(ValueError):
            ring.variable(0) + other.variable(0)

    def test_variable_out_of_range(self, ring):
        """Test that x3 does not exist in k[x0, x1, x2]."""
        with pytest.raises(InvalidSpecError):
            ring.variable(3)
