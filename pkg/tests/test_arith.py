"""Tests for the arith module."""

import numpy as np
import pytest
from sympy import GF
from sympy.polys.matrices import DomainMatrix

from detstrata.arith import (
    ExactMatrix,
    PrimeField,
    RowSpace,
    image_basis,
    kernel_basis,
    mod_matmul,
    rank,
    solve,
)
from detstrata.exceptions import InconsistentSystem, InvalidSpecError

P = 10007


@pytest.fixture
def field():
    return PrimeField(P)


def _random_matrix(rng, rows, cols, field, rank_at_most=None):
    if rank_at_most is None:
        return ExactMatrix.from_rows(rng.integers(0, field.p, size=(rows, cols)).tolist(), field)
    left = rng.integers(0, field.p, size=(rows, rank_at_most))
    right = rng.integers(0, field.p, size=(rank_at_most, cols))
    return ExactMatrix(mod_matmul(left, right, field.p), field)


class TestPrimeField:
    def test_rejects_composite(self):
        """Test that a composite modulus is refused."""
        with pytest.raises(InvalidSpecError):
            PrimeField(10005)

    def test_rejects_two_and_large_primes(self):
        """Test the range 2 < p < 2^31."""
        with pytest.raises(InvalidSpecError):
            PrimeField(2)
        with pytest.raises(InvalidSpecError):
            PrimeField(2**31 + 11)

    def test_element_arithmetic(self, field):
        """Test field operations against integer arithmetic mod p."""
        x, y = field.element(1234), field.element(9999)
        assert int(x + y) == (1234 + 9999) % P
        assert int(x - y) == (1234 - 9999) % P
        assert int(x * y) == (1234 * 9999) % P
        assert int(-x) == P - 1234
        assert int(x * x.inverse()) == 1
        assert int((x / y) * y) == 1234

    def test_inverse_of_zero(self, field):
        """Test that 0 has no inverse."""
        with pytest.raises(ZeroDivisionError):
            field.inverse(P)

    def test_element_is_reduced(self, field):
        """Test that elements are stored in [0, p)."""
        assert int(field.element(-1)) == P - 1
        assert not field.element(2 * P)


class TestRank:
    @pytest.mark.parametrize(("rows", "cols", "r"), [(5, 7, 3), (8, 4, 4), (6, 6, 1), (4, 9, 0)])
    def test_rank_matches_sympy(self, field, rows, cols, r):
        """Test rank against sympy's DomainMatrix over GF(p)."""
        rng = np.random.default_rng(rows * cols)
        m = _random_matrix(rng, rows, cols, field, rank_at_most=r)
        reference = DomainMatrix(
            [[GF(P)(int(v)) for v in row] for row in m.entries.tolist()], (rows, cols), GF(P)
        )
        assert rank(m) == reference.rank()

    def test_rank_nullity(self, field):
        """Test that rank plus kernel dimension equals the number of columns."""
        rng = np.random.default_rng(7)
        for rows, cols in [(3, 8), (7, 5), (6, 6)]:
            m = _random_matrix(rng, rows, cols, field, rank_at_most=min(rows, cols) - 1)
            kernel = kernel_basis(m)
            assert rank(m) + len(kernel) == cols
            for v in kernel:
                assert not m.apply(v).any()

    def test_image_basis_spans_columns(self, field):
        """Test that the image basis has rank(m) vectors."""
        m = ExactMatrix.from_rows([[1, 2, 3], [2, 4, 6], [0, 1, 1]], field)
        assert len(image_basis(m)) == rank(m) == 2

    def test_rref_is_idempotent(self, field):
        """Test that reducing a reduced matrix changes nothing."""
        rng = np.random.default_rng(3)
        reduced, pivots = _random_matrix(rng, 4, 6, field).rref()
        again, pivots_again = reduced.rref()
        assert again == reduced
        assert pivots == pivots_again


class TestSolve:
    def test_solution_satisfies_system(self, field):
        """Test that solve returns an actual solution."""
        rng = np.random.default_rng(11)
        m = _random_matrix(rng, 4, 6, field)
        rhs = rng.integers(0, P, size=4)
        x = solve(m, rhs)
        assert np.array_equal(m.apply(x), rhs % P)

    def test_inconsistent_system(self, field):
        """Test that an unsolvable system raises InconsistentSystem."""
        m = ExactMatrix.from_rows([[1, 1], [2, 2]], field)
        with pytest.raises(InconsistentSystem):
            solve(m, [1, 3])

    def test_identity(self, field):
        """Test solving against the identity matrix."""
        x = solve(ExactMatrix.identity(3, field), [4, 5, 6])
        assert x.tolist() == [4, 5, 6]


class TestRowSpace:
    def test_add_reports_independence(self):
        """Test that only new directions enlarge the subspace."""
        space = RowSpace(3, P)
        assert space.add(np.array([1, 2, 0]))
        assert space.add(np.array([0, 1, 1]))
        assert not space.add(np.array([1, 3, 1]))
        assert space.rank == 2
        assert space.codimension == 1

    def test_contains_and_reduce(self):
        """Test that members reduce to zero and non-members do not."""
        space = RowSpace(3, P, np.array([[1, 0, 1], [0, 1, 1]]))
        assert space.contains(np.array([2, 3, 5]))
        assert not space.contains(np.array([0, 0, 1]))
        assert space.quotient_coordinates(np.array([[0, 0, 1]])).shape == (1, 1)

    def test_extend_returns_independent_indices(self):
        """Test that extend reports which vectors were kept."""
        space = RowSpace(4, P)
        kept = space.extend(np.array([[1, 0, 0, 0], [2, 0, 0, 0], [0, 0, 1, 0]]))
        assert kept == [0, 2]

    def test_copy_is_independent(self):
        """Test that a copy does not share state with its original."""
        space = RowSpace(2, P, np.array([[1, 0]]))
        clone = space.copy()
        clone.add(np.array([0, 1]))
        assert space.rank == 1
        assert clone.rank == 2
