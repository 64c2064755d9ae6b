"""Exact arithmetic over GF(p) and dense linear algebra on int64 arrays.

Every graded computation in the package ends up here: pieces of graded modules are
finite-dimensional GF(p)-vector spaces, and ranks, kernels and quotients of those pieces are
computed by Gaussian elimination with deterministic pivoting (first nonzero entry scanning
columns left to right), so results are bit-stable across runs.
"""

from __future__ import annotations

import bisect
import logging
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt
from sympy import isprime

from .config import DEFAULT_PRIME
from .exceptions import InconsistentSystem, InvalidSpecError

logger = logging.getLogger(__name__)

IntArray = npt.NDArray[np.int64]

# Products of two residues must fit in int64
MAX_PRIME = 2**31
_INT64_MAX = 2**63 - 1


@dataclass(frozen=True, slots=True)
class PrimeField:
    """The prime field GF(p)."""

    p: int = DEFAULT_PRIME

    def __post_init__(self) -> None:
        if not 2 < self.p < MAX_PRIME or not isprime(self.p):
            raise InvalidSpecError(f"p must be an odd prime below 2^31, got {self.p}")

    def element(self, value: int) -> FieldElement:
        return FieldElement(value % self.p, self.p)

    def inverse(self, value: int) -> int:
        """Multiplicative inverse of a nonzero residue.

        Raises:
            ZeroDivisionError: If value is 0 mod p
        """
        value %= self.p
        if value == 0:
            raise ZeroDivisionError(f"0 has no inverse in GF({self.p})")
        return pow(value, -1, self.p)


@dataclass(frozen=True, slots=True)
class FieldElement:
    """A residue class modulo p, stored as its representative in [0, p)."""

    value: int
    p: int

    def __post_init__(self) -> None:
        if not 0 <= self.value < self.p:
            raise ValueError(f"{self.value} is not a reduced residue mod {self.p}")

    def _coerce(self, other: FieldElement | int) -> int:
        if isinstance(other, FieldElement):
            if other.p != self.p:
                raise ValueError(f"cannot mix GF({self.p}) and GF({other.p})")
            return other.value
        return other

    def __add__(self, other: FieldElement | int) -> FieldElement:
        return FieldElement((self.value + self._coerce(other)) % self.p, self.p)

    __radd__ = __add__

    def __sub__(self, other: FieldElement | int) -> FieldElement:
        return FieldElement((self.value - self._coerce(other)) % self.p, self.p)

    def __rsub__(self, other: int) -> FieldElement:
        return FieldElement((other - self.value) % self.p, self.p)

    def __mul__(self, other: FieldElement | int) -> FieldElement:
        return FieldElement((self.value * self._coerce(other)) % self.p, self.p)

    __rmul__ = __mul__

    def __neg__(self) -> FieldElement:
        return FieldElement((-self.value) % self.p, self.p)

    def inverse(self) -> FieldElement:
        if self.value == 0:
            raise ZeroDivisionError(f"0 has no inverse in GF({self.p})")
        return FieldElement(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other: FieldElement | int) -> FieldElement:
        divisor = FieldElement(self._coerce(other) % self.p, self.p)
        return self * divisor.inverse()

    def __int__(self) -> int:
        return self.value

    def __bool__(self) -> bool:
        return self.value != 0


def as_array(rows: Sequence[Sequence[int]] | IntArray, p: int, cols: int | None = None) -> IntArray:
    """Copy data into a reduced int64 array; ``cols`` fixes the width of an empty input."""
    array = np.array(rows, dtype=np.int64)
    if array.size == 0:
        width = cols if cols is not None else (array.shape[1] if array.ndim == 2 else 0)
        return np.zeros((0, width), dtype=np.int64)
    if array.ndim == 1:
        array = array.reshape(1, -1)
    return array % p


def mod_matmul(left: IntArray, right: IntArray, p: int) -> IntArray:
    """Matrix product mod p, split along the inner dimension so int64 never overflows."""
    inner = left.shape[1]
    out = np.zeros((left.shape[0], right.shape[1]), dtype=np.int64)
    if inner == 0 or out.size == 0:
        return out
    chunk = max(1, _INT64_MAX // ((p - 1) ** 2) - 1)
    for start in range(0, inner, chunk):
        out = (out + left[:, start : start + chunk] @ right[start : start + chunk]) % p
    return out


def row_reduce(matrix: IntArray, p: int) -> tuple[IntArray, list[int]]:
    """Reduced row echelon form over GF(p).

    Args:
        matrix: 2-D array of residues (not modified)
        p: The prime

    Returns:
        The nonzero rows of the RREF and the list of pivot columns
    """
    a = np.array(matrix, dtype=np.int64) % p
    if a.ndim != 2:
        raise ValueError("row_reduce expects a 2-D array")
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nonzero = np.flatnonzero(a[r:, c])
        if nonzero.size == 0:
            continue
        k = r + int(nonzero[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        a[r, c:] = (a[r, c:] * pow(int(a[r, c]), -1, p)) % p
        factors = a[:, c].copy()
        factors[r] = 0
        targets = np.flatnonzero(factors)
        if targets.size:
            # The pivot row vanishes left of c
            a[targets, c:] = (a[targets, c:] - np.outer(factors[targets], a[r, c:])) % p
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rank_of(matrix: IntArray, p: int) -> int:
    if matrix.size == 0:
        return 0
    return len(row_reduce(matrix, p)[1])


def null_space(matrix: IntArray, p: int) -> IntArray:
    """Basis of {x : matrix @ x = 0}, one vector per row."""
    cols = matrix.shape[1]
    if matrix.shape[0] == 0:
        return np.eye(cols, dtype=np.int64)
    reduced, pivots = row_reduce(matrix, p)
    pivot_set = set(pivots)
    free = [c for c in range(cols) if c not in pivot_set]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    if free:
        basis[np.arange(len(free)), free] = 1
        if pivots:
            basis[:, pivots] = (-reduced[:, free].T) % p
    return basis


def left_null_space(matrix: IntArray, p: int) -> IntArray:
    """Basis of {y : y @ matrix = 0}, one vector per row."""
    return null_space(matrix.T, p)


class RowSpace:
    """A subspace of GF(p)^dim held as a basis in reduced row echelon form.

    Reduction of a vector modulo the subspace is ``v - v[pivots] @ basis``, which leaves the
    vector supported on the non-pivot coordinates; those coordinates therefore give a basis of
    the quotient space.
    """

    __slots__ = ("basis", "dim", "p", "pivots")

    def __init__(self, dim: int, p: int, rows: IntArray | None = None) -> None:
        self.dim = dim
        self.p = p
        self.basis: IntArray = np.zeros((0, dim), dtype=np.int64)
        self.pivots: list[int] = []
        if rows is not None and rows.size:
            self.basis, self.pivots = row_reduce(rows, p)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    @property
    def codimension(self) -> int:
        return self.dim - self.rank

    def free_coordinates(self) -> list[int]:
        pivot_set = set(self.pivots)
        return [c for c in range(self.dim) if c not in pivot_set]

    def reduce(self, vectors: IntArray) -> IntArray:
        """Reduce each row of ``vectors`` modulo the subspace."""
        vectors = np.atleast_2d(np.asarray(vectors, dtype=np.int64)) % self.p
        if not self.pivots or vectors.size == 0:
            return vectors
        return (vectors - mod_matmul(vectors[:, self.pivots], self.basis, self.p)) % self.p

    def quotient_coordinates(self, vectors: IntArray) -> IntArray:
        """Coordinates of the classes of ``vectors`` in the quotient by the subspace."""
        return self.reduce(vectors)[:, self.free_coordinates()]

    def contains(self, vector: IntArray) -> bool:
        return not self.reduce(vector).any()

    def add(self, vector: IntArray) -> bool:
        """Add one vector; returns whether it enlarged the subspace."""
        residue = self.reduce(vector)[0]
        nonzero = np.flatnonzero(residue)
        if nonzero.size == 0:
            return False
        c = int(nonzero[0])
        residue = (residue * pow(int(residue[c]), -1, self.p)) % self.p
        if self.pivots:
            factors = self.basis[:, c].copy()
            self.basis = (self.basis - np.outer(factors, residue)) % self.p
        position = bisect.bisect(self.pivots, c)
        self.basis = np.insert(self.basis, position, residue, axis=0)
        self.pivots.insert(position, c)
        return True

    def extend(self, vectors: IntArray) -> list[int]:
        """Add vectors in order; returns the indices of those that were independent."""
        return [k for k, row in enumerate(np.atleast_2d(vectors)) if self.add(row)]

    def copy(self) -> RowSpace:
        clone = RowSpace(self.dim, self.p)
        clone.basis = self.basis.copy()
        clone.pivots = list(self.pivots)
        return clone


@dataclass(frozen=True, slots=True, eq=False)
class ExactMatrix:
    """A dense matrix over GF(p)."""

    entries: IntArray
    field: PrimeField

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], field: PrimeField) -> ExactMatrix:
        width = len(rows[0]) if rows else 0
        return cls(as_array(rows, field.p, cols=width), field)

    @classmethod
    def zeros(cls, rows: int, cols: int, field: PrimeField) -> ExactMatrix:
        return cls(np.zeros((rows, cols), dtype=np.int64), field)

    @classmethod
    def identity(cls, size: int, field: PrimeField) -> ExactMatrix:
        return cls(np.eye(size, dtype=np.int64), field)

    @property
    def rows(self) -> int:
        return int(self.entries.shape[0])

    @property
    def cols(self) -> int:
        return int(self.entries.shape[1])

    def __getitem__(self, index: tuple[int, int]) -> FieldElement:
        return self.field.element(int(self.entries[index]))

    def transpose(self) -> ExactMatrix:
        return ExactMatrix(self.entries.T.copy(), self.field)

    def apply(self, vector: Sequence[int] | IntArray) -> IntArray:
        column = np.asarray(vector, dtype=np.int64).reshape(-1, 1) % self.field.p
        return mod_matmul(self.entries, column, self.field.p)[:, 0]

    def __matmul__(self, other: ExactMatrix) -> ExactMatrix:
        return ExactMatrix(mod_matmul(self.entries, other.entries, self.field.p), self.field)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.field == other.field and np.array_equal(self.entries, other.entries)

    def __hash__(self) -> int:
        return hash((self.field.p, self.entries.shape, self.entries.tobytes()))

    def rref(self) -> tuple[ExactMatrix, list[int]]:
        reduced, pivots = row_reduce(self.entries, self.field.p)
        return ExactMatrix(reduced, self.field), pivots


def rank(m: ExactMatrix) -> int:
    """Exact rank over GF(p)."""
    return rank_of(m.entries, m.field.p)


def kernel_basis(m: ExactMatrix) -> list[IntArray]:
    """Basis of the right null space; its length is ``m.cols - rank(m)``."""
    return list(null_space(m.entries, m.field.p))


def image_basis(m: ExactMatrix) -> list[IntArray]:
    """Basis of the column space, as reduced vectors of length ``m.rows``."""
    reduced, _ = row_reduce(m.entries.T, m.field.p)
    return list(reduced)


def solve(m: ExactMatrix, rhs: Sequence[int] | IntArray) -> IntArray:
    """Find some x with ``m @ x = rhs``.

    Args:
        m: Coefficient matrix
        rhs: Right-hand side of length ``m.rows``

    Returns:
        A solution vector (free variables set to zero)

    Raises:
        InconsistentSystem: If rhs is not in the column space of m
    """
    p = m.field.p
    target = np.asarray(rhs, dtype=np.int64).reshape(-1) % p
    if target.shape[0] != m.rows:
        raise ValueError(f"rhs has length {target.shape[0]}, expected {m.rows}")
    augmented = np.hstack([m.entries % p, target.reshape(-1, 1)])
    reduced, pivots = row_reduce(augmented, p)
    if pivots and pivots[-1] == m.cols:
        raise InconsistentSystem("right-hand side is outside the column space")
    solution = np.zeros(m.cols, dtype=np.int64)
    if pivots:
        solution[pivots] = reduced[:, m.cols]
    return solution
