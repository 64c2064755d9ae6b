"""Degree-wise linear algebra over S = R/J and over graded modules presented over S.

A graded piece S_d is the span of the standard monomials of degree d (those outside the
initial ideal of J); the normal form of every degree-d monomial is tabulated once per degree,
so reducing a polynomial or building a multiplication matrix is a table lookup.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np

from ..arith import IntArray, RowSpace, rank_of
from ..exceptions import InvalidSpecError
from ..poly import Polynomial, PolynomialRing, divides, monomial_product, monomial_quotient
from ..types import Monomial
from .buchberger import GroebnerBasis, ideal_groebner_basis

logger = logging.getLogger(__name__)

Column = tuple[Polynomial, ...]


@dataclass(frozen=True, slots=True)
class _Piece:
    degree: int
    standard: tuple[Monomial, ...]
    index: dict[Monomial, int]
    table: IntArray


class QuotientRing:
    """The graded ring S = R/J for a homogeneous ideal J (J = 0 gives R itself)."""

    def __init__(self, ring: PolynomialRing, gb: GroebnerBasis | None = None) -> None:
        if gb is not None and gb.module.rank != 1:
            raise InvalidSpecError("QuotientRing needs an ideal Gröbner basis")
        self.ring = ring
        self.gb = gb
        self._leads: tuple[Monomial, ...] = gb.leading_monomials if gb is not None else ()
        self._elements = (
            [dict((m, c) for (_, m), c in g.terms.items()) for g in gb.elements]
            if gb is not None
            else []
        )
        self._pieces: dict[int, _Piece] = {}

    @classmethod
    def from_generators(
        cls, ring: PolynomialRing, generators: Sequence[Polynomial]
    ) -> QuotientRing:
        return cls(ring, ideal_groebner_basis(generators, ring))

    @property
    def p(self) -> int:
        return self.ring.field.p

    @property
    def is_polynomial_ring(self) -> bool:
        return not self._leads

    def _piece(self, d: int) -> _Piece:
        cached = self._pieces.get(d)
        if cached is not None:
            return cached
        basis = self.ring.basis(d)
        standard = tuple(m for m in basis if not any(divides(lead, m) for lead in self._leads))
        index = {m: k for k, m in enumerate(standard)}
        table = np.zeros((len(basis), len(standard)), dtype=np.int64)
        p = self.p
        # Normal forms only involve smaller monomials, so walk R_d upwards in grevlex
        for m in reversed(basis.monomials):
            row = basis.index[m]
            if m in index:
                table[row, index[m]] = 1
                continue
            position = next(k for k, lead in enumerate(self._leads) if divides(lead, m))
            lead = self._leads[position]
            shift = monomial_quotient(m, lead)
            accumulated = np.zeros(len(standard), dtype=np.int64)
            for tau, c in self._elements[position].items():
                if tau == lead:
                    continue
                accumulated -= c * table[basis.index[monomial_product(tau, shift)]]
                accumulated %= p
            table[row] = accumulated
        piece = _Piece(d, standard, index, table)
        self._pieces[d] = piece
        return piece

    def standard_monomials(self, d: int) -> tuple[Monomial, ...]:
        return self._piece(d).standard if d >= 0 else ()

    def dimension(self, d: int) -> int:
        """dim S_d."""
        if d < 0:
            return 0
        if self.is_polynomial_ring:
            return len(self.ring.basis(d))
        return len(self._piece(d).standard)

    hilbert_function = dimension

    def top_degree(self, limit: int) -> int | None:
        """Largest d with S_d ≠ 0 when S is artinian, or None if S_d ≠ 0 up to ``limit``."""
        for d in range(limit + 1):
            if self.dimension(d) == 0:
                return d - 1
        return None

    def reduce(self, f: Polynomial, d: int) -> IntArray:
        """Coordinates of the class of a degree-d form in the standard basis of S_d."""
        piece = self._piece(d)
        out = np.zeros(len(piece.standard), dtype=np.int64)
        if f.is_zero or d < 0:
            return out
        basis = self.ring.basis(d)
        for m, c in f.terms.items():
            if sum(m) != d:
                raise InvalidSpecError(f"term of degree {sum(m)} in a degree-{d} reduction")
            out = (out + c * piece.table[basis.index[m]]) % self.p
        return out

    def lift(self, coordinates: IntArray, d: int) -> Polynomial:
        """The polynomial in standard monomials with the given coordinates."""
        standard = self.standard_monomials(d)
        return Polynomial(
            self.ring, {m: int(c) for m, c in zip(standard, coordinates, strict=True) if c}
        )

    def multiplication_matrix(self, f: Polynomial, d: int) -> IntArray:
        """Matrix of S_d → S_{d + deg f}, v ↦ v·f, one row per standard monomial of S_d."""
        source = self.standard_monomials(d)
        if f.is_zero or not source:
            target_degree = d + max(f.degree, 0)
            return np.zeros((len(source), self.dimension(target_degree)), dtype=np.int64)
        if not f.is_homogeneous:
            raise InvalidSpecError("multiplication by an inhomogeneous polynomial")
        target_degree = d + f.degree
        target = self._piece(target_degree)
        basis = self.ring.basis(target_degree)
        out = np.zeros((len(source), len(target.standard)), dtype=np.int64)
        for m, c in f.terms.items():
            rows = [basis.index[monomial_product(mu, m)] for mu in source]
            out = (out + c * target.table[rows]) % self.p
        return out


def block_layout(ring: QuotientRing, twists: Sequence[int], d: int) -> list[tuple[int, int]]:
    """(offset, size) of each summand S(-e)_d inside (⊕ S(-e_k))_d."""
    layout: list[tuple[int, int]] = []
    offset = 0
    for e in twists:
        size = ring.dimension(d - e)
        layout.append((offset, size))
        offset += size
    return layout


def free_piece_dimension(ring: QuotientRing, twists: Sequence[int], d: int) -> int:
    return sum(ring.dimension(d - e) for e in twists)


def graded_map_matrix(
    ring: QuotientRing,
    source: Sequence[int],
    target: Sequence[int],
    columns: Sequence[Column],
    d: int,
) -> IntArray:
    """Degree-d matrix of the degree-zero map ⊕ S(-s_k) → ⊕ S(-e_l) with the given columns.

    Rows index the degree-d basis of the source, columns the degree-d basis of the target;
    ``columns[k][l]`` is the image of generator k in summand l (degree s_k - e_l or zero).
    """
    source_layout = block_layout(ring, source, d)
    target_layout = block_layout(ring, target, d)
    rows = sum(size for _, size in source_layout)
    cols = sum(size for _, size in target_layout)
    out = np.zeros((rows, cols), dtype=np.int64)
    for k, column in enumerate(columns):
        row_offset, row_size = source_layout[k]
        if row_size == 0:
            continue
        for slot, f in enumerate(column):
            col_offset, col_size = target_layout[slot]
            if f.is_zero or col_size == 0:
                continue
            out[row_offset : row_offset + row_size, col_offset : col_offset + col_size] = (
                ring.multiplication_matrix(f, d - source[k])
            )
    return out


def scalar_action_matrix(
    ring: QuotientRing, twists: Sequence[int], d: int, f: Polynomial
) -> IntArray:
    """Matrix of multiplication by a form f from (⊕ S(-e))_d to (⊕ S(-e))_{d + deg f}."""
    source_layout = block_layout(ring, twists, d)
    target_layout = block_layout(ring, twists, d + f.degree)
    out = np.zeros(
        (sum(s for _, s in source_layout), sum(s for _, s in target_layout)), dtype=np.int64
    )
    for k, e in enumerate(twists):
        row_offset, row_size = source_layout[k]
        col_offset, col_size = target_layout[k]
        if row_size and col_size:
            out[row_offset : row_offset + row_size, col_offset : col_offset + col_size] = (
                ring.multiplication_matrix(f, d - e)
            )
    return out


def column_to_vector(
    ring: QuotientRing, twists: Sequence[int], d: int, column: Column
) -> IntArray:
    """Coordinates of a degree-d element of ⊕ S(-e_l) given by its components."""
    parts = [ring.reduce(f, d - e) for f, e in zip(column, twists, strict=True)]
    if not parts:
        return np.zeros(0, dtype=np.int64)
    return np.concatenate(parts)


def vector_to_column(
    ring: QuotientRing, twists: Sequence[int], d: int, vector: IntArray
) -> Column:
    """Components (in standard monomials) of a degree-d element of ⊕ S(-e_l)."""
    column: list[Polynomial] = []
    for (offset, size), e in zip(block_layout(ring, twists, d), twists, strict=True):
        column.append(ring.lift(vector[offset : offset + size], d - e))
    return tuple(column)


@dataclass(frozen=True, slots=True, eq=False)
class GradedModulePresentation:
    """The cokernel of a degree-zero map ⊕ S(-s_k) → ⊕ S(-e_l) over S.

    ``columns[k]`` holds the image of the k-th source generator, one entry per target
    generator, each homogeneous of degree s_k - e_l (or zero).
    """

    ring: QuotientRing
    target: tuple[int, ...]
    source: tuple[int, ...] = ()
    columns: tuple[Column, ...] = ()
    _relations: dict[int, RowSpace] = field(
        default_factory=dict[int, RowSpace], init=False, repr=False
    )

    def __post_init__(self) -> None:
        if len(self.columns) != len(self.source):
            raise InvalidSpecError("presentation needs one column per source generator")
        for k, column in enumerate(self.columns):
            if len(column) != len(self.target):
                raise InvalidSpecError(
                    f"column {k} has {len(column)} entries, expected {len(self.target)}"
                )
            for slot, f in enumerate(column):
                if f.is_zero:
                    continue
                if not f.is_homogeneous or f.degree != self.source[k] - self.target[slot]:
                    raise InvalidSpecError(
                        f"entry ({slot}, {k}) is not homogeneous of degree "
                        + f"{self.source[k] - self.target[slot]}"
                    )

    @classmethod
    def free(cls, ring: QuotientRing, target: Sequence[int]) -> GradedModulePresentation:
        return cls(ring, tuple(target))

    @property
    def max_twist(self) -> int:
        return max((*self.target, *self.source), default=0)

    def free_dimension(self, d: int) -> int:
        return free_piece_dimension(self.ring, self.target, d)

    def relation_space(self, d: int) -> RowSpace:
        """The degree-d piece of the image of the presentation map, in target coordinates."""
        cached = self._relations.get(d)
        if cached is None:
            images = graded_map_matrix(self.ring, self.source, self.target, self.columns, d)
            cached = RowSpace(self.free_dimension(d), self.ring.p, images)
            self._relations[d] = cached
        return cached

    def hilbert_function(self, d: int) -> int:
        """dim of the degree-d piece of the cokernel."""
        return self.relation_space(d).codimension

    def top_degree(self, limit: int) -> int | None:
        """Largest degree with a nonzero piece for a finite-length module, else None."""
        top_ring = self.ring.top_degree(limit)
        if top_ring is None:
            return None
        candidate = top_ring + max(self.target, default=0)
        while candidate >= min(self.target, default=0) and self.hilbert_function(candidate) == 0:
            candidate -= 1
        return candidate


def hilbert_function_by_linear_algebra(
    ring: PolynomialRing, generators: Sequence[Polynomial], d: int
) -> int:
    """H_{R/J}(d) as dim R_d minus the rank of all degree-d monomial multiples of generators."""
    basis = ring.basis(d)
    rows: list[IntArray] = []
    for g in generators:
        if g.is_zero or g.degree > d:
            continue
        for mu in ring.basis(d - g.degree):
            rows.append(g.shift(mu).coefficients(basis))
    if not rows:
        return len(basis)
    return len(basis) - rank_of(np.vstack(rows), ring.field.p)
