"""Degree-zero Hom and Ext groups around M = coker φ* and the ideal I = I_t(𝒜).

Everything is linear algebra on graded pieces: a degree-zero homomorphism N → P is a choice
of images of the generators of N, one element of P in each generator degree, killing the
relations of N. Ext groups come either from the presentation sequence of M over R, from a
truncated minimal A-free resolution, or from the five-term sequence relating Ext over A and
over R, whose connecting map δ₀ is the trace-of-adjoint derivative of the minors.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass, field

import msgspec
import numpy as np

from .arith import IntArray, RowSpace, left_null_space, rank_of
from .config import Bounds
from .determinantal import DeterminantalAlgebra, GradedMatrix, determinant, minor_columns
from .exceptions import InconsistentSystem, InvalidSpecError, SyzygyIncompatible
from .groebner.graded import (
    Column,
    GradedModulePresentation,
    QuotientRing,
    block_layout,
    column_to_vector,
    free_piece_dimension,
    scalar_action_matrix,
)
from .groebner.resolution import FreeResolution, minimal_free_resolution
from .poly import Polynomial

logger = logging.getLogger(__name__)


@dataclass(slots=True)
class GradedHomSpace:
    """₀Hom(N, P): images of N's generators in P, modulo maps landing in P's relations.

    Vectors live in U = ⊕_q (⊕ S(-u_l))_{g_q}, the free lifts of the generator images.
    """

    source: GradedModulePresentation
    target: GradedModulePresentation
    dimension: int
    basis: list[tuple[Column, ...]]
    trivial: RowSpace = field(repr=False)

    def coordinates(self, images: Sequence[Column]) -> IntArray:
        """Vector in U of the assignment generator q ↦ images[q]."""
        ring = self.target.ring
        parts = [
            column_to_vector(ring, self.target.target, g, column)
            for g, column in zip(self.source.target, images, strict=True)
        ]
        if not parts:
            return np.zeros(0, dtype=np.int64)
        return np.concatenate(parts)

    def rank_of(self, vectors: Sequence[IntArray]) -> int:
        """Dimension of the span of the given homomorphisms inside ₀Hom(N, P)."""
        span = self.trivial.copy()
        return sum(1 for vector in vectors if span.add(vector))


def _unknown_layout(
    source: GradedModulePresentation, target: GradedModulePresentation
) -> list[tuple[int, int]]:
    layout: list[tuple[int, int]] = []
    offset = 0
    for g in source.target:
        size = free_piece_dimension(target.ring, target.target, g)
        layout.append((offset, size))
        offset += size
    return layout


def hom_degree_zero(
    source: GradedModulePresentation, target: GradedModulePresentation
) -> GradedHomSpace:
    """₀Hom_S(N, P) for modules presented over the same ring S.

    Args:
        source: Presentation of N
        target: Presentation of P

    Returns:
        The hom space with an explicit basis of homomorphisms
    """
    if source.ring is not target.ring:
        raise InvalidSpecError("hom_degree_zero needs both modules over the same ring")
    ring = target.ring
    p = ring.p
    layout = _unknown_layout(source, target)
    unknowns = sum(size for _, size in layout)

    # One block of columns per relation of N, reduced modulo the relations of P
    blocks: list[IntArray] = []
    for m, column in enumerate(source.columns):
        s = source.source[m]
        width = free_piece_dimension(ring, target.target, s)
        block = np.zeros((unknowns, width), dtype=np.int64)
        for q, psi in enumerate(column):
            offset, size = layout[q]
            if psi.is_zero or size == 0 or width == 0:
                continue
            block[offset : offset + size] = scalar_action_matrix(
                ring, target.target, source.target[q], psi
            )
        if width:
            block = target.relation_space(s).reduce(block) if unknowns else block
            blocks.append(block)
    conditions = np.hstack(blocks) if blocks else np.zeros((unknowns, 0), dtype=np.int64)
    solutions = left_null_space(conditions, p) if unknowns else conditions[:0]

    trivial = RowSpace(unknowns, p)
    for q, g in enumerate(source.target):
        offset, size = layout[q]
        relations = target.relation_space(g)
        for row in relations.basis:
            padded = np.zeros(unknowns, dtype=np.int64)
            padded[offset : offset + size] = row
            trivial.add(padded)

    span = trivial.copy()
    basis: list[tuple[Column, ...]] = []
    for vector in solutions:
        if span.add(vector):
            basis.append(_split(ring, target.target, source.target, layout, vector))
    logger.debug(f"₀Hom: {unknowns} unknowns, {len(solutions)} solutions, dim {len(basis)}")
    return GradedHomSpace(source, target, len(basis), basis, trivial)


def _split(
    ring: QuotientRing,
    twists: Sequence[int],
    degrees: Sequence[int],
    layout: Sequence[tuple[int, int]],
    vector: IntArray,
) -> tuple[Column, ...]:
    images: list[Column] = []
    for (offset, size), g in zip(layout, degrees, strict=True):
        chunk = vector[offset : offset + size]
        column: list[Polynomial] = []
        for (inner, width), e in zip(block_layout(ring, twists, g), twists, strict=True):
            column.append(ring.lift(chunk[inner : inner + width], g - e))
        images.append(tuple(column))
    return tuple(images)


def hom_A_MM(alg: DeterminantalAlgebra) -> GradedHomSpace:
    return hom_degree_zero(alg.module_over_A, alg.module_over_A)


def homAMM_is_k(alg: DeterminantalAlgebra) -> bool:
    """₀Hom_A(M, M) is one-dimensional, spanned by the identity."""
    return hom_A_MM(alg).dimension == 1


class Ext1R(msgspec.Struct, kw_only=True):
    """₀Ext¹_R(M, M) = ₀Hom(G*, M) / image of ₀Hom(F*, M)."""

    dimension: int
    hom_G_M: int
    hom_F_M: int
    hom_M_M: int


@dataclass(slots=True)
class Ext1RCocycles:
    summary: Ext1R
    cocycles: list[GradedMatrix]


def _matrix_coordinates(m: GradedMatrix) -> list[tuple[int, int, int]]:
    """(row, column, offset) of each entry block inside ⊕_{i,j} R_{a_j - b_i}, row-major."""
    layout: list[tuple[int, int, int]] = []
    offset = 0
    for i in range(m.rows):
        for j in range(m.cols):
            layout.append((i, j, offset))
            offset += m.ring.piece_dimension(m.spec.entry_degree(i, j))
    return layout


def _coordinate_owners(m: GradedMatrix) -> list[tuple[int, int, int]]:
    """Entry (i, j) and monomial index in R_{a_j - b_i} of every coordinate of V."""
    owners: list[tuple[int, int, int]] = []
    for i, j, _ in _matrix_coordinates(m):
        size = m.ring.piece_dimension(m.spec.entry_degree(i, j))
        owners.extend((i, j, k) for k in range(size))
    return owners


def ext1_R_MM(m: GradedMatrix) -> Ext1RCocycles:
    """₀Ext¹_R(M, M) with cocycle representatives η: G* → F*.

    Degree-zero maps η live in V = ⊕ R_{a_j - b_i}; the coboundaries are spanned by row
    operations Z·𝒜 and column operations 𝒜·Y. The cocycle basis consists of the unit vectors
    at the non-pivot coordinates of the coboundary space.
    """
    spec = m.spec
    ring = m.ring
    p = spec.p
    layout = _matrix_coordinates(m)
    offsets = {(i, j): offset for i, j, offset in layout}
    total = sum(m.ring.piece_dimension(spec.entry_degree(i, j)) for i, j, _ in layout)

    def embed(grid: dict[tuple[int, int], Polynomial]) -> IntArray:
        vector = np.zeros(total, dtype=np.int64)
        for (i, j), f in grid.items():
            if f.is_zero:
                continue
            d = spec.entry_degree(i, j)
            start = offsets[(i, j)]
            vector[start : start + ring.piece_dimension(d)] = f.coefficients(ring.basis(d))
        return vector

    generators: list[IntArray] = []
    # Row operations: row k += μ · row i with μ ∈ R_{b_i - b_k}
    for k in range(m.rows):
        for i in range(m.rows):
            for mu in ring.basis(spec.b[i] - spec.b[k]):
                generators.append(
                    embed({(k, j): m.entries[i][j].shift(mu) for j in range(m.cols)})
                )
    # Column operations: column j += μ · column j' with μ ∈ R_{a_j - a_j'}
    for j in range(m.cols):
        for source in range(m.cols):
            for mu in ring.basis(spec.a[j] - spec.a[source]):
                generators.append(
                    embed({(i, j): m.entries[i][source].shift(mu) for i in range(m.rows)})
                )
    coboundaries = RowSpace(total, p, np.vstack(generators) if generators else None)

    cocycles: list[GradedMatrix] = []
    owners = _coordinate_owners(m)
    for coordinate in coboundaries.free_coordinates():
        i, j, index = owners[coordinate]
        monomial = ring.basis(spec.entry_degree(i, j)).monomials[index]
        rows = [[ring.zero() for _ in range(m.cols)] for _ in range(m.rows)]
        rows[i][j] = ring.monomial(monomial)
        cocycles.append(GradedMatrix(spec, tuple(tuple(row) for row in rows)))

    pres = m.presentation()
    hom_G = sum(pres.hilbert_function(x) for x in spec.a)
    hom_F = sum(pres.hilbert_function(y) for y in spec.b)
    dimension = len(cocycles)
    hom_M = hom_degree_zero(pres, pres).dimension
    if hom_M != dimension - hom_G + hom_F:
        raise InconsistentSystem(
            f"₀Hom_R(M,M) = {hom_M} does not balance ₀Ext¹_R(M,M) = {dimension}, "
            f"₀Hom_R(G*,M) = {hom_G} and ₀Hom_R(F*,M) = {hom_F}"
        )
    summary = Ext1R(dimension=dimension, hom_G_M=hom_G, hom_F_M=hom_F, hom_M_M=hom_M)
    logger.debug(f"₀Ext¹_R(M,M) = {dimension} ({total} coordinates)")
    return Ext1RCocycles(summary, cocycles)


def trace_derivative(m: GradedMatrix, eta: GradedMatrix, columns: Sequence[int]) -> Polynomial:
    """tr(adj(𝒜_J) · η_J) = Σ_k det(𝒜_J with its k-th column replaced by η's)."""
    total = m.ring.zero()
    for k in range(len(columns)):
        grid = [
            [
                eta.entries[i][j] if position == k else m.entries[i][j]
                for position, j in enumerate(columns)
            ]
            for i in range(m.rows)
        ]
        total = total + determinant(grid, m.ring)
    return total


def tangent_images(alg: DeterminantalAlgebra, eta: GradedMatrix) -> list[Polynomial]:
    """The homomorphism f_J ↦ tr(adj(𝒜_J) η_J) of I → A, one image per minor.

    Raises:
        SyzygyIncompatible: If the assignment does not respect a syzygy of the minors
    """
    images = [trace_derivative(alg.matrix, eta, J) for J in minor_columns(alg.spec)]
    twists, syzygies = alg.syzygy_columns
    algebra = alg.algebra
    for s, sigma in zip(twists, syzygies, strict=True):
        combined = alg.ring.zero()
        for coefficient, image in zip(sigma, images, strict=True):
            if not coefficient.is_zero and not image.is_zero:
                combined = combined + coefficient * image
        if algebra.reduce(combined, s).any():
            raise SyzygyIncompatible(f"trace images violate a syzygy of degree {s}")
    return images


def hom_I_A_space(alg: DeterminantalAlgebra) -> GradedHomSpace:
    """₀Hom_A(I/I², A) = ₀Hom_R(I, A)."""
    return hom_degree_zero(alg.conormal, GradedModulePresentation.free(alg.algebra, (0,)))


def hom_I_A(alg: DeterminantalAlgebra) -> int:
    return hom_I_A_space(alg).dimension


def tangent_map_eM(alg: DeterminantalAlgebra, cocycles: Sequence[GradedMatrix]) -> IntArray:
    """Matrix of e_M: ₀Ext¹_R(M, M) → ₀Hom_R(I, A), one row per cocycle.

    Columns are the coordinates of the images f_J ↦ D_J(η) in ⊕_J A_{d_J}.
    """
    space = hom_I_A_space(alg)
    rows = [
        space.coordinates([(f,) for f in tangent_images(alg, eta)]) for eta in cocycles
    ]
    width = sum(alg.algebra.dimension(d) for d in alg.minor_degrees)
    return np.vstack(rows) if rows else np.zeros((0, width), dtype=np.int64)


def tensor_ideal_module(alg: DeterminantalAlgebra) -> GradedModulePresentation:
    """I ⊗ M over A.

    Generators f_J ⊗ e_i; relations are syzygies ⊗ e_i and f_J ⊗ (columns of 𝒜).
    """
    spec = alg.spec
    t = spec.t
    degrees = alg.minor_degrees
    twists, syzygies = alg.syzygy_columns
    zero = alg.ring.zero()
    size = len(degrees) * t
    generators = tuple(d + b for d in degrees for b in spec.b)
    source: list[int] = []
    columns: list[Column] = []
    for s, sigma in zip(twists, syzygies, strict=True):
        for i, b in enumerate(spec.b):
            column = [zero] * size
            for J, coefficient in enumerate(sigma):
                column[J * t + i] = coefficient
            source.append(s + b)
            columns.append(tuple(column))
    for J, d in enumerate(degrees):
        for j, a in enumerate(spec.a):
            column = [zero] * size
            for i in range(t):
                column[J * t + i] = alg.matrix.entries[i][j]
            source.append(d + a)
            columns.append(tuple(column))
    return GradedModulePresentation(alg.algebra, generators, tuple(source), tuple(columns))


class FiveTermDegreeZero(msgspec.Struct, kw_only=True):
    """Degree-zero strand of the five-term sequence.

    0 → Ext¹_A(M,M) → Ext¹_R(M,M) → E₂^{0,1} → Ext²_A(M,M) → Ext²_R(M,M)
    """

    ext1_A: int
    ext1_R: int
    e2_01: int
    rank_delta0: int
    ext2_kernel: int
    hom_I_A: int
    rank_eM: int
    delta0_injective: bool
    delta0_surjective: bool
    e2_equals_hom_I_A: bool


def five_term_degree_zero(
    alg: DeterminantalAlgebra, ext1: Ext1RCocycles | None = None
) -> FiveTermDegreeZero:
    """Assemble the degree-zero five-term sequence with δ₀ = i_{A,M} ∘ e_M.

    (E₂^{0,1})₀ = ₀Hom_R(I, Hom_A(M, M)) = ₀Hom_A(I ⊗ M, M); a cocycle η maps to
    f_J ⊗ e_i ↦ D_J(η)·e_i.
    """
    if ext1 is None:
        ext1 = ext1_R_MM(alg.matrix)
    spec = alg.spec
    e2 = hom_degree_zero(tensor_ideal_module(alg), alg.module_over_A)
    hom_IA = hom_I_A_space(alg)
    zero = alg.ring.zero()

    delta_vectors: list[IntArray] = []
    tangent_vectors: list[IntArray] = []
    for eta in ext1.cocycles:
        images = tangent_images(alg, eta)
        tangent_vectors.append(hom_IA.coordinates([(f,) for f in images]))
        assignment: list[Column] = []
        for f in images:
            for i in range(spec.t):
                assignment.append(tuple(f if slot == i else zero for slot in range(spec.t)))
        delta_vectors.append(e2.coordinates(assignment))

    rank_delta = e2.rank_of(delta_vectors)
    rank_eM = hom_IA.rank_of(tangent_vectors)
    result = FiveTermDegreeZero(
        ext1_A=ext1.summary.dimension - rank_delta,
        ext1_R=ext1.summary.dimension,
        e2_01=e2.dimension,
        rank_delta0=rank_delta,
        ext2_kernel=e2.dimension - rank_delta,
        hom_I_A=hom_IA.dimension,
        rank_eM=rank_eM,
        delta0_injective=rank_delta == ext1.summary.dimension,
        delta0_surjective=rank_delta == e2.dimension,
        e2_equals_hom_I_A=e2.dimension == hom_IA.dimension,
    )
    logger.info(
        f"five-term: ext1_R={result.ext1_R} rank δ₀={rank_delta} E2^01={result.e2_01} "
        + f"ext1_A={result.ext1_A}"
    )
    return result


def _quotient_blocks(
    pres: GradedModulePresentation, degrees: Sequence[int]
) -> tuple[list[int], int]:
    """Offsets of ⊕_g P_g in quotient coordinates, and the total dimension."""
    offsets: list[int] = []
    total = 0
    for g in degrees:
        offsets.append(total)
        total += pres.hilbert_function(g)
    return offsets, total


def _hom_differential(
    resolution: FreeResolution, k: int, target: GradedModulePresentation
) -> IntArray:
    """₀Hom(F_k, P) → ₀Hom(F_{k+1}, P) in quotient coordinates of P's graded pieces."""
    ring = target.ring
    sources = resolution.twists[k]
    images = resolution.twists[k + 1] if k + 1 < len(resolution.twists) else ()
    columns = resolution.differentials[k + 1] if k + 1 < len(resolution.differentials) else ()
    row_offsets, rows = _quotient_blocks(target, sources)
    col_offsets, cols = _quotient_blocks(target, images)
    out = np.zeros((rows, cols), dtype=np.int64)
    if rows == 0 or cols == 0:
        return out
    for g_index, g in enumerate(sources):
        relations = target.relation_space(g)
        free = relations.free_coordinates()
        if not free:
            continue
        units = np.zeros((len(free), relations.dim), dtype=np.int64)
        units[np.arange(len(free)), free] = 1
        for h_index, h in enumerate(images):
            f = columns[h_index][g_index]
            if f.is_zero or target.hilbert_function(h) == 0:
                continue
            moved = units @ scalar_action_matrix(ring, target.target, g, f) % ring.p
            block = target.relation_space(h).quotient_coordinates(moved)
            start, stop = row_offsets[g_index], col_offsets[h_index]
            out[start : start + len(free), stop : stop + block.shape[1]] = block
    return out


def _hom_complex_dimensions(
    resolution: FreeResolution, target: GradedModulePresentation, top: int
) -> list[int]:
    """dim ₀Ext^k(N, P) for k = 0..top from a resolution of N."""
    p = target.ring.p
    ranks = [
        rank_of(_hom_differential(resolution, k, target), p) for k in range(top + 1)
    ]
    values: list[int] = []
    for k in range(top + 1):
        if k >= len(resolution.twists):
            values.append(0)
            continue
        _, dimension = _quotient_blocks(target, resolution.twists[k])
        values.append(dimension - ranks[k] - (ranks[k - 1] if k else 0))
    return values


def _resolution_bound(
    alg: DeterminantalAlgebra, pres: GradedModulePresentation, bounds: Bounds
) -> tuple[int, bool]:
    """Internal-degree bound for Ext into a module over A, and whether it is exact.

    Over an artinian A only degrees up to the top degree of the target matter.
    """
    if alg.top_degree() is not None and bounds.degree is None:
        limit = alg.regularity_bound + max(pres.target, default=0) + 1
        top = pres.top_degree(limit)
        if top is not None:
            return top, True
    return bounds.degree_for(pres.max_twist, alg.spec.n), False


def ext_A_MM_truncated(alg: DeterminantalAlgebra, i: int, bounds: Bounds | None = None) -> int:
    """dim ₀Ext^i_A(M, M) from a minimal A-free resolution of M cut at step i + 1.

    Raises:
        TruncationExceeded: If the degree bound cuts off generators the answer depends on
    """
    if i < 0:
        raise InvalidSpecError(f"Ext index must be non-negative, got {i}")
    bounds = bounds or Bounds()
    module = alg.module_over_A
    bound, exact = _resolution_bound(alg, module, bounds)
    resolution = minimal_free_resolution(
        module, length=i + 1, degree_bound=bound, strict=not exact
    )
    value = _hom_complex_dimensions(resolution, module, i)[i]
    logger.debug(f"₀Ext^{i}_A(M,M) = {value} (degree bound {bound})")
    return value


class ConormalExt(msgspec.Struct, kw_only=True):
    hom: int
    ext1: int


def ext1_A_conormal(alg: DeterminantalAlgebra, bounds: Bounds | None = None) -> ConormalExt:
    """₀Hom_A(I/I², A) and ₀Ext¹_A(I/I², A) from a truncated resolution of I/I².

    Raises:
        TruncationExceeded: If the degree bound cuts off generators the answer depends on
    """
    bounds = bounds or Bounds()
    target = GradedModulePresentation.free(alg.algebra, (0,))
    bound, exact = _resolution_bound(alg, target, bounds)
    if not exact:
        bound = bounds.degree_for(alg.conormal.max_twist, alg.spec.n)
    resolution = minimal_free_resolution(
        alg.conormal, length=2, degree_bound=bound, strict=not exact
    )
    hom, ext1 = _hom_complex_dimensions(resolution, target, 1)
    return ConormalExt(hom=hom, ext1=ext1)
