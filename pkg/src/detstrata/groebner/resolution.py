"""Minimal graded free resolutions computed degree by degree, and their Betti tables."""

from __future__ import annotations

import logging
from collections import Counter
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

import numpy as np

from ..arith import IntArray, RowSpace, left_null_space, mod_matmul
from ..config import DEFAULT_HOMOLOGICAL_BOUND
from ..exceptions import TruncationExceeded
from ..types import BettiEntryData
from .graded import (
    Column,
    GradedModulePresentation,
    QuotientRing,
    block_layout,
    free_piece_dimension,
    graded_map_matrix,
    scalar_action_matrix,
    vector_to_column,
)

logger = logging.getLogger(__name__)


@dataclass(slots=True)
class BettiTable:
    """Graded Betti numbers β_{i,j}: i homological degree, j internal degree."""

    entries: dict[tuple[int, int], int] = field(default_factory=dict[tuple[int, int], int])
    truncated: bool = False
    degree_bound: int | None = None

    def __post_init__(self) -> None:
        self.entries = {key: value for key, value in sorted(self.entries.items()) if value}

    @classmethod
    def from_twists(
        cls,
        twists: Sequence[Iterable[int]],
        truncated: bool = False,
        degree_bound: int | None = None,
    ) -> BettiTable:
        """Build a table from the generator degrees of each homological step."""
        entries: Counter[tuple[int, int]] = Counter()
        for i, step in enumerate(twists):
            for j in step:
                entries[(i, j)] += 1
        return cls(dict(entries), truncated, degree_bound)

    def beta(self, i: int, j: int) -> int:
        return self.entries.get((i, j), 0)

    @property
    def length(self) -> int:
        """Largest homological degree with a nonzero entry (-1 for the empty table)."""
        return max((i for i, _ in self.entries), default=-1)

    def rank(self, i: int) -> int:
        return sum(value for (k, _), value in self.entries.items() if k == i)

    def twists(self, i: int) -> list[int]:
        """Generator degrees of step i, with multiplicity, ascending."""
        return sorted(j for (k, j), value in self.entries.items() if k == i for _ in range(value))

    def shifted(self, offset: int = -1) -> BettiTable:
        """Reindex homological degrees by ``offset``, dropping anything that becomes negative.

        The table of an ideal I is the table of R/I shifted by -1.
        """
        return BettiTable(
            {(i + offset, j): v for (i, j), v in self.entries.items() if i + offset >= 0},
            self.truncated,
            self.degree_bound,
        )

    def difference(self, other: BettiTable) -> BettiTable:
        """Entrywise multiset difference; entries missing from ``self`` are ignored."""
        return BettiTable(
            {key: max(value - other.beta(*key), 0) for key, value in self.entries.items()}
        )

    def contains(self, other: BettiTable) -> bool:
        return all(self.beta(i, j) >= value for (i, j), value in other.entries.items())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BettiTable):
            return NotImplemented
        return self.entries == other.entries

    def summands(self, i: int) -> str:
        """Step i written as ``R(-5)^4 ⊕ R(-4)^4``, largest shift first."""
        parts: list[str] = []
        for (k, j), value in sorted(self.entries.items(), key=lambda item: -item[0][1]):
            if k != i:
                continue
            shift = f"R({-j})" if j else "R"
            parts.append(shift if value == 1 else f"{shift}^{value}")
        return " ⊕ ".join(parts) if parts else "0"

    def to_json(self) -> list[BettiEntryData]:
        return [{"i": i, "j": j, "beta": value} for (i, j), value in self.entries.items()]

    @classmethod
    def from_json(cls, data: Iterable[BettiEntryData]) -> BettiTable:
        return cls({(item["i"], item["j"]): item["beta"] for item in data})

    def render(self) -> str:
        """Text table: a header of homological degrees, a ``total:`` row, then one row per j."""
        if not self.entries:
            return "total: 0"
        columns = range(self.length + 1)
        degrees = sorted({j for _, j in self.entries})
        width = max(len(str(v)) for v in (*self.entries.values(), *map(self.rank, columns)))
        width = max(width, len(str(self.length)))
        label = max(len("total:"), *(len(f"{j}:") for j in degrees))
        lines = [" " * label + " " + " ".join(str(i).rjust(width) for i in columns)]
        lines.append(
            "total:".rjust(label) + " " + " ".join(str(self.rank(i)).rjust(width) for i in columns)
        )
        for j in degrees:
            cells = [str(self.beta(i, j)) if self.beta(i, j) else "." for i in columns]
            lines.append(f"{j}:".rjust(label) + " " + " ".join(c.rjust(width) for c in cells))
        if self.truncated:
            lines.append(f"(truncated at internal degree {self.degree_bound})")
        return "\n".join(lines)


@dataclass(slots=True)
class FreeResolution:
    """A minimal free resolution F_0 ← F_1 ← … of a presented module over S.

    ``differentials[0]`` maps the generators of F_0 into the target free module of the
    presentation; ``differentials[k]`` for k ≥ 1 maps F_k into F_{k-1}.
    """

    ring: QuotientRing
    target: tuple[int, ...]
    twists: list[tuple[int, ...]]
    differentials: list[tuple[Column, ...]]
    betti: BettiTable
    degree_bound: int


@dataclass(slots=True)
class KernelGenerators:
    twists: list[int]
    columns: list[Column]
    beyond_bound: bool


def minimal_kernel_generators(
    ring: QuotientRing,
    source: Sequence[int],
    columns: Sequence[Column],
    target: Sequence[int],
    degree_bound: int,
    relations: GradedModulePresentation | None = None,
    lookahead: int = 1,
) -> KernelGenerators:
    """Minimal generators, up to ``degree_bound``, of the kernel of ⊕ S(-s_k) → T.

    T is the free module ⊕ S(-e_l), or its quotient by ``relations`` when given. In each
    degree d the kernel K_d is computed by linear algebra and the new generators are a
    complement of S_1·K_{d-1} chosen in RREF order. Degrees ``degree_bound + 1`` through
    ``degree_bound + lookahead`` are probed and ``beyond_bound`` reports whether new generators
    appear in any of them.
    """
    p = ring.p
    found = KernelGenerators([], [], False)
    if not source:
        return found
    variables = [ring.ring.variable(v) for v in range(ring.ring.nvars)]
    previous: IntArray | None = None
    for d in range(min(source), degree_bound + lookahead + 1):
        dimension = free_piece_dimension(ring, source, d)
        if dimension == 0:
            previous = None
            continue
        images = graded_map_matrix(ring, source, target, columns, d)
        if relations is not None and images.shape[1]:
            images = relations.relation_space(d).reduce(images)
        kernel = left_null_space(images, p)
        span = RowSpace(dimension, p)
        if previous is not None and previous.shape[0]:
            shifted = [
                mod_matmul(previous, scalar_action_matrix(ring, source, d - 1, x), p)
                for x in variables
            ]
            span = RowSpace(dimension, p, np.vstack(shifted))
        for vector in kernel:
            if span.add(vector):
                if d > degree_bound:
                    found.beyond_bound = True
                    continue
                found.twists.append(d)
                found.columns.append(vector_to_column(ring, source, d, vector))
        previous = kernel
    return found


def cokernel_generators(pres: GradedModulePresentation, degree_bound: int) -> list[int]:
    """Indices of target generators that form a minimal generating set of the cokernel."""
    chosen: list[int] = []
    ring = pres.ring
    for d in sorted(set(pres.target)):
        if d > degree_bound:
            break
        layout = block_layout(ring, pres.target, d)
        slots = [k for k, e in enumerate(pres.target) if e == d]
        coordinates = [layout[k][0] for k in slots]
        relations = pres.relation_space(d)
        projected = relations.basis[:, coordinates] if relations.rank else None
        span = RowSpace(len(slots), ring.p, projected)
        for position, k in enumerate(slots):
            unit = np.zeros(len(slots), dtype=np.int64)
            unit[position] = 1
            if span.add(unit):
                chosen.append(k)
    return chosen


def minimal_free_resolution(
    pres: GradedModulePresentation,
    *,
    length: int | None = None,
    degree_bound: int | None = None,
    strict: bool = True,
    lookahead: int | None = None,
) -> FreeResolution:
    """Minimal graded free resolution of the cokernel of ``pres``, degree by degree.

    Betti numbers β_{i,j} are exact for every j ≤ degree_bound. Over a polynomial ring the
    default length is n + 1, where the resolution ends; over a quotient ring it is the
    homological bound.

    Args:
        pres: Presentation of the module over S
        length: Last homological degree to compute
        degree_bound: Internal-degree bound (default: largest twist + n + 3)
        strict: Raise when generators appear above the bound instead of labelling the table
            as truncated
        lookahead: Degrees above the bound probed for generators (default: one per variable)

    Returns:
        The resolution with its differentials and Betti table

    Raises:
        TruncationExceeded: If ``strict`` and the degree bound cuts off generators
    """
    ring = pres.ring
    n = ring.ring.n
    if degree_bound is None:
        degree_bound = pres.max_twist + n + 3
    if length is None:
        length = n + 1 if ring.is_polynomial_ring else DEFAULT_HOMOLOGICAL_BOUND
    if lookahead is None:
        lookahead = ring.ring.nvars
    truncated = any(e > degree_bound for e in pres.target)

    chosen = cokernel_generators(pres, degree_bound)
    zero = ring.ring.zero()
    one = ring.ring.one()
    twists: list[tuple[int, ...]] = [tuple(pres.target[k] for k in chosen)]
    differentials: list[tuple[Column, ...]] = [
        tuple(
            tuple(one if slot == k else zero for slot in range(len(pres.target)))
            for k in chosen
        )
    ]
    source_target: tuple[int, ...] = pres.target
    relations: GradedModulePresentation | None = pres
    for step in range(1, length + 1):
        generators = minimal_kernel_generators(
            ring,
            twists[-1],
            differentials[-1],
            source_target,
            degree_bound,
            relations,
            lookahead,
        )
        if generators.beyond_bound:
            if strict:
                raise TruncationExceeded(
                    f"step {step} of the resolution has generators above the degree bound",
                    degree_bound,
                )
            truncated = True
        logger.debug(f"resolution step {step}: twists {generators.twists}")
        if not generators.twists:
            break
        source_target = twists[-1]
        relations = None
        twists.append(tuple(generators.twists))
        differentials.append(tuple(generators.columns))
    else:
        if not ring.is_polynomial_ring or length < n + 1:
            truncated = True

    betti = BettiTable.from_twists(twists, truncated=truncated, degree_bound=degree_bound)
    return FreeResolution(ring, pres.target, twists, differentials, betti, degree_bound)
