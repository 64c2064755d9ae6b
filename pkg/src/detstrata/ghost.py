"""Ghost terms: free summands R(-j) shared by consecutive terms of a minimal resolution.

A corner overlap a_j = b_i (j first or last column, i first or last row) lets a matrix with a
unit at (i, j) be row-reduced to a (t-1) × (t+c-2) matrix with the same ideal of maximal
minors. Passing from a zero at (i, j) to a unit is a generization inside GradAlg(H) that
removes exactly the Eagon–Northcott summands attributable to that overlap.
"""

import logging
from collections.abc import Sequence

import msgspec

from .determinantal import (
    GENERAL_ENTRY,
    DegreeMatrixSpec,
    DeterminantalAlgebra,
    GradedMatrix,
    eagon_northcott_betti,
    maximal_minors,
    sample_standard_matrix,
)
from .exceptions import NotACornerOverlap, NotStandard, StratumEmpty
from .formulas import nonempty
from .groebner.buchberger import ModuleElement, ideal_groebner_basis
from .groebner.resolution import BettiTable, minimal_free_resolution
from .poly import Polynomial, PolynomialRing

logger = logging.getLogger(__name__)


class GhostOverlap(msgspec.Struct, frozen=True, kw_only=True):
    """R(-j) in homological degrees i and i + 1, ``count`` times."""

    i: int
    j: int
    count: int
    removable: int = 0

    @property
    def persistent(self) -> int:
        return self.count - self.removable


class GhostLedger(msgspec.Struct, kw_only=True):
    overlaps: list[GhostOverlap]
    corners: list[tuple[int, int]] = msgspec.field(default_factory=list)

    @property
    def total(self) -> int:
        return sum(overlap.count for overlap in self.overlaps)

    @property
    def removable(self) -> int:
        return sum(overlap.removable for overlap in self.overlaps)

    def persistent(self) -> list[GhostOverlap]:
        return [overlap for overlap in self.overlaps if overlap.persistent]

    def matches(self, table: BettiTable) -> bool:
        """The stored overlap counts are those of ``table``."""
        return [(o.i, o.j, o.count) for o in self.overlaps] == [
            (o.i, o.j, o.count) for o in detect_ghosts(table).overlaps
        ]


def corner_overlaps(spec: DegreeMatrixSpec) -> list[tuple[int, int]]:
    """Positions (i, j), 0-based, with a_j = b_i, j ∈ {0, last} and i ∈ {0, t - 1}."""
    rows = sorted({0, spec.t - 1})
    columns = sorted({0, len(spec.a) - 1})
    return [(i, j) for i in rows for j in columns if spec.a[j] == spec.b[i]]


def reduce_degree_matrix(spec: DegreeMatrixSpec, i: int, j: int) -> DegreeMatrixSpec:
    """(b;a) with b_i and a_j removed; same n and p.

    Raises:
        NotACornerOverlap: If (i, j) is not a corner position or a_j ≠ b_i
    """
    if (i, j) not in corner_overlaps(spec):
        raise NotACornerOverlap(
            f"({i}, {j}) is not a corner overlap of {spec.describe()}: "
            + f"corners with a_j = b_i are {corner_overlaps(spec)}"
        )
    entries = (
        tuple(
            tuple(text for k, text in enumerate(row) if k != j)
            for r, row in enumerate(spec.explicit_entries)
            if r != i
        )
        if spec.explicit_entries is not None
        else None
    )
    return DegreeMatrixSpec(
        n=spec.n,
        b=tuple(x for k, x in enumerate(spec.b) if k != i),
        a=tuple(x for k, x in enumerate(spec.a) if k != j),
        p=spec.p,
        seed=spec.seed,
        explicit_entries=entries,
    )


def ghost_contribution(spec: DegreeMatrixSpec, i: int, j: int) -> BettiTable:
    """Eagon–Northcott summands that disappear when the overlap at (i, j) is removed."""
    reduced = reduce_degree_matrix(spec, i, j)
    return eagon_northcott_betti(spec).difference(eagon_northcott_betti(reduced))


def detect_ghosts(table: BettiTable, spec: DegreeMatrixSpec | None = None) -> GhostLedger:
    """All (i, j) with β_{i,j} > 0 and β_{i+1,j} > 0, with overlap min(β_{i,j}, β_{i+1,j}).

    With ``spec`` given, each overlap is split into the part attributable to the corner
    overlaps of (b;a) (removable under generization) and the rest.
    """
    corners: list[tuple[int, int]] = []
    attributable: dict[tuple[int, int], int] = {}
    if spec is not None:
        corners = corner_overlaps(spec)
        for i, j in corners:
            for key, value in ghost_contribution(spec, i, j).entries.items():
                attributable[key] = max(attributable.get(key, 0), value)
    overlaps: list[GhostOverlap] = []
    for (i, j), value in table.entries.items():
        count = min(value, table.beta(i + 1, j))
        if count == 0:
            continue
        removable = min(count, attributable.get((i, j), 0), attributable.get((i + 1, j), 0))
        overlaps.append(GhostOverlap(i=i, j=j, count=count, removable=removable))
    return GhostLedger(overlaps=overlaps, corners=corners)


def with_entry(spec: DegreeMatrixSpec, i: int, j: int, text: str) -> DegreeMatrixSpec:
    """Spec whose explicit entry (i, j) is ``text``.

    Other entries keep their explicit text, or are general forms (zero in degree 0).
    """
    grid = (
        [list(row) for row in spec.explicit_entries]
        if spec.explicit_entries is not None
        else [
            [GENERAL_ENTRY if spec.entry_degree(r, k) > 0 else "0" for k in range(len(spec.a))]
            for r in range(spec.t)
        ]
    )
    grid[i][j] = text
    return msgspec.structs.replace(
        spec, explicit_entries=tuple(tuple(row) for row in grid)
    )


def bordered_matrix(spec: DegreeMatrixSpec, inner: GradedMatrix, i: int, j: int) -> GradedMatrix:
    """The matrix with 1 at (i, j), zeros elsewhere in row i and column j, and 𝒜' around it.

    Raises:
        NotACornerOverlap: If (i, j) is not a corner overlap of ``spec``
    """
    reduced = reduce_degree_matrix(spec, i, j)
    if (inner.spec.b, inner.spec.a) != (reduced.b, reduced.a):
        raise NotACornerOverlap(
            f"inner matrix has {inner.spec.describe()}, expected {reduced.describe()}"
        )
    ring = spec.ring
    rows: list[tuple[Polynomial, ...]] = []
    inner_rows = iter(inner.entries)
    for r in range(spec.t):
        if r == i:
            rows.append(
                tuple(ring.one() if k == j else ring.zero() for k in range(len(spec.a)))
            )
            continue
        source = iter(next(inner_rows))
        rows.append(tuple(ring.zero() if k == j else next(source) for k in range(len(spec.a))))
    return GradedMatrix(spec, tuple(rows))


def ideals_equal(
    left: Sequence[Polynomial], right: Sequence[Polynomial], ring: PolynomialRing
) -> bool:
    """Equality of two ideals by normal forms against each other's Gröbner basis."""
    left = [f for f in left if not f.is_zero]
    right = [f for f in right if not f.is_zero]
    left_gb = ideal_groebner_basis(left, ring)
    right_gb = ideal_groebner_basis(right, ring)
    return all(right_gb.contains(ModuleElement.from_polynomial(f)) for f in left) and all(
        left_gb.contains(ModuleElement.from_polynomial(g)) for g in right
    )


def algebra_betti_table(m: GradedMatrix) -> BettiTable:
    """Betti table of the minimal R-free resolution of R/I_t(𝒜)."""
    pres, bound = DeterminantalAlgebra(m).presentation_of("A", "R")
    return minimal_free_resolution(pres, degree_bound=bound).betti


class GenerizationReport(msgspec.Struct, kw_only=True):
    """Comparison of a sample with a zero at (i, j) against its generization."""

    spec: DegreeMatrixSpec
    reduced: DegreeMatrixSpec
    corner: tuple[int, int]
    special: BettiTable
    general: BettiTable
    reduced_table: BettiTable
    contribution: BettiTable
    special_ghosts: GhostLedger
    general_ghosts: GhostLedger
    hilbert_agree: bool
    ghosts_removed_exactly: bool
    matches_reduced_en: bool
    bordered_ideal_equal: bool
    seeds: list[int]
    h_vector: list[int] | None = None
    findings: list[str] = msgspec.field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (
            self.hilbert_agree
            and self.ghosts_removed_exactly
            and self.matches_reduced_en
            and self.bordered_ideal_equal
        )


def _sample(spec: DegreeMatrixSpec, label: str, seeds: list[int]) -> GradedMatrix:
    try:
        sample = sample_standard_matrix(spec)
    except NotStandard as e:
        raise StratumEmpty(f"no standard {label} sample was witnessed: {e}") from e
    seeds.extend(sample.seeds_tried)
    return sample.matrix


def verify_generization(
    spec: DegreeMatrixSpec, i: int, j: int, seed: int | None = None
) -> GenerizationReport:
    """Compare R/I with a zero at (i, j) against the unit specialisation and W_s(b_î; a_ĵ).

    Checks that the Hilbert functions agree, that the table of the generization is the
    special table minus exactly the Eagon–Northcott summands attributable to a_j = b_i, and
    that the bordered matrix (1 0; 0 𝒜') has I_t equal to I_{t-1}(𝒜').

    Raises:
        NotACornerOverlap: If (i, j) is not a corner overlap
        StratumEmpty: If a stratum is empty or none of its samples is standard
    """
    if seed is not None:
        spec = spec.with_seed(seed)
    reduced = reduce_degree_matrix(spec, i, j)
    for candidate in (spec, reduced):
        if not nonempty(candidate):
            raise StratumEmpty(f"W_s{candidate.describe()} is empty")
    seeds: list[int] = []
    special = _sample(with_entry(spec, i, j, "0"), "special", seeds)
    general = _sample(with_entry(spec, i, j, "1"), "general", seeds)
    inner = _sample(reduced, "reduced", seeds)

    findings: list[str] = []
    special_table = algebra_betti_table(special)
    general_table = algebra_betti_table(general)
    reduced_table = algebra_betti_table(inner)
    contribution = ghost_contribution(spec, i, j)

    special_alg = DeterminantalAlgebra(special)
    general_alg = DeterminantalAlgebra(general)
    reduced_alg = DeterminantalAlgebra(inner)
    bound = max(special_alg.regularity_bound, reduced_alg.regularity_bound) + 1
    hilbert_agree = all(
        special_alg.hilbert_function(d)
        == general_alg.hilbert_function(d)
        == reduced_alg.hilbert_function(d)
        for d in range(bound + 1)
    )
    if not hilbert_agree:
        findings.append("Hilbert functions of the special and general samples differ")

    removed_exactly = special_table.difference(contribution) == general_table
    if not special_table.contains(contribution):
        findings.append("special table does not contain the attributable Eagon–Northcott terms")
    if not removed_exactly:
        findings.append(
            "general table is not the special table minus the attributable terms:\n"
            + render_betti_diff(special_table, general_table)
        )
    matches_en = reduced_table == eagon_northcott_betti(reduced)
    if not matches_en:
        findings.append("reduced sample is not resolved by its Eagon–Northcott complex")

    bordered = bordered_matrix(spec, inner, i, j)
    bordered_equal = ideals_equal(maximal_minors(bordered), maximal_minors(inner), spec.ring)
    if not bordered_equal:
        findings.append("I_t of the bordered matrix differs from I_{t-1} of the inner matrix")

    special_ghosts = detect_ghosts(special_table, spec)
    general_ghosts = detect_ghosts(general_table, reduced)
    for overlap in general_ghosts.persistent():
        logger.info(f"ghost R(-{overlap.j}) persists between steps {overlap.i} and {overlap.i + 1}")
    return GenerizationReport(
        spec=spec,
        reduced=reduced,
        corner=(i, j),
        special=special_table,
        general=general_table,
        reduced_table=reduced_table,
        contribution=contribution,
        special_ghosts=special_ghosts,
        general_ghosts=general_ghosts,
        hilbert_agree=hilbert_agree,
        ghosts_removed_exactly=removed_exactly,
        matches_reduced_en=matches_en,
        bordered_ideal_equal=bordered_equal,
        seeds=seeds,
        h_vector=special_alg.h_vector() if special_alg.top_degree() is not None else None,
        findings=findings,
    )


def render_betti_diff(before: BettiTable, after: BettiTable) -> str:
    """Both tables step by step, aligned, with the removed summands marked ``-``."""
    steps = range(max(before.length, after.length) + 1)
    left = [before.summands(i) for i in steps]
    right = [after.summands(i) for i in steps]
    removed = before.difference(after)
    width = max((len(text) for text in left), default=0)
    lines = [f"{'':>4}{'before'.ljust(width)}   after"]
    for i, (old, new) in enumerate(zip(left, right, strict=True)):
        line = f"{i:>2}: {old.ljust(width)}   {new}"
        if removed.rank(i):
            line += f"   - {removed.summands(i)}"
        lines.append(line)
    return "\n".join(lines)
