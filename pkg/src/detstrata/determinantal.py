"""Determinantal objects of a degree matrix (b;a).

Conventions: F* = ⊕ R(-b_i), G* = ⊕ R(-a_j) and the t × (t+c-1) matrix 𝒜 represents
φ*: G* → F*, so entry (i, j) has degree a_j - b_i and M = coker φ* is generated in the
degrees b_i. The minor on columns J has degree Σ_J a_j - Σ b_i.
"""

from __future__ import annotations

import itertools
import json
import logging
from collections.abc import Callable, Mapping, Sequence
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Any, Literal

import jsonschema
import msgspec
import numpy as np

from .arith import IntArray, PrimeField, left_null_space
from .config import DEFAULT_PRIME, SAMPLE_ATTEMPTS
from .exceptions import InvalidSpecError, NotStandard
from .groebner.buchberger import codimension, ideal_groebner_basis
from .groebner.graded import (
    Column,
    GradedModulePresentation,
    QuotientRing,
    column_to_vector,
)
from .groebner.resolution import BettiTable, minimal_kernel_generators
from .poly import Polynomial, PolynomialRing, graded_piece_dimension

logger = logging.getLogger(__name__)

# Marks a "general" entry in explicit matrices
GENERAL_ENTRY = "*"

ModuleName = Literal["A", "M", "I_conormal"]
RingName = Literal["R", "A"]


class DegreeMatrixSpec(msgspec.Struct, frozen=True, kw_only=True, forbid_unknown_fields=True):
    """The degree matrix (b;a) of a stratum, with the field and sampling seed."""

    n: int
    b: tuple[int, ...]
    a: tuple[int, ...]
    p: int = DEFAULT_PRIME
    seed: int = 0
    explicit_entries: tuple[tuple[str, ...], ...] | None = None

    def __post_init__(self) -> None:
        if self.n < 0:
            raise InvalidSpecError(f"n must be non-negative, got {self.n}")
        if len(self.b) < 2:
            raise InvalidSpecError(f"need t >= 2 rows, got b = {list(self.b)}")
        if list(self.b) != sorted(self.b):
            raise InvalidSpecError(f"b must be ascending, got {list(self.b)}")
        if list(self.a) != sorted(self.a):
            raise InvalidSpecError(f"a must be ascending, got {list(self.a)}")
        if len(self.a) - len(self.b) + 1 < 2:
            raise InvalidSpecError(
                f"need c >= 2, got {len(self.a)} columns for {len(self.b)} rows"
            )
        PrimeField(self.p)
        if self.explicit_entries is not None:
            shape = [len(row) for row in self.explicit_entries]
            if shape != [len(self.a)] * len(self.b):
                raise InvalidSpecError(
                    f"explicit_entries must be {len(self.b)} x {len(self.a)}, got rows {shape}"
                )

    @property
    def t(self) -> int:
        return len(self.b)

    @property
    def c(self) -> int:
        return len(self.a) - len(self.b) + 1

    @property
    def field(self) -> PrimeField:
        return PrimeField(self.p)

    @property
    def ring(self) -> PolynomialRing:
        return PolynomialRing(self.n, self.field)

    def entry_degree(self, i: int, j: int) -> int:
        return self.a[j] - self.b[i]

    def minor_degree(self, columns: Sequence[int]) -> int:
        return sum(self.a[j] for j in columns) - sum(self.b)

    def with_seed(self, seed: int) -> DegreeMatrixSpec:
        return msgspec.structs.replace(self, seed=seed)

    def with_prime(self, p: int) -> DegreeMatrixSpec:
        return msgspec.structs.replace(self, p=p)

    def translated(self, shift: int) -> DegreeMatrixSpec:
        """Add ``shift`` to every a_j and b_i (the stratum does not change)."""
        return msgspec.structs.replace(
            self,
            a=tuple(x + shift for x in self.a),
            b=tuple(x + shift for x in self.b),
            explicit_entries=None,
        )

    def column_prefix(self, columns: int) -> DegreeMatrixSpec:
        """Spec of the matrix made of the first ``columns`` columns."""
        entries = (
            tuple(row[:columns] for row in self.explicit_entries)
            if self.explicit_entries is not None
            else None
        )
        return msgspec.structs.replace(self, a=self.a[:columns], explicit_entries=entries)

    def describe(self) -> str:
        return f"(b;a) = ({','.join(map(str, self.b))}; {','.join(map(str, self.a))}), n={self.n}"


def load_spec(data: Mapping[str, Any], schema_path: Path | None = None) -> DegreeMatrixSpec:
    """Validate raw spec data and convert it to a DegreeMatrixSpec.

    Args:
        data: Parsed JSON object
        schema_path: JSON Schema to validate against first (skipped when None)

    Returns:
        The typed spec

    Raises:
        InvalidSpecError: If the data fails the schema or the spec invariants
    """
    if schema_path is not None:
        with open(schema_path, encoding="utf-8") as f:
            schema = json.load(f)
        try:
            jsonschema.validate(data, schema)
        except jsonschema.ValidationError as e:
            raise InvalidSpecError(f"Spec does not match {schema_path.name}: {e.message}") from e
    try:
        return msgspec.convert(data, type=DegreeMatrixSpec)
    except msgspec.ValidationError as e:
        raise InvalidSpecError(f"Invalid spec: {e}") from e


def load_spec_file(path: Path, schema_path: Path | None = None) -> DegreeMatrixSpec:
    if not path.exists():
        raise FileNotFoundError(f"Spec file not found: {path}")
    logger.debug(f"Reading spec file: {path}")
    try:
        with open(path, encoding="utf-8") as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise InvalidSpecError(f"Invalid JSON in {path}: {e}") from e
    if not isinstance(data, dict):
        raise InvalidSpecError(f"Expected a JSON object in {path}")
    return load_spec(data, schema_path)


@dataclass(frozen=True, slots=True)
class GradedMatrix:
    """The matrix 𝒜 of homogeneous forms with deg f_ij = a_j - b_i (or f_ij = 0)."""

    spec: DegreeMatrixSpec
    entries: tuple[tuple[Polynomial, ...], ...]

    def __post_init__(self) -> None:
        spec = self.spec
        if len(self.entries) != spec.t or any(len(row) != len(spec.a) for row in self.entries):
            raise InvalidSpecError(f"matrix must be {spec.t} x {len(spec.a)}")
        for i, row in enumerate(self.entries):
            for j, f in enumerate(row):
                if f.is_zero:
                    continue
                if not f.is_homogeneous or f.degree != spec.entry_degree(i, j):
                    raise InvalidSpecError(
                        f"entry ({i}, {j}) = {f} is not a form of degree {spec.entry_degree(i, j)}"
                    )

    @property
    def ring(self) -> PolynomialRing:
        return self.spec.ring

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.spec.a)

    def column(self, j: int) -> Column:
        return tuple(row[j] for row in self.entries)

    @property
    def is_minimal(self) -> bool:
        """No entry is a nonzero constant."""
        return not any(not f.is_zero and f.degree == 0 for row in self.entries for f in row)

    def column_prefix(self, columns: int) -> GradedMatrix:
        """𝒜_i: the first ``columns`` columns."""
        return GradedMatrix(
            self.spec.column_prefix(columns), tuple(row[:columns] for row in self.entries)
        )

    def left_multiply(self, constants: Sequence[Sequence[int]]) -> GradedMatrix:
        """C·𝒜 for a constant t × t matrix C (rows may only mix equal b_i)."""
        zero = self.ring.zero()
        mixed: list[tuple[Polynomial, ...]] = []
        for coefficients in constants:
            row = [zero] * self.cols
            for i, c in enumerate(coefficients):
                if c:
                    row = [g + f.scale(c) for g, f in zip(row, self.entries[i], strict=True)]
            mixed.append(tuple(row))
        return GradedMatrix(self.spec, tuple(mixed))

    def presentation(self, ring: QuotientRing | None = None) -> GradedModulePresentation:
        """M = coker(⊕ S(-a_j) → ⊕ S(-b_i)) over R, or over a quotient S of R."""
        base = ring if ring is not None else QuotientRing(self.ring)
        return GradedModulePresentation(
            base,
            target=self.spec.b,
            source=self.spec.a,
            columns=tuple(self.column(j) for j in range(self.cols)),
        )

    def text_rows(self) -> list[list[str]]:
        return [[str(f) for f in row] for row in self.entries]


def sample_matrix(
    spec: DegreeMatrixSpec, *, allow_units: bool = False, seed: int | None = None
) -> GradedMatrix:
    """Random matrix with the prescribed degrees, deterministic in the seed.

    Entries of negative degree are zero. Degree-zero entries are zero unless ``allow_units``
    (so the default sample is minimal). Explicit entries are parsed as given; an explicit ``*``
    is replaced by a random form of the right degree.
    """
    ring = spec.ring
    rng = np.random.default_rng(spec.seed if seed is None else seed)
    rows: list[tuple[Polynomial, ...]] = []
    for i in range(spec.t):
        row: list[Polynomial] = []
        for j in range(len(spec.a)):
            d = spec.entry_degree(i, j)
            text = spec.explicit_entries[i][j] if spec.explicit_entries is not None else None
            if text is not None and text.strip() != GENERAL_ENTRY:
                row.append(ring.parse(text))
            elif d < 0 or (d == 0 and not allow_units and text is None):
                row.append(ring.zero())
            else:
                row.append(ring.random_homogeneous(d, rng))
        rows.append(tuple(row))
    return GradedMatrix(spec, tuple(rows))


def _laplace(
    grid: Sequence[Sequence[Polynomial]], ring: PolynomialRing
) -> Callable[[tuple[int, ...]], Polynomial]:
    """Minors of the full row set of ``grid`` on a column tuple, expanded along the top row.

    Sub-determinants on the lower rows are memoized and shared between column tuples.
    """
    size = len(grid)
    memo: dict[tuple[int, tuple[int, ...]], Polynomial] = {}

    def expand(row: int, columns: tuple[int, ...]) -> Polynomial:
        if row == size:
            return ring.one()
        key = (row, columns)
        cached = memo.get(key)
        if cached is not None:
            return cached
        total = ring.zero()
        for position, j in enumerate(columns):
            f = grid[row][j]
            if f.is_zero:
                continue
            term = f * expand(row + 1, columns[:position] + columns[position + 1 :])
            total = total - term if position % 2 else total + term
        memo[key] = total
        return total

    return lambda columns: expand(0, columns)


def determinant(grid: Sequence[Sequence[Polynomial]], ring: PolynomialRing) -> Polynomial:
    """Determinant of a square polynomial matrix."""
    return _laplace(grid, ring)(tuple(range(len(grid))))


def maximal_minors(m: GradedMatrix) -> list[Polynomial]:
    """All t × t minors, one per column set J in lexicographic order."""
    minor = _laplace(m.entries, m.ring)
    return [minor(J) for J in minor_columns(m.spec)]


def minor_columns(spec: DegreeMatrixSpec) -> list[tuple[int, ...]]:
    return list(itertools.combinations(range(len(spec.a)), spec.t))


def submaximal_minors(m: GradedMatrix) -> list[Polynomial]:
    """All (t-1) × (t-1) minors."""
    size = m.rows - 1
    found: list[Polynomial] = []
    for rows in itertools.combinations(range(m.rows), size):
        for columns in itertools.combinations(range(m.cols), size):
            grid = [[m.entries[i][j] for j in columns] for i in rows]
            found.append(determinant(grid, m.ring))
    return found


class CodimensionReport(msgspec.Struct, frozen=True, kw_only=True):
    """Codimensions of the maximal and submaximal minor ideals."""

    expected: int
    codim_maximal: int
    codim_submaximal: int | None
    standard: bool
    good: bool
    submaximal_vacuous: bool


def codimension_check(m: GradedMatrix) -> CodimensionReport:
    """Decide whether 𝒜 is standard (codim I_t = c) and good (codim I_{t-1} ≥ c + 1).

    When c + 1 > n + 1 the condition on I_{t-1} cannot be met by any proper ideal and is
    reported as vacuous.
    """
    spec = m.spec
    nonzero = [f for f in maximal_minors(m) if not f.is_zero]
    codim_maximal = codimension(ideal_groebner_basis(nonzero, m.ring)) if nonzero else 0
    standard = codim_maximal == spec.c
    vacuous = spec.c + 1 > spec.n + 1
    codim_submaximal: int | None = None
    if not vacuous:
        nonzero = [f for f in submaximal_minors(m) if not f.is_zero]
        codim_submaximal = codimension(ideal_groebner_basis(nonzero, m.ring)) if nonzero else 0
    good = standard and (vacuous or (codim_submaximal or 0) >= spec.c + 1)
    logger.debug(
        f"codimension check {spec.describe()}: I_t {codim_maximal} (expected {spec.c}), "
        + f"I_t-1 {'vacuous' if vacuous else codim_submaximal}"
    )
    return CodimensionReport(
        expected=spec.c,
        codim_maximal=codim_maximal,
        codim_submaximal=codim_submaximal,
        standard=standard,
        good=good,
        submaximal_vacuous=vacuous,
    )


@dataclass(frozen=True, slots=True)
class StandardSample:
    matrix: GradedMatrix
    seeds_tried: tuple[int, ...]
    report: CodimensionReport


def sample_standard_matrix(
    spec: DegreeMatrixSpec,
    *,
    allow_units: bool = False,
    attempts: int = SAMPLE_ATTEMPTS,
) -> StandardSample:
    """Sample until the matrix is standard determinantal, trying seeds seed, seed + 1, ...

    Raises:
        NotStandard: If no sample within ``attempts`` seeds has codim I_t = c
    """
    fixed = spec.explicit_entries is not None and not any(
        entry.strip() == GENERAL_ENTRY for row in spec.explicit_entries for entry in row
    )
    tried: list[int] = []
    for offset in range(1 if fixed else attempts):
        seed = spec.seed + offset
        tried.append(seed)
        matrix = sample_matrix(spec, allow_units=allow_units, seed=seed)
        report = codimension_check(matrix)
        if report.standard:
            if offset:
                logger.info(f"Standard sample found at seed {seed} after {offset} retries")
            return StandardSample(matrix, tuple(tried), report)
        logger.info(
            f"Seed {seed}: codim I_t = {report.codim_maximal}, expected {spec.c}; retrying"
        )
    raise NotStandard(
        f"No standard determinantal sample for {spec.describe()} (seeds {tried})"
    )


def eagon_northcott_twists(spec: DegreeMatrixSpec) -> list[list[int]]:
    """Generator degrees of the Eagon–Northcott resolution of A = R/I_t(𝒜), steps 0..c.

    Step k ≥ 1 is ∧^{t+k-1} G* ⊗ D_{k-1}(F) ⊗ ∧^t F: one summand for every set of t+k-1
    columns and every multiset of k-1 rows.
    """
    total_b = sum(spec.b)
    steps: list[list[int]] = [[0]]
    for k in range(1, spec.c + 1):
        step = [
            sum(spec.a[j] for j in columns) - sum(spec.b[i] for i in rows) - total_b
            for columns in itertools.combinations(range(len(spec.a)), spec.t + k - 1)
            for rows in itertools.combinations_with_replacement(range(spec.t), k - 1)
        ]
        steps.append(sorted(step))
    return steps


def eagon_northcott_betti(spec: DegreeMatrixSpec) -> BettiTable:
    """Betti table of the Eagon–Northcott complex (a resolution of A, minimal iff 𝒜 is)."""
    return BettiTable.from_twists(eagon_northcott_twists(spec))


def buchsbaum_rim_twists(spec: DegreeMatrixSpec) -> list[list[int]]:
    """Generator degrees of the Buchsbaum–Rim resolution of M, steps 0..c."""
    total_b = sum(spec.b)
    steps: list[list[int]] = [sorted(spec.b), sorted(spec.a)]
    for i in range(spec.c - 1):
        step = [
            sum(spec.a[j] for j in columns) - sum(spec.b[k] for k in rows) - total_b
            for columns in itertools.combinations(range(len(spec.a)), spec.t + i + 1)
            for rows in itertools.combinations_with_replacement(range(spec.t), i)
        ]
        steps.append(sorted(step))
    return steps


def buchsbaum_rim_betti(spec: DegreeMatrixSpec) -> BettiTable:
    return BettiTable.from_twists(buchsbaum_rim_twists(spec))


def hilbert_function_from_table(table: BettiTable, n: int, d: int) -> int:
    """Σ (-1)^i β_{i,j} dim R_{d-j}: the Hilbert function a resolution predicts."""
    return sum(
        (-1) ** i * beta * graded_piece_dimension(d - j, n)
        for (i, j), beta in table.entries.items()
    )


def hilbert_function_M(m: GradedMatrix, d: int) -> int:
    """H_M(d) = dim F*_d - rank φ*_d."""
    return m.presentation().hilbert_function(d)


def hilbert_burch_check(spec: DegreeMatrixSpec) -> bool:
    """For c = 2 the Eagon–Northcott table has ranks 1, t + 1, t (Hilbert–Burch)."""
    table = eagon_northcott_betti(spec)
    return spec.c == 2 and [table.rank(i) for i in range(3)] == [1, spec.t + 1, spec.t]


@dataclass(frozen=True, slots=True)
class DeterminantalFlag:
    """The column-deletion flag 𝒜_2, ..., 𝒜_c = 𝒜.

    D_i = R/I_t(𝒜_i) and M_i = coker φ_i*.
    """

    matrices: tuple[GradedMatrix, ...]
    algebras: tuple[QuotientRing, ...]
    modules: tuple[GradedModulePresentation, ...]

    def index(self, i: int) -> int:
        if not 2 <= i < 2 + len(self.matrices):
            raise IndexError(f"flag index {i} outside 2..{len(self.matrices) + 1}")
        return i - 2

    def hilbert_D(self, i: int, d: int) -> int:
        return self.algebras[self.index(i)].dimension(d)

    def hilbert_M(self, i: int, d: int) -> int:
        return self.modules[self.index(i)].hilbert_function(d)

    def sequence_defect(self, i: int, v: int) -> int:
        """H_{D_i}(v) - H_{M_i}(v + a) + H_{M_{i+1}}(v + a) with a = a_{t+i-1}; zero when exact."""
        spec = self.matrices[-1].spec
        shift = spec.a[spec.t + i - 1]
        return (
            self.hilbert_D(i, v)
            - self.hilbert_M(i, v + shift)
            + self.hilbert_M(i + 1, v + shift)
        )


def build_flag(m: GradedMatrix) -> DeterminantalFlag:
    """Flag of prefixes 𝒜_i (first t + i - 1 columns) for i = 2..c.

    Raises:
        NotStandard: If some I_t(𝒜_i) does not have codimension i
    """
    spec = m.spec
    matrices: list[GradedMatrix] = []
    algebras: list[QuotientRing] = []
    modules: list[GradedModulePresentation] = []
    for i in range(2, spec.c + 1):
        prefix = m.column_prefix(spec.t + i - 1)
        minors = [f for f in maximal_minors(prefix) if not f.is_zero]
        gb = ideal_groebner_basis(minors, m.ring)
        if codimension(gb) != i:
            raise NotStandard(f"I_t(𝒜_{i}) has codimension {codimension(gb)}, expected {i}")
        matrices.append(prefix)
        algebras.append(QuotientRing(m.ring, gb))
        modules.append(prefix.presentation())
    return DeterminantalFlag(tuple(matrices), tuple(algebras), tuple(modules))


class DeterminantalAlgebra:
    """A standard determinantal sample with the objects built from it, computed on demand."""

    def __init__(self, matrix: GradedMatrix) -> None:
        self.matrix = matrix
        self.spec = matrix.spec

    @classmethod
    def sample(cls, spec: DegreeMatrixSpec, *, allow_units: bool = False) -> DeterminantalAlgebra:
        return cls(sample_standard_matrix(spec, allow_units=allow_units).matrix)

    @property
    def ring(self) -> PolynomialRing:
        return self.matrix.ring

    @cached_property
    def minors(self) -> list[Polynomial]:
        return maximal_minors(self.matrix)

    @cached_property
    def minor_degrees(self) -> tuple[int, ...]:
        return tuple(self.spec.minor_degree(J) for J in minor_columns(self.spec))

    @cached_property
    def polynomial_ring(self) -> QuotientRing:
        return QuotientRing(self.ring)

    @cached_property
    def algebra(self) -> QuotientRing:
        """A = R/I_t(𝒜)."""
        nonzero = [f for f in self.minors if not f.is_zero]
        return QuotientRing(self.ring, ideal_groebner_basis(nonzero, self.ring))

    @cached_property
    def module_over_R(self) -> GradedModulePresentation:
        return self.matrix.presentation(self.polynomial_ring)

    @cached_property
    def module_over_A(self) -> GradedModulePresentation:
        return self.matrix.presentation(self.algebra)

    @cached_property
    def regularity_bound(self) -> int:
        """max_k (largest twist of step k - k) over the Eagon–Northcott complex: reg A."""
        steps = eagon_northcott_twists(self.spec)
        return max(max(step) - k for k, step in enumerate(steps) if step)

    @cached_property
    def syzygy_columns(self) -> tuple[tuple[int, ...], tuple[Column, ...]]:
        """Minimal syzygies of the minors, as twists and columns over the minors."""
        steps = eagon_northcott_twists(self.spec)
        bound = max(steps[2]) if len(steps) > 2 and steps[2] else max(self.minor_degrees)
        found = minimal_kernel_generators(
            self.polynomial_ring,
            self.minor_degrees,
            tuple((f,) for f in self.minors),
            (0,),
            bound,
        )
        return tuple(found.twists), tuple(found.columns)

    @cached_property
    def ideal_over_R(self) -> GradedModulePresentation:
        """I as an R-module: generators the minors, relations their syzygies."""
        twists, columns = self.syzygy_columns
        return GradedModulePresentation(self.polynomial_ring, self.minor_degrees, twists, columns)

    @cached_property
    def conormal(self) -> GradedModulePresentation:
        """I/I² = I ⊗ A as an A-module."""
        twists, columns = self.syzygy_columns
        return GradedModulePresentation(self.algebra, self.minor_degrees, twists, columns)

    @cached_property
    def algebra_over_R(self) -> GradedModulePresentation:
        """A as the cokernel of ⊕ R(-d_J) → R."""
        return GradedModulePresentation(
            self.polynomial_ring, (0,), self.minor_degrees, tuple((f,) for f in self.minors)
        )

    @cached_property
    def conormal_over_R(self) -> GradedModulePresentation:
        """I/I² over R: the syzygies of the minors plus f_K·e_J for every pair J, K."""
        twists, columns = self.syzygy_columns
        zero = self.ring.zero()
        degrees = self.minor_degrees
        source = list(twists)
        relations = list(columns)
        for J, d in enumerate(degrees):
            for K, f in enumerate(self.minors):
                source.append(d + degrees[K])
                relations.append(tuple(f if slot == J else zero for slot in range(len(degrees))))
        return GradedModulePresentation(
            self.polynomial_ring, degrees, tuple(source), tuple(relations)
        )

    def presentation_of(
        self, of: ModuleName, over: RingName
    ) -> tuple[GradedModulePresentation, int | None]:
        """Presentation of A, M or I/I² over R or A, with an exact degree bound if known.

        Over R the minimal resolutions of A and M are summands of the Eagon–Northcott and
        Buchsbaum–Rim complexes, so their largest twists bound every generator degree.
        """
        if over == "R":
            if of == "A":
                return self.algebra_over_R, max(map(max, eagon_northcott_twists(self.spec)))
            if of == "M":
                return self.module_over_R, max(map(max, buchsbaum_rim_twists(self.spec)))
            return self.conormal_over_R, None
        if of == "A":
            return GradedModulePresentation.free(self.algebra, (0,)), 0
        if of == "M":
            return self.module_over_A, None
        return self.conormal, None

    def hilbert_function(self, d: int) -> int:
        return self.algebra.dimension(d)

    def top_degree(self) -> int | None:
        """Socle degree of A when A is artinian, else None."""
        if self.spec.c < self.spec.n + 1:
            return None
        return self.algebra.top_degree(self.regularity_bound + 1)

    def h_vector(self) -> list[int]:
        return h_vector(self.algebra, self.regularity_bound + 1)

    def krull_dimension(self) -> int:
        return self.spec.n + 1 - self.spec.c

    def depth(self) -> int:
        """depth A = n + 1 - pd A, and pd A = c for a standard determinantal ring."""
        return self.spec.n + 1 - self.spec.c


def h_vector(algebra: QuotientRing, limit: int) -> list[int]:
    """Hilbert function of an artinian algebra, degree 0 up to the socle degree.

    Raises:
        InvalidSpecError: If the algebra is nonzero in degree ``limit``
    """
    values: list[int] = []
    for d in range(limit + 1):
        value = algebra.dimension(d)
        if value == 0:
            return values
        values.append(value)
    raise InvalidSpecError(f"algebra is not artinian up to degree {limit}")


def annihilator_dimension(m: GradedMatrix, d: int) -> int:
    """dim of ann(M)_d, the forms g with g·e_i ∈ im φ* for every generator e_i."""
    pres = m.presentation()
    ring = pres.ring
    basis = m.ring.basis(d)
    images: list[IntArray] = []
    for monomial in basis:
        g = m.ring.monomial(monomial)
        parts: list[IntArray] = []
        for k, b in enumerate(m.spec.b):
            column = tuple(g if slot == k else m.ring.zero() for slot in range(m.rows))
            vector = column_to_vector(ring, pres.target, d + b, column)
            parts.append(pres.relation_space(d + b).reduce(vector)[0])
        images.append(np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64))
    matrix = np.vstack(images) if images else np.zeros((0, 0), dtype=np.int64)
    return int(left_null_space(matrix, m.spec.p).shape[0]) if len(basis) else 0


def fitting_check(m: GradedMatrix, degree_bound: int) -> bool:
    """ann(M) = I_t(𝒜) degree by degree up to ``degree_bound``.

    Every minor must annihilate every generator of M, and the annihilator must have the same
    dimension as the ideal of minors in each degree.
    """
    pres = m.presentation()
    ring = pres.ring
    minors = maximal_minors(m)
    for f in minors:
        if f.is_zero:
            continue
        for k, b in enumerate(m.spec.b):
            column = tuple(f if slot == k else m.ring.zero() for slot in range(m.rows))
            vector = column_to_vector(ring, pres.target, f.degree + b, column)
            if not pres.relation_space(f.degree + b).contains(vector):
                logger.debug(f"minor {f} does not annihilate generator {k}")
                return False
    quotient = QuotientRing.from_generators(m.ring, [f for f in minors if not f.is_zero])
    for d in range(degree_bound + 1):
        ideal_dimension = m.ring.piece_dimension(d) - quotient.dimension(d)
        if annihilator_dimension(m, d) != ideal_dimension:
            logger.debug(f"annihilator and I_t differ in degree {d}")
            return False
    return True

