"""Closed-form invariants of a stratum W_s(b;a).

All binomials use exact Python integers with C(x, n) = 0 for x < n, so C(d + n, n) is
dim R_d and vanishes in negative degrees.
"""

import itertools
import logging
import math
from collections.abc import Callable

import msgspec

from .determinantal import DegreeMatrixSpec, GradedMatrix, sample_standard_matrix
from .exceptions import EmptyStratum, InvalidSpecError
from .poly import graded_piece_dimension

logger = logging.getLogger(__name__)

HilbertFunction = Callable[[int], int]


def binom(x: int, n: int) -> int:
    return math.comb(x, n) if x >= n else 0


def lambda_from_hilbert(spec: DegreeMatrixSpec, hilbert: HilbertFunction) -> int:
    """Σ H(a_j - b_i) + Σ H(b_i - a_j) - Σ H(a_i - a_j) - Σ H(b_i - b_j) + 1."""
    a, b = spec.a, spec.b
    return (
        sum(hilbert(x - y) for x in a for y in b)
        + sum(hilbert(y - x) for x in a for y in b)
        - sum(hilbert(x - y) for x in a for y in a)
        - sum(hilbert(x - y) for x in b for y in b)
        + 1
    )


def lambda_c(spec: DegreeMatrixSpec) -> int:
    return lambda_from_hilbert(spec, lambda d: graded_piece_dimension(d, spec.n))


def lambda_quotient_c2(hilbert_of_quotient: HilbertFunction, spec: DegreeMatrixSpec) -> int:
    """λ(R̄)_2: the c = 2 dimension formula with dim R̄_d in place of dim R_d.

    Raises:
        InvalidSpecError: If c != 2
    """
    if spec.c != 2:
        raise InvalidSpecError(f"λ(R̄)_2 needs c = 2, got c = {spec.c}")
    return lambda_from_hilbert(
        spec, lambda d: hilbert_of_quotient(d) if d >= 0 else 0
    )


def ell_values(spec: DegreeMatrixSpec) -> list[int]:
    """ℓ_3, ..., ℓ_c with ℓ_i = a_0 + ... + a_{t+i-2} - Σ b."""
    t = spec.t
    return [sum(spec.a[: t + i - 1]) - sum(spec.b) for i in range(3, spec.c + 1)]


def h_values(spec: DegreeMatrixSpec) -> list[int]:
    """h_0, ..., h_{c-3} with h_{i-3} = 2a_{t+i-2} - ℓ_i + n."""
    t = spec.t
    return [
        2 * spec.a[t + i - 2] - ell + spec.n
        for i, ell in zip(range(3, spec.c + 1), ell_values(spec), strict=True)
    ]


def K_values(spec: DegreeMatrixSpec) -> list[int]:
    """K_3, ..., K_c (empty for c = 2).

    K_{i+3} alternates over r + s = i: r distinct indices among a_0..a_{t+i} and a multiset
    of s rows, each term C(h_i + Σ a + Σ b, n) with sign (-1)^(i-r).
    """
    values: list[int] = []
    for i, h in enumerate(h_values(spec)):
        total = 0
        for r in range(i + 1):
            s = i - r
            sign = -1 if s % 2 else 1
            for columns in itertools.combinations(spec.a[: spec.t + i + 1], r):
                for rows in itertools.combinations_with_replacement(spec.b, s):
                    total += sign * binom(h + sum(columns) + sum(rows), spec.n)
        if total < 0:
            logger.warning(f"K_{i + 3} = {total} is negative for {spec.describe()}")
        values.append(total)
    return values


def nonempty(spec: DegreeMatrixSpec) -> bool:
    """a_{i-1} ≥ b_i for every row i, strictly for at least one."""
    pairs = list(zip(spec.a, spec.b, strict=False))
    return all(x >= y for x, y in pairs) and any(x > y for x, y in pairs)


class AutB(msgspec.Struct, frozen=True, kw_only=True):
    """aut(B_c) = ₀hom(B_c, B_c), with whether ₀hom(M, M) = 1 was verified or assumed."""

    value: int
    hom_MM_verified: bool


def aut_B(spec: DegreeMatrixSpec, *, hom_MM_verified: bool = False) -> AutB:
    """1 + K_3 + ... + K_c, valid when ₀hom(M, M) = 1."""
    if not hom_MM_verified:
        logger.debug("aut(B_c) computed with ₀hom(M,M) = 1 assumed")
    return AutB(value=1 + sum(K_values(spec)), hom_MM_verified=hom_MM_verified)


def aut_B_chain(spec: DegreeMatrixSpec) -> list[int]:
    """aut(B_2), ..., aut(B_c) along the column-deletion flag; each adds one K."""
    chain = [1]
    for k in K_values(spec):
        chain.append(chain[-1] + k)
    return chain


class StratumInvariants(msgspec.Struct, kw_only=True):
    """The closed-form numbers attached to (b;a)."""

    lambda_c: int
    K: list[int]
    ell: list[int]
    h: list[int]
    total: int = msgspec.field(name="lambda")
    dim_via_HM: int | None = None
    nonempty: bool = True


def dimension_via_hilbert(matrix: GradedMatrix) -> int:
    """Σ_j H_M(a_j) - Σ_i H_M(b_i) + 1 on a sampled matrix."""
    spec = matrix.spec
    pres = matrix.presentation()
    return (
        sum(pres.hilbert_function(x) for x in spec.a)
        - sum(pres.hilbert_function(y) for y in spec.b)
        + 1
    )


def stratum_invariants(spec: DegreeMatrixSpec) -> StratumInvariants:
    """All closed-form values; no sampling."""
    K = K_values(spec)
    base = lambda_c(spec)
    return StratumInvariants(
        lambda_c=base,
        K=K,
        ell=ell_values(spec),
        h=h_values(spec),
        total=base + sum(K),
        nonempty=nonempty(spec),
    )


def dimension_formula(
    spec: DegreeMatrixSpec, matrix: GradedMatrix | None = None
) -> StratumInvariants:
    """λ = λ_c + ΣK_i together with Σ H_M(a_j) - Σ H_M(b_i) + 1.

    Args:
        spec: The degree matrix
        matrix: A standard sample of the stratum; one is drawn when omitted

    Raises:
        EmptyStratum: If (b;a) fails the nonemptiness criterion
    """
    if not nonempty(spec):
        raise EmptyStratum(f"W_s{spec.describe()} is empty")
    if matrix is None:
        matrix = sample_standard_matrix(spec).matrix
    invariants = stratum_invariants(spec)
    invariants.dim_via_HM = dimension_via_hilbert(matrix)
    if invariants.dim_via_HM != invariants.total:
        logger.warning(
            f"λ = {invariants.total} but the Hilbert-function form gives {invariants.dim_via_HM}"
        )
    return invariants


def zero_dimensional_clause(spec: DegreeMatrixSpec) -> bool:
    """For n = c: a_0 > b_t and a_{t+c-2} > a_{t-2} (3 ≤ c ≤ 5), a_{t+3} > a_{t-2} (c > 5).

    Under this clause the dimension of W equals λ for zero-dimensional schemes.
    """
    t, c = spec.t, spec.c
    if spec.n != c or c < 3 or spec.a[0] <= spec.b[-1]:
        return False
    top = spec.a[t + c - 2] if c <= 5 else spec.a[t + 3]
    return top > spec.a[t - 2]


def linear_exception(spec: DegreeMatrixSpec) -> bool:
    """Linear 2 × (c + 1) matrices with n = c and c > 2, where dim W < λ."""
    return (
        spec.t == 2
        and spec.c > 2
        and spec.n == spec.c
        and all(x - y == 1 for x in spec.a for y in spec.b)
    )

