"""Sparse polynomials in R = k[x0, ..., xn] with graded-degree bookkeeping.

Monomials are exponent tuples compared in graded reverse lexicographic order (grevlex);
graded pieces R_d are enumerated in descending grevlex order, which is the column order used
for every coefficient vector in the package.
"""

from __future__ import annotations

import dataclasses
import itertools
import logging
import math
import re
from collections.abc import Iterator, Mapping
from dataclasses import dataclass
from functools import cache

import numpy as np

from .arith import IntArray, PrimeField
from .exceptions import InvalidSpecError
from .types import Monomial

logger = logging.getLogger(__name__)

# Exponents stay small machine integers; degrees in scope are far below this
MAX_DEGREE = 255

_FACTOR_PATTERN = re.compile(r"^x(\d+)(?:\^(\d+))?$")


def grevlex_key(monomial: Monomial) -> tuple[int, tuple[int, ...]]:
    """Sort key for grevlex: larger key means larger monomial."""
    return (sum(monomial), tuple(-e for e in reversed(monomial)))


def divides(small: Monomial, large: Monomial) -> bool:
    return all(s <= g for s, g in zip(small, large, strict=True))


def monomial_product(left: Monomial, right: Monomial) -> Monomial:
    return tuple(a + b for a, b in zip(left, right, strict=True))


def monomial_quotient(large: Monomial, small: Monomial) -> Monomial:
    return tuple(g - s for g, s in zip(large, small, strict=True))


def monomial_lcm(left: Monomial, right: Monomial) -> Monomial:
    return tuple(max(a, b) for a, b in zip(left, right, strict=True))


@cache
def monomials_of_degree(d: int, nvars: int) -> tuple[Monomial, ...]:
    """All monomials of degree d in nvars variables, descending in grevlex."""
    if d < 0:
        return ()
    if d > MAX_DEGREE:
        raise InvalidSpecError(f"degree {d} exceeds the supported maximum {MAX_DEGREE}")
    found: list[Monomial] = []
    for choice in itertools.combinations_with_replacement(range(nvars), d):
        exponents = [0] * nvars
        for v in choice:
            exponents[v] += 1
        found.append(tuple(exponents))
    found.sort(key=grevlex_key, reverse=True)
    return tuple(found)


def graded_piece_dimension(d: int, n: int) -> int:
    """dim R_d for R with n + 1 variables: C(d + n, n), and 0 below degree 0."""
    if d < 0:
        return 0
    return math.comb(d + n, n)


@dataclass(frozen=True, slots=True)
class GradedPieceBasis:
    """The ordered monomial basis of R_d."""

    degree: int
    monomials: tuple[Monomial, ...]
    index: dict[Monomial, int] = dataclasses.field(compare=False, repr=False)

    def __len__(self) -> int:
        return len(self.monomials)

    def __iter__(self) -> Iterator[Monomial]:
        return iter(self.monomials)


@cache
def piece_basis(d: int, nvars: int) -> GradedPieceBasis:
    monomials = monomials_of_degree(d, nvars)
    return GradedPieceBasis(d, monomials, {m: k for k, m in enumerate(monomials)})


class Polynomial:
    """A polynomial over GF(p), stored as monomial → nonzero residue in descending grevlex."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolynomialRing, terms: Mapping[Monomial, int] | None = None) -> None:
        self.ring = ring
        p = ring.field.p
        cleaned = {m: c % p for m, c in (terms or {}).items() if c % p}
        self.terms: dict[Monomial, int] = {
            m: cleaned[m] for m in sorted(cleaned, key=grevlex_key, reverse=True)
        }

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        """Largest total degree of a term; -1 for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=-1)

    @property
    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    @property
    def leading_monomial(self) -> Monomial:
        if not self.terms:
            raise ValueError("the zero polynomial has no leading monomial")
        return next(iter(self.terms))

    @property
    def leading_coefficient(self) -> int:
        return self.terms[self.leading_monomial]

    def monic(self) -> Polynomial:
        if self.is_zero:
            return self
        return self.scale(self.ring.field.inverse(self.leading_coefficient))

    def scale(self, factor: int) -> Polynomial:
        return Polynomial(self.ring, {m: c * factor for m, c in self.terms.items()})

    def shift(self, monomial: Monomial, factor: int = 1) -> Polynomial:
        """Multiply by ``factor * monomial``."""
        return Polynomial(
            self.ring, {monomial_product(m, monomial): c * factor for m, c in self.terms.items()}
        )

    def __add__(self, other: Polynomial | int) -> Polynomial:
        other = self.ring.coerce(other)
        merged = dict(self.terms)
        for m, c in other.terms.items():
            merged[m] = merged.get(m, 0) + c
        return Polynomial(self.ring, merged)

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return self.scale(-1)

    def __sub__(self, other: Polynomial | int) -> Polynomial:
        return self + (-self.ring.coerce(other))

    def __rsub__(self, other: int) -> Polynomial:
        return self.ring.coerce(other) - self

    def __mul__(self, other: Polynomial | int) -> Polynomial:
        if isinstance(other, int):
            return self.scale(other)
        return multiply(self, other)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self == self.ring.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.ring, frozenset(self.terms.items())))

    def coefficients(self, basis: GradedPieceBasis) -> IntArray:
        """Coefficient vector in the monomial basis of one graded piece."""
        vector = np.zeros(len(basis), dtype=np.int64)
        for m, c in self.terms.items():
            if sum(m) != basis.degree:
                raise ValueError(f"term of degree {sum(m)} outside R_{basis.degree}")
            vector[basis.index[m]] = c
        return vector

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(_format_term(m, c) for m, c in self.terms.items())

    def __repr__(self) -> str:
        return f"Polynomial({self})"


def _format_term(monomial: Monomial, coefficient: int) -> str:
    factors = [
        f"x{v}" if e == 1 else f"x{v}^{e}" for v, e in enumerate(monomial) if e > 0
    ]
    if not factors:
        return str(coefficient)
    if coefficient == 1:
        return "*".join(factors)
    return "*".join([str(coefficient), *factors])


@dataclass(frozen=True, slots=True)
class PolynomialRing:
    """R = GF(p)[x0, ..., xn]."""

    n: int
    field: PrimeField = PrimeField()

    def __post_init__(self) -> None:
        if self.n < 0:
            raise InvalidSpecError(f"n must be non-negative, got {self.n}")

    @property
    def nvars(self) -> int:
        return self.n + 1

    def zero(self) -> Polynomial:
        return Polynomial(self)

    def one(self) -> Polynomial:
        return self.constant(1)

    def constant(self, value: int) -> Polynomial:
        return Polynomial(self, {(0,) * self.nvars: value})

    def variable(self, index: int) -> Polynomial:
        if not 0 <= index < self.nvars:
            raise InvalidSpecError(f"variable x{index} not in x0..x{self.n}")
        exponents = [0] * self.nvars
        exponents[index] = 1
        return Polynomial(self, {tuple(exponents): 1})

    def monomial(self, exponents: Monomial, coefficient: int = 1) -> Polynomial:
        return Polynomial(self, {tuple(exponents): coefficient})

    def coerce(self, value: Polynomial | int) -> Polynomial:
        if isinstance(value, int):
            return self.constant(value)
        if value.ring != self:
            raise ValueError("polynomials belong to different rings")
        return value

    def basis(self, d: int) -> GradedPieceBasis:
        return piece_basis(d, self.nvars)

    def piece_dimension(self, d: int) -> int:
        return graded_piece_dimension(d, self.n)

    def from_vector(self, basis: GradedPieceBasis, vector: IntArray) -> Polynomial:
        return Polynomial(
            self, {m: int(c) for m, c in zip(basis.monomials, vector, strict=True) if c}
        )

    def random_homogeneous(self, d: int, rng: np.random.Generator) -> Polynomial:
        return random_homogeneous(self, d, rng)

    def parse(self, text: str) -> Polynomial:
        """Parse ``3*x0^2*x1 + 5*x2 - x1`` style text.

        Raises:
            InvalidSpecError: If the text is not a polynomial in x0..xn
        """
        compact = re.sub(r"\s+", "", text)
        if not compact:
            raise InvalidSpecError("empty polynomial text")
        chunks = re.split(r"(?=[+-])", compact)
        terms: dict[Monomial, int] = {}
        for chunk in chunks:
            if not chunk:
                continue
            sign = -1 if chunk[0] == "-" else 1
            body = chunk.lstrip("+-")
            if not body:
                raise InvalidSpecError(f"dangling sign in {text!r}")
            coefficient = sign
            exponents = [0] * self.nvars
            for part in body.split("*"):
                if part.isdigit():
                    coefficient *= int(part)
                    continue
                match = _FACTOR_PATTERN.match(part)
                if match is None:
                    raise InvalidSpecError(f"cannot parse factor {part!r} in {text!r}")
                index = int(match.group(1))
                if index > self.n:
                    raise InvalidSpecError(f"variable x{index} not in x0..x{self.n}")
                exponents[index] += int(match.group(2) or 1)
            key = tuple(exponents)
            terms[key] = terms.get(key, 0) + coefficient
        return Polynomial(self, terms)


def multiply(f: Polynomial, g: Polynomial) -> Polynomial:
    """Exact product of two polynomials."""
    ring = f.ring.coerce(g).ring
    p = ring.field.p
    product: dict[Monomial, int] = {}
    for m1, c1 in f.terms.items():
        for m2, c2 in g.terms.items():
            key = monomial_product(m1, m2)
            product[key] = (product.get(key, 0) + c1 * c2) % p
    return Polynomial(ring, product)


def random_homogeneous(ring: PolynomialRing, d: int, rng: np.random.Generator) -> Polynomial:
    """A random form of degree d with coefficients drawn uniformly from GF(p).

    Negative degrees give the zero polynomial (empty graded piece); the zero form is redrawn
    otherwise, so degree 0 always yields a nonzero constant.
    """
    if d < 0:
        return ring.zero()
    basis = ring.basis(d)
    while True:
        coefficients = rng.integers(0, ring.field.p, size=len(basis), dtype=np.int64)
        if coefficients.any():
            return ring.from_vector(basis, coefficients)
