"""Type definitions for detstrata data structures."""

from __future__ import annotations

from typing import Any, Literal, TypedDict

import msgspec

# Exponent vector of a monomial in x0..xn
Monomial = tuple[int, ...]

# Tags attached to every reported number
Method = Literal["closed-form", "linear-algebra", "groebner", "truncated"]


class SpecData(TypedDict, total=False):
    """Raw degree-matrix spec as read from JSON."""

    n: int
    p: int
    b: list[int]
    a: list[int]
    seed: int
    explicit_entries: list[list[str]]


class BettiEntryData(TypedDict):
    """JSON form of one graded Betti number."""

    i: int
    j: int
    beta: int


class Measured(msgspec.Struct, frozen=True):
    """A reported number together with how it was obtained."""

    value: Any
    method: Method
