"""Buchberger's algorithm for homogeneous submodules of graded free modules.

Terms of a module element are pairs ``(position, monomial)`` ordered position-over-term:
a lower position is larger, ties are broken by grevlex on the monomial. Ideals are submodules
of the rank-one free module R.
"""

from __future__ import annotations

import heapq
import itertools
import logging
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from typing import Literal

from ..exceptions import InvalidSpecError
from ..poly import (
    Polynomial,
    PolynomialRing,
    divides,
    graded_piece_dimension,
    grevlex_key,
    monomial_lcm,
    monomial_product,
    monomial_quotient,
)
from ..types import Monomial

logger = logging.getLogger(__name__)

Term = tuple[int, Monomial]
Strategy = Literal["normal", "sugar"]


def term_key(term: Term) -> tuple[int, tuple[int, tuple[int, ...]]]:
    """Sort key for the position-over-term order: larger key means larger term."""
    return (-term[0], grevlex_key(term[1]))


def _heap_key(term: Term) -> tuple[int, ...]:
    # Smallest heap key is the largest term
    position, monomial = term
    return (position, -sum(monomial), *reversed(monomial))


def _term_from_heap(key: tuple[int, ...]) -> Term:
    return key[0], tuple(reversed(key[2:]))


@dataclass(frozen=True, slots=True)
class GradedFreeModule:
    """The free module ⊕ R(-e_k), stored as its generator degrees e_k."""

    ring: PolynomialRing
    twists: tuple[int, ...]

    @classmethod
    def of_rank_one(cls, ring: PolynomialRing) -> GradedFreeModule:
        return cls(ring, (0,))

    @property
    def rank(self) -> int:
        return len(self.twists)

    def piece_dimension(self, d: int) -> int:
        return sum(graded_piece_dimension(d - e, self.ring.n) for e in self.twists)


class ModuleElement:
    """An element of a graded free module, stored as term → nonzero residue."""

    __slots__ = ("module", "terms")

    def __init__(self, module: GradedFreeModule, terms: Mapping[Term, int] | None = None) -> None:
        self.module = module
        p = module.ring.field.p
        cleaned = {t: c % p for t, c in (terms or {}).items() if c % p}
        self.terms: dict[Term, int] = {
            t: cleaned[t] for t in sorted(cleaned, key=term_key, reverse=True)
        }

    @classmethod
    def from_components(
        cls, module: GradedFreeModule, components: Sequence[Polynomial]
    ) -> ModuleElement:
        if len(components) != module.rank:
            raise ValueError(f"expected {module.rank} components, got {len(components)}")
        return cls(
            module,
            {(k, m): c for k, f in enumerate(components) for m, c in f.terms.items()},
        )

    @classmethod
    def from_polynomial(cls, f: Polynomial) -> ModuleElement:
        return cls.from_components(GradedFreeModule.of_rank_one(f.ring), [f])

    def components(self) -> tuple[Polynomial, ...]:
        ring = self.module.ring
        split: list[dict[Monomial, int]] = [{} for _ in self.module.twists]
        for (k, m), c in self.terms.items():
            split[k][m] = c
        return tuple(Polynomial(ring, part) for part in split)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def leading_term(self) -> Term:
        if not self.terms:
            raise ValueError("the zero element has no leading term")
        return next(iter(self.terms))

    @property
    def degree(self) -> int:
        """Total degree of the leading term (monomial degree plus generator twist)."""
        position, monomial = self.leading_term
        return sum(monomial) + self.module.twists[position]

    @property
    def is_homogeneous(self) -> bool:
        twists = self.module.twists
        return len({sum(m) + twists[k] for k, m in self.terms}) <= 1

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ModuleElement):
            return NotImplemented
        return self.module == other.module and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.module, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return f"ModuleElement({', '.join(str(f) for f in self.components())})"


@dataclass(frozen=True, slots=True)
class GroebnerBasis:
    """A reduced, monic Gröbner basis under position-over-term grevlex."""

    module: GradedFreeModule
    elements: tuple[ModuleElement, ...]
    reduced: bool = True
    order: str = "pot-grevlex"

    @property
    def leading_terms(self) -> tuple[Term, ...]:
        return tuple(g.leading_term for g in self.elements)

    @property
    def leading_monomials(self) -> tuple[Monomial, ...]:
        return tuple(t[1] for t in self.leading_terms)

    def normal_form(self, f: ModuleElement) -> ModuleElement:
        return normal_form(f, self)

    def contains(self, f: ModuleElement) -> bool:
        return normal_form(f, self).is_zero


class _Reducer:
    """Full reduction of term dictionaries against a growing list of monic elements."""

    def __init__(self, p: int) -> None:
        self.p = p
        self.elements: list[dict[Term, int]] = []
        self.leads: list[Term] = []
        self.by_position: dict[int, list[int]] = {}

    def append(self, terms: dict[Term, int]) -> int:
        lead = max(terms, key=term_key)
        self.elements.append(terms)
        self.leads.append(lead)
        self.by_position.setdefault(lead[0], []).append(len(self.elements) - 1)
        return len(self.elements) - 1

    def divisor(self, term: Term, skip: int | None = None) -> int | None:
        position, monomial = term
        for index in self.by_position.get(position, ()):
            if index != skip and divides(self.leads[index][1], monomial):
                return index
        return None

    def reduce(self, terms: Mapping[Term, int], skip: int | None = None) -> dict[Term, int]:
        p = self.p
        work = {t: c % p for t, c in terms.items() if c % p}
        heap = [_heap_key(t) for t in work]
        heapq.heapify(heap)
        remainder: dict[Term, int] = {}
        while heap:
            term = _term_from_heap(heapq.heappop(heap))
            coefficient = work.pop(term, 0)
            if not coefficient:
                continue
            index = self.divisor(term, skip)
            if index is None:
                remainder[term] = coefficient
                continue
            element = self.elements[index]
            lead = self.leads[index]
            shift = monomial_quotient(term[1], lead[1])
            factor = coefficient * pow(element[lead], -1, p) % p
            for (position, monomial), c in element.items():
                if (position, monomial) == lead:
                    continue
                key = (position, monomial_product(monomial, shift))
                value = (work.get(key, 0) - factor * c) % p
                if value:
                    if key not in work:
                        heapq.heappush(heap, _heap_key(key))
                    work[key] = value
                else:
                    work.pop(key, None)
        return remainder


def _monic(terms: dict[Term, int], p: int) -> dict[Term, int]:
    lead = max(terms, key=term_key)
    inverse = pow(terms[lead], -1, p)
    return {t: c * inverse % p for t, c in terms.items()}


def _s_polynomial(
    f: dict[Term, int], lead_f: Term, g: dict[Term, int], lead_g: Term, p: int
) -> dict[Term, int]:
    lcm = monomial_lcm(lead_f[1], lead_g[1])
    shift_f = monomial_quotient(lcm, lead_f[1])
    shift_g = monomial_quotient(lcm, lead_g[1])
    inverse_f = pow(f[lead_f], -1, p)
    inverse_g = pow(g[lead_g], -1, p)
    result: dict[Term, int] = {}
    for (k, m), c in f.items():
        key = (k, monomial_product(m, shift_f))
        result[key] = (result.get(key, 0) + c * inverse_f) % p
    for (k, m), c in g.items():
        key = (k, monomial_product(m, shift_g))
        result[key] = (result.get(key, 0) - c * inverse_g) % p
    return {t: c for t, c in result.items() if c}


def _check_input(gens: Iterable[ModuleElement], ambient: GradedFreeModule) -> list[ModuleElement]:
    checked: list[ModuleElement] = []
    for g in gens:
        if g.module != ambient:
            raise InvalidSpecError("generator does not live in the ambient module")
        if not g.is_homogeneous:
            raise InvalidSpecError(f"generator {g!r} is not homogeneous")
        if not g.is_zero:
            checked.append(g)
    return checked


def buchberger(
    gens: Sequence[ModuleElement],
    ambient: GradedFreeModule,
    *,
    strategy: Strategy = "normal",
) -> GroebnerBasis:
    """Reduced Gröbner basis of the submodule generated by ``gens``.

    Generators and S-pairs are processed in increasing degree (normal strategy) or sugar; ties
    are broken deterministically by the leading term of the lcm and the pair indices. The
    product criterion is applied for ideals and the chain criterion for all modules.

    Args:
        gens: Homogeneous generators
        ambient: The free module containing them
        strategy: Pair selection strategy

    Returns:
        The reduced, monic Gröbner basis sorted by decreasing leading term

    Raises:
        InvalidSpecError: If a generator is inhomogeneous or lives elsewhere
    """
    p = ambient.ring.field.p
    twists = ambient.twists
    checked = _check_input(gens, ambient)
    reducer = _Reducer(p)
    sugar: list[int] = []
    # (selection degree, kind, tie-break, i, j); kind 0 = input generator, 1 = S-pair
    queue: list[tuple[int, int, tuple[int, ...], int, int]] = []
    for k, g in enumerate(checked):
        heapq.heappush(queue, (g.degree, 0, (k,), k, -1))
    pending: set[tuple[int, int]] = set()
    reductions = 0

    def lcm_degree(i: int, j: int) -> tuple[int, Term]:
        lead_i, lead_j = reducer.leads[i], reducer.leads[j]
        lcm = monomial_lcm(lead_i[1], lead_j[1])
        return sum(lcm) + twists[lead_i[0]], (lead_i[0], lcm)

    def add_pairs(new: int) -> None:
        lead_new = reducer.leads[new]
        for old in reducer.by_position[lead_new[0]]:
            if old == new:
                continue
            if ambient.rank == 1 and all(
                a == 0 or b == 0 for a, b in zip(reducer.leads[old][1], lead_new[1], strict=True)
            ):
                continue
            degree, lcm_term = lcm_degree(old, new)
            if strategy == "sugar":
                shift_old = sum(lcm_term[1]) - sum(reducer.leads[old][1])
                shift_new = sum(lcm_term[1]) - sum(lead_new[1])
                degree = max(sugar[old] + shift_old, sugar[new] + shift_new)
            pending.add((old, new))
            heapq.heappush(queue, (degree, 1, _heap_key(lcm_term), old, new))

    def chain_criterion(i: int, j: int) -> bool:
        _, lcm_term = lcm_degree(i, j)
        for k in reducer.by_position[lcm_term[0]]:
            if k in (i, j) or not divides(reducer.leads[k][1], lcm_term[1]):
                continue
            if (min(i, k), max(i, k)) not in pending and (min(j, k), max(j, k)) not in pending:
                return True
        return False

    while queue:
        degree, kind, _, i, j = heapq.heappop(queue)
        if kind == 0:
            candidate = dict(checked[i].terms)
        else:
            pending.discard((i, j))
            if chain_criterion(i, j):
                continue
            candidate = _s_polynomial(
                reducer.elements[i], reducer.leads[i], reducer.elements[j], reducer.leads[j], p
            )
        reductions += 1
        remainder = reducer.reduce(candidate)
        if not remainder:
            continue
        new = reducer.append(_monic(remainder, p))
        sugar.append(degree)
        add_pairs(new)

    logger.debug(
        "buchberger: %d reductions, %d elements before interreduction",
        reductions,
        len(reducer.elements),
    )
    return _reduced_basis(reducer, ambient)


def _reduced_basis(reducer: _Reducer, ambient: GradedFreeModule) -> GroebnerBasis:
    p = reducer.p
    leads = reducer.leads
    keep: list[int] = []
    for i, lead in enumerate(leads):
        redundant = any(
            j != i
            and leads[j][0] == lead[0]
            and divides(leads[j][1], lead[1])
            and (leads[j] != lead or j < i)
            for j in range(len(leads))
        )
        if not redundant:
            keep.append(i)
    minimal = _Reducer(p)
    for i in keep:
        minimal.append(reducer.elements[i])
    elements: list[ModuleElement] = []
    for index, terms in enumerate(minimal.elements):
        lead = minimal.leads[index]
        tail = {t: c for t, c in terms.items() if t != lead}
        reduced_tail = minimal.reduce(tail, skip=index)
        reduced_tail[lead] = terms[lead]
        elements.append(ModuleElement(ambient, _monic(reduced_tail, p)))
    elements.sort(key=lambda g: term_key(g.leading_term), reverse=True)
    return GroebnerBasis(ambient, tuple(elements))


def normal_form(f: ModuleElement, gb: GroebnerBasis) -> ModuleElement:
    """The fully reduced remainder of f; zero exactly when f lies in the submodule."""
    if f.module != gb.module:
        raise InvalidSpecError("element and Gröbner basis live in different modules")
    reducer = _Reducer(gb.module.ring.field.p)
    for g in gb.elements:
        reducer.append(dict(g.terms))
    return ModuleElement(gb.module, reducer.reduce(f.terms))


def ideal_groebner_basis(polynomials: Iterable[Polynomial], ring: PolynomialRing) -> GroebnerBasis:
    """Reduced Gröbner basis of the ideal generated by homogeneous polynomials."""
    ambient = GradedFreeModule.of_rank_one(ring)
    return buchberger([ModuleElement.from_components(ambient, [f]) for f in polynomials], ambient)


def krull_dimension(gb: GroebnerBasis) -> int:
    """dim R/I from the initial ideal; -1 when I is the unit ideal.

    The dimension is the largest size of a set S of variables such that no leading monomial is
    supported inside S.
    """
    if gb.module.rank != 1:
        raise InvalidSpecError("krull_dimension expects an ideal Gröbner basis")
    nvars = gb.module.ring.nvars
    supports = [frozenset(v for v, e in enumerate(m) if e) for m in gb.leading_monomials]
    if any(not support for support in supports):
        return -1
    for size in range(nvars, -1, -1):
        for subset in itertools.combinations(range(nvars), size):
            chosen = set(subset)
            if not any(support <= chosen for support in supports):
                return size
    return 0


def codimension(gb: GroebnerBasis) -> int:
    """Codimension of the ideal in R (n + 1 for the unit ideal)."""
    dimension = krull_dimension(gb)
    nvars = gb.module.ring.nvars
    return nvars if dimension < 0 else nvars - dimension


def hilbert_function_of_initial_ideal(gb: GroebnerBasis, d: int) -> int:
    """Number of degree-d monomials outside the initial ideal."""
    ring = gb.module.ring
    leads = gb.leading_monomials
    return sum(1 for m in ring.basis(d) if not any(divides(lead, m) for lead in leads))


def syzygies(gens: Sequence[ModuleElement], ambient: GradedFreeModule) -> list[ModuleElement]:
    """Generators of the first syzygy module of ``gens``.

    Each generator g_k is paired with a fresh basis vector e_k of twist deg g_k; the Gröbner
    basis of the pairs under position-over-term (ambient positions first) contains a Gröbner
    basis of the elements with zero ambient part, and those are the syzygies.

    Returns:
        Syzygies as elements of ⊕ R(-deg g_k); the list is generating but not always minimal
    """
    ring = ambient.ring
    rank = ambient.rank
    degrees = tuple(g.degree if not g.is_zero else 0 for g in gens)
    augmented = GradedFreeModule(ring, ambient.twists + degrees)
    unit = (0,) * ring.nvars
    lifted: list[ModuleElement] = []
    for k, g in enumerate(gens):
        terms: dict[Term, int] = dict(g.terms)
        terms[(rank + k, unit)] = 1
        lifted.append(ModuleElement(augmented, terms))
    basis = buchberger(lifted, augmented)
    target = GradedFreeModule(ring, degrees)
    found: list[ModuleElement] = []
    for element in basis.elements:
        if element.leading_term[0] >= rank:
            found.append(
                ModuleElement(target, {(k - rank, m): c for (k, m), c in element.terms.items()})
            )
    logger.debug(f"syzygies: {len(found)} generators for {len(gens)} elements")
    return found
