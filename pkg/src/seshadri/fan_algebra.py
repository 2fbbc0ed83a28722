"""The fan algebra K[Gamma]: products, straightening, presentation ideal and quadraticity."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DomainError
from .fan import FanElement, FanOfMonoids, Ordering, chained, decompose, degree, lex_key
from .polyring import (
    WDEG_INVLEX,
    GroebnerBasis,
    MonomialOrder,
    Polynomial,
    VariableSet,
    buchberger,
    sort_basis,
)


class Zero:
    """The zero element of K[Gamma]; products of incompatible supports land here."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "Zero"

    def __bool__(self) -> bool:
        return False


ZERO = Zero()


def _common_chain(elements: Sequence[FanElement], fan: FanOfMonoids) -> bool:
    supp = set().union(*(a.support for a in elements)) if elements else set()
    return fan.poset.is_chain(supp)


def fan_product(a: FanElement, b: FanElement, fan: FanOfMonoids) -> FanElement | Zero:
    """x_a x_b = x_{a+b} when the supports share a chain, otherwise zero."""
    return a + b if _common_chain([a, b], fan) else ZERO


@dataclass(frozen=True)
class StandardMonomial:
    """Indecomposables a_1, ..., a_k with min supp a_i >= max supp a_{i+1}."""

    parts: tuple[FanElement, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "parts", tuple(self.parts))

    def check(self, fan: FanOfMonoids) -> None:
        gens = set(fan.indecomposable)
        for u in self.parts:
            if u not in gens:
                raise DomainError(f"{u} is not indecomposable")
        for u, v in zip(self.parts, self.parts[1:]):
            if not chained(u, v, fan.poset):
                raise DomainError(f"parts {u} and {v} are not support-chained")

    @property
    def value(self) -> FanElement:
        out = FanElement()
        for u in self.parts:
            out = out + u
        return out

    def exponents(self, fan: FanOfMonoids) -> tuple[int, ...]:
        e = [0] * len(fan.indecomposable)
        for u in self.parts:
            e[fan.index(u)] += 1
        return tuple(e)

    def as_polynomial(self, ring: VariableSet, fan: FanOfMonoids, coeff=1) -> Polynomial:
        return Polynomial.monomial(ring, self.exponents(fan), coeff)

    def label(self, fan: FanOfMonoids) -> str:
        return " ".join(fan.name_of(u) for u in self.parts) or "1"


def ring_of(fan: FanOfMonoids) -> VariableSet:
    """The polynomial ring S on the indecomposables, enumerated along >^t."""
    weights = []
    for u in fan.indecomposable:
        d = degree(u, fan.poset)
        if d.denominator != 1:
            raise DomainError(f"indecomposable {u} has non-integral degree {d}")
        weights.append(int(d))
    return VariableSet(fan.names, tuple(weights))


def standard_form(exps: Sequence[int], fan: FanOfMonoids) -> StandardMonomial | Zero:
    """Image of a y-monomial in K[Gamma], written in the standard basis."""
    word = [u for u, k in zip(fan.indecomposable, exps) for _ in range(k)]
    if not _common_chain(word, fan):
        return ZERO
    total = FanElement()
    for u in word:
        total = total + u
    return StandardMonomial(tuple(decompose(total, fan)))


def is_standard_word(word: Sequence[FanElement], fan: FanOfMonoids) -> bool:
    return all(chained(u, v, fan.poset) for u, v in zip(word, word[1:]))


@dataclass(frozen=True)
class PairRewrite:
    """Outcome of J(u_i, u_j): case 1 (zero), 2 (binomial) or 3 (already standard)."""

    case: int
    result: tuple[FanElement, ...] | None


def rewrite_pair(a: FanElement, b: FanElement, fan: FanOfMonoids) -> PairRewrite:
    if not _common_chain([a, b], fan):
        return PairRewrite(1, None)
    if chained(a, b, fan.poset):
        return PairRewrite(3, (a, b))
    if chained(b, a, fan.poset):
        return PairRewrite(3, (b, a))
    parts = decompose(a + b, fan)
    if fan.ls_type and len(parts) != 2:
        raise DomainError(f"{a} + {b} decomposes into {len(parts)} parts, expected 2")
    return PairRewrite(2, tuple(parts))


def straighten(word: Sequence[FanElement], fan: FanOfMonoids) -> StandardMonomial | Zero:
    """Rewrite a product of indecomposables into standard form by pairwise moves.

    Each non-standard leading pair is replaced through J, and the new head is
    strictly larger in >^t than the old one, so the loop terminates.
    """
    word = list(word)
    if not _common_chain(word, fan):
        return ZERO
    if len(word) <= 1:
        return StandardMonomial(tuple(word))
    word.sort(key=lex_key(fan.linearization), reverse=True)
    head = word[0]
    tail = straighten(word[1:], fan)
    assert not isinstance(tail, Zero)
    tail_parts = list(tail.parts)
    while not chained(head, tail_parts[0], fan.poset):
        step = rewrite_pair(head, tail_parts[0], fan)
        assert step.case != 1, "pair on a common chain cannot vanish"
        new_head, rest = step.result[0], list(step.result[1:])
        top = max(head, tail_parts[0], key=lex_key(fan.linearization))
        if step.case == 2 and fan.compare(new_head, top) != Ordering.GT:
            raise AssertionError(f"rewritten head {new_head} is not larger than {top}")
        head = new_head
        tail_parts = list(straighten(rest + tail_parts[1:], fan).parts)
    return StandardMonomial(tuple([head] + tail_parts))


@dataclass(frozen=True)
class QuadraticRelation:
    i: int
    j: int
    case: int
    poly: Polynomial


@dataclass
class FanAlgebraPresentation:
    fan: FanOfMonoids
    ring: VariableSet
    generators: tuple[Polynomial, ...]
    quadratic: tuple[QuadraticRelation, ...]
    degree_bound: int
    order: MonomialOrder = WDEG_INVLEX

    def groebner(self) -> GroebnerBasis:
        if not hasattr(self, "_gb"):
            self._gb = buchberger(self.generators, self.order)
        return self._gb

    def dump(self) -> list[str]:
        from .polyring import format_polynomial

        return [format_polynomial(g, self.order) for g in self.groebner()]


def quadratic_relations(fan: FanOfMonoids, ring: VariableSet | None = None) -> list[QuadraticRelation]:
    """The nonzero J(u_i, u_j), i <= j."""
    ring = ring or ring_of(fan)
    out = []
    m = len(fan.indecomposable)
    for i in range(m):
        for j in range(i, m):
            a, b = fan.indecomposable[i], fan.indecomposable[j]
            e = [0] * m
            e[i] += 1
            e[j] += 1
            step = rewrite_pair(a, b, fan)
            if step.case == 1:
                out.append(QuadraticRelation(i, j, 1, Polynomial.monomial(ring, e)))
            elif step.case == 2:
                rhs = StandardMonomial(step.result).as_polynomial(ring, fan)
                out.append(QuadraticRelation(i, j, 2, Polynomial.monomial(ring, e) - rhs))
    return out


def _monomials(nvars: int, deg: int):
    for combo in itertools.combinations_with_replacement(range(nvars), deg):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        yield tuple(e)


def presentation_ideal(fan: FanOfMonoids, degree_bound: int, order: MonomialOrder = WDEG_INVLEX) -> FanAlgebraPresentation:
    """Generators of ker(S -> K[Gamma]) among y-monomials of total degree <= bound."""
    ring = ring_of(fan)
    m = len(fan.indecomposable)
    groups: dict[FanElement, list[tuple[int, ...]]] = {}
    zeros: list[tuple[int, ...]] = []
    for d in range(1, degree_bound + 1):
        for e in _monomials(m, d):
            sf = standard_form(e, fan)
            if isinstance(sf, Zero):
                zeros.append(e)
            else:
                groups.setdefault(sf.value, []).append(e)
    gens = [Polynomial.monomial(ring, e) for e in zeros]
    key = lambda e: order.key(e, ring)  # noqa: E731
    for members in groups.values():
        members = sorted(members, key=key, reverse=True)
        for x, y in itertools.combinations(members, 2):
            gens.append(Polynomial.monomial(ring, x) - Polynomial.monomial(ring, y))
    gens = sort_basis(gens, order) if gens else []
    return FanAlgebraPresentation(fan, ring, tuple(gens), tuple(quadratic_relations(fan, ring)), degree_bound, order)


def algebra_image(f: Polynomial, fan: FanOfMonoids) -> dict[StandardMonomial, Fraction]:
    """phi(f) in the standard basis of K[Gamma]; empty dict means phi(f) = 0."""
    out: dict[StandardMonomial, Fraction] = {}
    for e, c in f.terms.items():
        sf = standard_form(e, fan)
        if isinstance(sf, Zero):
            continue
        out[sf] = out.get(sf, 0) + c
    return {k: v for k, v in out.items() if v}


def standard_monomials(fan: FanOfMonoids, d: int) -> list[StandardMonomial]:
    """Standard monomials of weighted degree d, one per element of Gamma of degree d."""
    return [StandardMonomial(tuple(decompose(a, fan))) for a in fan.elements_of_degree(d)]


@dataclass(frozen=True)
class KoszulResult:
    quadratic: bool
    witness: Polynomial | None
    basis: GroebnerBasis

    @property
    def verdict(self) -> str:
        return "Quadratic" if self.quadratic else "NotQuadratic"


def koszul_check(pres: FanAlgebraPresentation) -> KoszulResult:
    """Quadratic iff the reduced Groebner basis of the presentation ideal has only quadrics."""
    gb = pres.groebner()
    for g in gb:
        if g.total_degree != 2:
            return KoszulResult(False, g, gb)
    return KoszulResult(True, None, gb)
