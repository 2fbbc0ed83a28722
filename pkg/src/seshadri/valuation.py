"""Chain valuations, the quasi-valuation, subduction and Groebner lifting."""

from __future__ import annotations

import json
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable, Hashable, Mapping, Sequence

from .errors import DomainError, InputError
from .fan import FanElement, FanOfMonoids, Ordering, decompose, lex_compare, lex_key
from .fan_algebra import StandardMonomial, algebra_image, ring_of, standard_monomials
from .poset import Chain, Linearization
from .polyring import (
    WDEG_INVLEX,
    GroebnerBasis,
    MonomialOrder,
    Polynomial,
    format_polynomial,
    initial_ideal_equal,
    is_reduced,
    normal_form,
    s_polynomial,
    sort_basis,
)


@dataclass(frozen=True)
class RingElement:
    """Element of R written as psi(poly) for a polynomial in the generators."""

    poly: Polynomial

    @property
    def degree(self) -> int:
        degs = self.poly.weighted_degrees()
        if len(degs) > 1:
            raise DomainError(f"{self.poly} is not homogeneous")
        return degs.pop() if degs else 0

    def __add__(self, other: "RingElement") -> "RingElement":
        return RingElement(self.poly + other.poly)

    def __sub__(self, other: "RingElement") -> "RingElement":
        return RingElement(self.poly - other.poly)

    def __mul__(self, other) -> "RingElement":
        if isinstance(other, RingElement):
            return RingElement(self.poly * other.poly)
        return RingElement(self.poly * other)

    __rmul__ = __mul__


def _poly(g) -> Polynomial:
    return g.poly if isinstance(g, RingElement) else g


class QuasiValuationBackend(ABC):
    """Source of values V_C(g) for ring elements given as polynomials in S."""

    def __init__(self, fan: FanOfMonoids):
        self.fan = fan
        self.ring = ring_of(fan)

    @property
    def chains(self) -> list[Chain]:
        return [m.chain for m in self.fan.monoids]

    def chain_valuation(self, g, chain: Chain) -> FanElement:
        raise DomainError(f"{type(self).__name__} does not provide chain valuations")

    def quasi_valuation(self, g, lin: Linearization | None = None) -> FanElement:
        """Minimum over all maximal chains of the chain valuations."""
        g = _poly(g)
        if self.is_zero(g):
            raise DomainError("the quasi-valuation of zero is undefined")
        lin = lin or self.fan.linearization
        values = [self.chain_valuation(g, c) for c in self.chains]
        return min(values, key=lex_key(lin))

    @abstractmethod
    def is_zero(self, g) -> bool:
        """Whether psi(g) vanishes in R."""

    @abstractmethod
    def leading_ratio(self, f: Polynomial, m: Polynomial, value: FanElement) -> Fraction:
        """lambda with V(f - lambda m) > value, given V(f) = V(m) = value."""


class TableBackend(QuasiValuationBackend):
    """Per-chain generator values extended additively to standard monomials."""

    def __init__(self, fan: FanOfMonoids, table: Mapping[str, Mapping[str, FanElement]]):
        super().__init__(fan)
        missing = [n for n in fan.names if n not in table]
        if missing:
            raise InputError(f"valuation table lacks generators {missing}")
        self.table = {n: dict(v) for n, v in table.items()}

    def _standard_term(self, g: Polynomial) -> tuple[tuple[int, ...], Fraction]:
        if len(g.terms) != 1:
            raise DomainError("the table backend only evaluates single standard monomials")
        (e, c), = g.terms.items()
        word = [u for u, k in zip(self.fan.indecomposable, e) for _ in range(k)]
        word.sort(key=lex_key(self.fan.linearization), reverse=True)
        try:
            StandardMonomial(tuple(word)).check(self.fan)
        except DomainError as exc:
            raise DomainError(f"the table backend refuses non-standard input: {exc}") from exc
        return e, c

    def chain_valuation(self, g, chain: Chain) -> FanElement:
        e, _ = self._standard_term(_poly(g))
        out = FanElement()
        for name, k in zip(self.fan.names, e):
            if k:
                out = out + self.table[name][chain.id].scale(k)
        return out

    def is_zero(self, g) -> bool:
        return _poly(g).is_zero()

    def leading_ratio(self, f, m, value) -> Fraction:
        raise DomainError("the table backend cannot resolve leading coefficients")

    def to_json(self) -> dict:
        return {n: {cid: v.to_json() for cid, v in per.items()} for n, per in self.table.items()}

    @classmethod
    def from_json(cls, fan: FanOfMonoids, data: dict) -> "TableBackend":
        if not isinstance(data, dict):
            raise InputError("valuation table must be an object")
        table = {n: {cid: FanElement.from_json(v) for cid, v in per.items()} for n, per in data.items()}
        return cls(fan, table)

    @classmethod
    def load(cls, fan: FanOfMonoids, path: str | Path) -> "TableBackend":
        return cls.from_json(fan, json.loads(Path(path).read_text(encoding="utf-8")))


class BasisExpansionBackend(QuasiValuationBackend):
    """Expands ring elements in the standard monomial basis through a linear oracle.

    ``evaluate`` maps a homogeneous polynomial in S to a finitely supported
    coordinate vector (a dict) that is linear in its input and injective on
    each graded piece of R.
    """

    def __init__(self, fan: FanOfMonoids, evaluate: Callable[[Polynomial], Mapping[Hashable, Fraction]]):
        super().__init__(fan)
        self.evaluate = evaluate
        self._bases: dict[int, tuple] = {}

    def _basis(self, d: int):
        if d not in self._bases:
            monos = standard_monomials(self.fan, d)
            columns = [dict(self.evaluate(sm.as_polynomial(self.ring, self.fan))) for sm in monos]
            rows, inverse = _invertible_block(columns)
            self._bases[d] = (monos, columns, rows, inverse)
        return self._bases[d]

    def rank(self, d: int) -> int:
        monos, _, rows, _ = self._basis(d)
        return len(rows)

    def expand(self, g) -> dict[StandardMonomial, Fraction]:
        """Coefficients of g in the standard monomial basis of its degree."""
        g = _poly(g)
        if g.is_zero():
            return {}
        d = RingElement(g).degree
        monos, columns, rows, inverse = self._basis(d)
        if len(rows) != len(monos):
            raise DomainError(f"evaluation oracle is not injective in degree {d}")
        target = dict(self.evaluate(g))
        rhs = [target.get(r, Fraction(0)) for r in rows]
        coeffs = [sum((a * b for a, b in zip(row, rhs)), Fraction(0)) for row in inverse]
        check: dict[Hashable, Fraction] = {}
        for c, col in zip(coeffs, columns):
            if c:
                for k, v in col.items():
                    check[k] = check.get(k, 0) + c * v
        if {k: v for k, v in check.items() if v} != {k: v for k, v in target.items() if v}:
            raise DomainError("element is not in the span of the standard monomials")
        return {m: c for m, c in zip(monos, coeffs) if c}

    def quasi_valuation(self, g, lin: Linearization | None = None) -> FanElement:
        terms = self.expand(g)
        if not terms:
            raise DomainError("the quasi-valuation of zero is undefined")
        return min((m.value for m in terms), key=lex_key(lin or self.fan.linearization))

    def is_zero(self, g) -> bool:
        g = _poly(g)
        return g.is_zero() or not any(self.evaluate(g).values())

    def leading_ratio(self, f, m, value) -> Fraction:
        mf, mm = self.expand(f), self.expand(m)
        key = next(k for k in mm if k.value == value)
        return mf.get(key, Fraction(0)) / mm[key]


def _invertible_block(columns: Sequence[Mapping[Hashable, Fraction]]):
    """Pick rows making the column matrix square and invertible; return rows and inverse."""
    keys = sorted({k for col in columns for k in col}, key=repr)
    n = len(columns)
    # Gaussian elimination on the transpose to find pivot rows
    mat = [[col.get(k, Fraction(0)) for col in columns] for k in keys]
    chosen: list[int] = []
    basis: list[list[Fraction]] = []
    pivots: list[int] = []
    for idx, row in enumerate(mat):
        r = list(row)
        for b, p in zip(basis, pivots):
            if r[p]:
                f = r[p] / b[p]
                r = [x - f * y for x, y in zip(r, b)]
        piv = next((i for i, x in enumerate(r) if x), None)
        if piv is not None:
            basis.append(r)
            pivots.append(piv)
            chosen.append(idx)
            if len(chosen) == n:
                break
    rows = [keys[i] for i in chosen]
    if len(rows) < n:
        return rows, []
    square = [list(mat[i]) for i in chosen]
    return rows, _inverse(square)


def _inverse(a: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(a)
    aug = [row + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col])
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


# -- top-level operations ------------------------------------------------------------

def chain_valuation(g, chain: Chain, backend: QuasiValuationBackend) -> FanElement:
    return backend.chain_valuation(_poly(g), chain)


def quasi_valuation(g, backend: QuasiValuationBackend, lin: Linearization | None = None) -> FanElement:
    return backend.quasi_valuation(_poly(g), lin)


@dataclass
class SubductionStep:
    value: FanElement
    coefficient: Fraction
    monomial: StandardMonomial


@dataclass
class SubductionResult:
    terms: list[tuple[Fraction, StandardMonomial]]
    residual_zero: bool
    steps: list[SubductionStep] = field(default_factory=list)

    def as_polynomial(self, fan: FanOfMonoids) -> Polynomial:
        ring = ring_of(fan)
        out = Polynomial.zero(ring)
        for c, m in self.terms:
            out = out + m.as_polynomial(ring, fan, c)
        return out


def subduct(f, backend: QuasiValuationBackend, max_steps: int = 10_000) -> SubductionResult:
    """Peel value-minimal standard monomials off f until nothing remains."""
    fan = backend.fan
    f = _poly(f)
    steps: list[SubductionStep] = []
    previous: FanElement | None = None
    for _ in range(max_steps):
        if backend.is_zero(f):
            return SubductionResult([(s.coefficient, s.monomial) for s in steps], True, steps)
        a = backend.quasi_valuation(f)
        if previous is not None and lex_compare(a, previous, fan.linearization) != Ordering.GT:
            raise DomainError(f"subduction stalled: value {a} does not exceed {previous}")
        if not fan.contains(a):
            raise DomainError(f"value {a} is not in the fan; the backend is inconsistent")
        sm = StandardMonomial(tuple(decompose(a, fan)))
        m = sm.as_polynomial(backend.ring, fan)
        lam = backend.leading_ratio(f, m, a)
        if not lam:
            raise DomainError(f"no leading coefficient found at value {a}")
        steps.append(SubductionStep(a, lam, sm))
        f = f - m * lam
        previous = a
    raise DomainError("subduction did not terminate")


def subduct_by_expansion(f, backend: BasisExpansionBackend) -> SubductionResult:
    """One-shot variant: read every term off the basis expansion at once."""
    terms = backend.expand(f)
    key = lex_key(backend.fan.linearization)
    ordered = sorted(terms.items(), key=lambda t: key(t[0].value))
    steps = [SubductionStep(m.value, c, m) for m, c in ordered]
    return SubductionResult([(c, m) for m, c in ordered], True, steps)


@dataclass
class LiftEntry:
    relation: Polynomial
    subduction: SubductionResult
    lifted: Polynomial

    def to_json(self, fan: FanOfMonoids) -> dict:
        return {
            "relation": format_polynomial(self.relation),
            "subduction": [
                {"value": s.value.to_json(), "coefficient": str(s.coefficient), "monomial": s.monomial.label(fan)}
                for s in self.subduction.steps
            ],
            "lifted": format_polynomial(self.lifted),
        }


def _lift(r: Polynomial, backend: QuasiValuationBackend, order: MonomialOrder) -> LiftEntry:
    fan = backend.fan
    if algebra_image(r, fan):
        raise DomainError(f"{r} does not vanish in the fan algebra")
    res = subduct(r, backend)
    lifted = r - res.as_polynomial(fan)
    if not backend.is_zero(lifted):
        raise DomainError(f"lifted relation {lifted} does not vanish in R")
    if not r.is_zero():
        lm = r.leading_monomial(order)
        if lifted.leading_monomial(order) != lm or lifted.terms[lm] != r.terms[lm]:
            raise DomainError(f"lifting changed the initial term of {r}")
    return LiftEntry(r, res, lifted)


def lift_relation(r: Polynomial, backend: QuasiValuationBackend, order: MonomialOrder = WDEG_INVLEX) -> Polynomial:
    """r~ = r - h where h is the subduction of psi(r)."""
    return _lift(r, backend, order).lifted


@dataclass
class LiftReport:
    basis: GroebnerBasis
    entries: list[LiftEntry]
    spairs_checked: int

    def to_json(self, fan: FanOfMonoids) -> dict:
        return {
            "lifted_basis": [format_polynomial(g, self.basis.order) for g in self.basis],
            "entries": [e.to_json(fan) for e in self.entries],
            "spairs_checked": self.spairs_checked,
        }


def lift_groebner_basis(G: GroebnerBasis, backend: QuasiValuationBackend) -> LiftReport:
    """Lift every element and verify the result is a reduced Groebner basis."""
    order = G.order
    entries = [_lift(r, backend, order) for r in G]
    lifted = [e.lifted for e in entries]
    checked = 0
    for i in range(len(lifted)):
        for j in range(i + 1, len(lifted)):
            rem = normal_form(s_polynomial(lifted[i], lifted[j], order), lifted, order)
            checked += 1
            if rem:
                raise DomainError(
                    f"S-polynomial of {format_polynomial(lifted[i])} and {format_polynomial(lifted[j])} "
                    f"leaves remainder {format_polynomial(rem)}"
                )
    if lifted and not is_reduced(lifted, order):
        raise DomainError("lifted basis is not reduced")
    basis = GroebnerBasis(tuple(sort_basis(lifted, order)) if lifted else (), order)
    if not initial_ideal_equal(G, basis):
        raise DomainError("lifted basis has a different initial ideal")
    return LiftReport(basis, entries, checked)
