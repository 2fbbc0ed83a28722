"""Fan of monoids: rational vectors on the poset, LS-monoids and indecomposables."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import IntEnum
from fractions import Fraction
from functools import reduce
from math import lcm
from typing import Iterable, Mapping, Sequence

from .errors import DomainError, InputError
from .poset import Chain, Linearization, StratPoset, canonical_linearization, maximal_chains


class Ordering(IntEnum):
    LT = -1
    EQ = 0
    GT = 1


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class FanElement:
    """Finitely supported vector in Q^A; zero coordinates are never stored."""

    items: tuple[tuple[str, Fraction], ...] = ()

    @classmethod
    def of(cls, coords: Mapping[str, object]) -> "FanElement":
        pairs = ((p, _frac(v)) for p, v in coords.items())
        return cls(tuple(sorted((p, v) for p, v in pairs if v != 0)))

    @classmethod
    def unit(cls, p: str) -> "FanElement":
        return cls(((p, Fraction(1)),))

    @classmethod
    def from_vector(cls, labels: Sequence[str], values: Sequence[object]) -> "FanElement":
        return cls.of(dict(zip(labels, values)))

    @property
    def coords(self) -> dict[str, Fraction]:
        return dict(self.items)

    def __getitem__(self, p: str) -> Fraction:
        for q, v in self.items:
            if q == p:
                return v
        return Fraction(0)

    @property
    def support(self) -> frozenset[str]:
        return frozenset(p for p, _ in self.items)

    def is_zero(self) -> bool:
        return not self.items

    def is_nonnegative(self) -> bool:
        return all(v >= 0 for _, v in self.items)

    def vector(self, labels: Sequence[str]) -> tuple[Fraction, ...]:
        c = self.coords
        return tuple(c.get(p, Fraction(0)) for p in labels)

    def __add__(self, other: "FanElement") -> "FanElement":
        c = self.coords
        for p, v in other.items:
            c[p] = c.get(p, Fraction(0)) + v
        return FanElement.of(c)

    def __sub__(self, other: "FanElement") -> "FanElement":
        return self + (-other)

    def __neg__(self) -> "FanElement":
        return FanElement(tuple((p, -v) for p, v in self.items))

    def scale(self, k) -> "FanElement":
        return FanElement.of({p: v * k for p, v in self.items})

    def to_json(self) -> dict:
        return {"coords": {p: f"{v.numerator}/{v.denominator}" for p, v in self.items}}

    @classmethod
    def from_json(cls, data: dict) -> "FanElement":
        try:
            return cls.of({p: Fraction(v) for p, v in data["coords"].items()})
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise InputError(f"bad fan element {data!r}: {exc}") from exc

    def __str__(self) -> str:
        if not self.items:
            return "0"
        return "(" + ", ".join(f"{p}: {v}" for p, v in self.items) + ")"


def lex_compare(a: FanElement, b: FanElement, lin: Linearization) -> Ordering:
    """Compare along the linearization, largest element first."""
    ca, cb = a.coords, b.coords
    for p in lin.order:
        d = ca.get(p, 0) - cb.get(p, 0)
        if d:
            return Ordering.GT if d > 0 else Ordering.LT
    extra = set(ca) | set(cb)
    if extra - set(lin.order):
        raise InputError(f"coordinates {sorted(extra - set(lin.order))} are not in the linearization")
    return Ordering.EQ


def lex_key(lin: Linearization):
    """Sort key realizing lex_compare (ascending)."""
    return lambda a: a.vector(lin.order)


def degree(a: FanElement, poset: StratPoset) -> Fraction:
    """Weighted coordinate sum with weights deg f_p."""
    return sum((poset.extremal_degrees[p] * v for p, v in a.items), Fraction(0))


def support_bounds(a: FanElement, poset: StratPoset) -> tuple[str, str]:
    """(min supp a, max supp a) in the poset order; the support must be a chain."""
    supp = list(a.support)
    if not supp:
        raise DomainError("the zero vector has empty support")
    if not poset.is_chain(supp):
        raise DomainError(f"support {sorted(supp)} is not contained in a chain")
    lo = next(p for p in supp if all(poset.leq(p, q) for q in supp))
    hi = next(p for p in supp if all(poset.leq(q, p) for q in supp))
    return lo, hi


def chained(a: FanElement, b: FanElement, poset: StratPoset) -> bool:
    """min supp a >= max supp b."""
    lo_a, _ = support_bounds(a, poset)
    _, hi_b = support_bounds(b, poset)
    return poset.leq(hi_b, lo_a)


def _chain_coords(u: FanElement, chain: Chain) -> list[Fraction]:
    if not u.support <= set(chain.elements):
        raise DomainError(f"support {sorted(u.support)} is not contained in chain {chain.id}")
    return [u[p] for p in chain.elements]


def ls_member(u: FanElement, chain: Chain) -> bool:
    """Membership in the LS-monoid of the chain (lattice conditions plus positivity)."""
    coords = _chain_coords(u, chain)
    if any(v < 0 for v in coords):
        return False
    s = Fraction(0)
    for i, v in enumerate(coords[:-1]):
        s += v
        if (chain.bonds[i] * s).denominator != 1:
            return False
    return (s + coords[-1]).denominator == 1


def _ls_denominators(chain: Chain) -> list[int]:
    """M_k = lcm(b_k, b_{k+1}) for each chain position, top-down, with outer bonds 1."""
    r = chain.length
    inner = list(chain.bonds[:r]) + [1]
    return [lcm(inner[i], inner[i - 1] if i else 1) for i in range(r + 1)]


def _grid(weights: Sequence[Fraction], steps: Sequence[int], bound: Fraction):
    """All vectors with coordinates in (1/steps[i])N and weighted sum <= bound."""
    n = len(weights)

    def rec(i: int, left: Fraction, acc: list[Fraction]):
        if i == n:
            yield tuple(acc)
            return
        w, m = weights[i], steps[i]
        k = 0
        while True:
            v = Fraction(k, m)
            cost = w * v
            if cost > left:
                break
            acc.append(v)
            yield from rec(i + 1, left - cost, acc)
            acc.pop()
            k += 1

    yield from rec(0, Fraction(bound), [])


# -- integer lattices -------------------------------------------------------------

class _Lattice:
    """Z-span of integer vectors, kept in row echelon form."""

    def __init__(self, rows: Iterable[Sequence[int]], dim: int):
        self.dim = dim
        self.basis: list[list[int]] = []
        rows = [list(r) for r in rows if any(r)]
        for col in range(dim):
            while len([r for r in rows if r[col]]) > 1:
                piv = min((r for r in rows if r[col]), key=lambda r: abs(r[col]))
                reduced = [piv]
                for r in rows:
                    if r is piv:
                        continue
                    if r[col]:
                        q = r[col] // piv[col]
                        r = [x - q * y for x, y in zip(r, piv)]
                    if any(r):
                        reduced.append(r)
                rows = reduced
            live = [r for r in rows if r[col]]
            if live:
                piv = live[0] if live[0][col] > 0 else [-x for x in live[0]]
                self.basis.append(piv)
                rows = [r for r in rows if not r[col]]

    def contains(self, v: Sequence[int]) -> bool:
        v = list(v)
        for row in self.basis:
            col = next(i for i, x in enumerate(row) if x)
            if v[col] % row[col]:
                return False
            q = v[col] // row[col]
            v = [x - q * y for x, y in zip(v, row)]
        return not any(v)


# -- monoid descriptions --------------------------------------------------------------

@dataclass(frozen=True)
class MonoidDescription:
    """Monoid attached to one maximal chain: LS-type or explicitly generated."""

    chain: Chain
    generators: tuple[FanElement, ...] = ()
    ls_type: bool = True

    def __post_init__(self) -> None:
        for g in self.generators:
            if not g.support <= set(self.chain.elements):
                raise InputError(f"generator {g} is not supported on chain {self.chain.id}")
            if not g.is_nonnegative():
                raise InputError(f"generator {g} has a negative coordinate")
        if not self.ls_type and not self.generators:
            raise InputError(f"chain {self.chain.id} needs explicit generators")


@dataclass
class SaturationCertificate:
    saturated: bool
    degree_bound: int
    witness: FanElement | None = None
    note: str = "bounded certificate: checked only up to the stated degree"

    def to_json(self) -> dict:
        return {
            "saturated_up_to_bound": self.saturated,
            "degree_bound": self.degree_bound,
            "witness": None if self.witness is None else self.witness.to_json(),
            "note": self.note,
        }

    def __bool__(self) -> bool:
        return self.saturated


def _generated_elements(gens: Sequence[FanElement], poset: StratPoset, bound) -> set[FanElement]:
    """Monoid elements generated by gens with degree <= bound (gens of positive degree)."""
    degs = [degree(g, poset) for g in gens]
    if any(d <= 0 for d in degs):
        raise InputError("explicit generators must have positive degree")
    seen = {FanElement()}
    frontier = [FanElement()]
    while frontier:
        nxt = []
        for a in frontier:
            da = degree(a, poset)
            for g, dg in zip(gens, degs):
                if da + dg <= bound:
                    b = a + g
                    if b not in seen:
                        seen.add(b)
                        nxt.append(b)
        frontier = nxt
    return seen


def saturation_check(m: MonoidDescription, degree_bound: int, poset: StratPoset) -> SaturationCertificate:
    """Check that every nonnegative lattice point of degree <= bound lies in the monoid."""
    gens = list(m.generators)
    labels = list(m.chain.elements)
    if m.ls_type and not gens:
        return SaturationCertificate(True, degree_bound, note="LS-monoids are saturated by construction")
    den = reduce(lcm, (v.denominator for g in gens for _, v in g.items), 1)
    lattice = _Lattice([[int(x * den) for x in g.vector(labels)] for g in gens], len(labels))
    monoid = _generated_elements(gens, poset, degree_bound)
    weights = [Fraction(poset.extremal_degrees[p]) for p in labels]
    for point in _grid(weights, [den] * len(labels), Fraction(degree_bound)):
        if not any(point):
            continue
        if not lattice.contains([int(x * den) for x in point]):
            continue
        a = FanElement.from_vector(labels, point)
        if a not in monoid:
            return SaturationCertificate(False, degree_bound, a)
    return SaturationCertificate(True, degree_bound)


# -- the fan -------------------------------------------------------------------

@dataclass
class FanOfMonoids:
    """Per-chain monoids plus the ordered indecomposable set u_1 >^t ... >^t u_m."""

    poset: StratPoset
    linearization: Linearization
    monoids: tuple[MonoidDescription, ...]
    indecomposable: tuple[FanElement, ...] = ()
    names: tuple[str, ...] = ()
    degree_bound: int = 1
    _members: dict = field(default_factory=dict, repr=False)
    _elements: dict = field(default_factory=dict, repr=False)

    @classmethod
    def build(
        cls,
        poset: StratPoset,
        lin: Linearization | None = None,
        generators: Mapping[str, Sequence[FanElement]] | None = None,
        degree_bound: int | None = None,
        namer=None,
    ) -> "FanOfMonoids":
        """LS-type fan when ``generators`` is None, else explicit generators keyed by chain id."""
        lin = lin or canonical_linearization(poset)
        chains = maximal_chains(poset)
        if generators is None:
            monoids = tuple(MonoidDescription(c) for c in chains)
            bound = 1 if degree_bound is None else degree_bound
        else:
            missing = [c.id for c in chains if c.id not in generators]
            if missing:
                raise InputError(f"no generators given for chains {missing}")
            monoids = tuple(MonoidDescription(c, tuple(generators[c.id]), False) for c in chains)
            top = max(degree(g, poset) for m in monoids for g in m.generators)
            bound = int(top) if degree_bound is None else degree_bound
        fan = cls(poset, lin, monoids, degree_bound=bound)
        fan.indecomposable = tuple(indecomposables(fan, bound))
        namer = namer or default_namer(poset)
        fan.names = tuple(namer(i, u) for i, u in enumerate(fan.indecomposable))
        if len(set(fan.names)) != len(fan.names):
            raise InputError(f"generator names are not unique: {fan.names}")
        return fan

    @property
    def ls_type(self) -> bool:
        return all(m.ls_type for m in self.monoids)

    def chains_containing(self, support: Iterable[str]) -> list[MonoidDescription]:
        s = set(support)
        return [m for m in self.monoids if s <= set(m.chain.elements)]

    def monoid_contains(self, m: MonoidDescription, a: FanElement) -> bool:
        if not a.support <= set(m.chain.elements) or not a.is_nonnegative():
            return False
        if m.ls_type:
            return ls_member(a, m.chain)
        d = degree(a, self.poset)
        key = (m.chain.id, d)
        if key not in self._members:
            self._members[key] = _generated_elements(m.generators, self.poset, d)
        return a in self._members[key]

    def contains(self, a: FanElement) -> bool:
        """Membership in Gamma = union of the chain monoids."""
        return any(self.monoid_contains(m, a) for m in self.chains_containing(a.support))

    def chain_elements(self, m: MonoidDescription, bound) -> list[FanElement]:
        """Elements of the chain monoid with degree <= bound."""
        key = (m.chain.id, Fraction(bound))
        if key not in self._elements:
            if m.ls_type:
                labels = list(m.chain.elements)
                weights = [Fraction(self.poset.extremal_degrees[p]) for p in labels]
                steps = _ls_denominators(m.chain)
                out = []
                for point in _grid(weights, steps, Fraction(bound)):
                    a = FanElement.from_vector(labels, point)
                    if ls_member(a, m.chain):
                        out.append(a)
            else:
                out = sorted(_generated_elements(m.generators, self.poset, bound), key=lambda a: a.items)
            self._elements[key] = out
        return self._elements[key]

    def elements_of_degree(self, d) -> list[FanElement]:
        """All of Gamma in degree d, in decreasing >^t order."""
        found = set()
        for m in self.monoids:
            for a in self.chain_elements(m, d):
                if degree(a, self.poset) == d:
                    found.add(a)
        return sorted(found, key=lex_key(self.linearization), reverse=True)

    def index(self, u: FanElement) -> int:
        return self.indecomposable.index(u)

    def name_of(self, u: FanElement) -> str:
        return self.names[self.index(u)]

    def compare(self, a: FanElement, b: FanElement) -> Ordering:
        return lex_compare(a, b, self.linearization)


def default_namer(poset: StratPoset):
    """Name unit vectors after their element and everything else u1, u2, ..."""
    counter = itertools.count(1)

    def name(i: int, u: FanElement) -> str:
        if len(u.items) == 1 and u.items[0][1] == 1:
            return f"y_{u.items[0][0]}"
        return f"y_u{next(counter)}"

    return name


def _is_indecomposable(fan: FanOfMonoids, m: MonoidDescription, a: FanElement, pool: list[FanElement]) -> bool:
    for a1 in pool:
        if a1.is_zero() or a1 == a:
            continue
        a2 = a - a1
        if a2.is_zero() or not a2.is_nonnegative():
            continue
        if fan.monoid_contains(m, a2) and chained(a1, a2, fan.poset):
            return False
    return True


def indecomposables(fan: FanOfMonoids, degree_bound: int) -> list[FanElement]:
    """Indecomposable elements of degree <= bound in decreasing >^t order.

    An element found on several chains must get the same verdict on each.
    """
    verdict: dict[FanElement, bool] = {}
    for m in fan.monoids:
        pool = fan.chain_elements(m, degree_bound)
        for a in pool:
            if a.is_zero():
                continue
            ok = _is_indecomposable(fan, m, a, pool)
            if verdict.setdefault(a, ok) != ok:
                raise DomainError(f"{a} is indecomposable on one chain but not on another")
    found = [a for a, ok in verdict.items() if ok]
    return sorted(found, key=lex_key(fan.linearization), reverse=True)


def decompose(a: FanElement, fan: FanOfMonoids) -> list[FanElement]:
    """Ordered decomposition a = a_1 + ... + a_s into indecomposables with chained supports."""
    if a.is_zero():
        return []
    homes = [m for m in fan.chains_containing(a.support) if fan.monoid_contains(m, a)]
    if not homes:
        raise DomainError(f"{a} is not an element of the fan")
    m = homes[0]
    gens = set(fan.indecomposable)
    if m.ls_type and all(fan.poset.extremal_degrees[p] == 1 for p in m.chain.elements):
        parts = _ls_decompose(a, m.chain)
    else:
        parts = _greedy_decompose(a, m, fan)
    for u in parts:
        if u not in gens:
            raise DomainError(f"part {u} of {a} is not among the indecomposables")
    return parts


def _ls_decompose(a: FanElement, chain: Chain) -> list[FanElement]:
    parts = []
    labels = chain.elements
    rest = a
    while not rest.is_zero():
        u = [rest[p] for p in labels]
        sums = list(itertools.accumulate(u))
        # the first position from the top where the running sum reaches 1
        j = next((i for i, s in enumerate(sums) if s >= 1), None)
        if j is None:
            raise DomainError(f"{a} has non-integral degree")
        head = {labels[i]: u[i] for i in range(j)}
        head[labels[j]] = 1 - (sums[j - 1] if j else 0)
        h = FanElement.of(head)
        parts.append(h)
        rest = rest - h
        if not ls_member(rest, chain):
            raise DomainError(f"{a} is not in the LS-monoid of chain {chain.id}")
    return parts


def _greedy_decompose(a: FanElement, m: MonoidDescription, fan: FanOfMonoids) -> list[FanElement]:
    poset = fan.poset
    parts: list[FanElement] = []
    rest = a
    while not rest.is_zero():
        _, top = support_bounds(rest, poset)
        options = []
        for i, u in enumerate(fan.indecomposable):
            if not u.support <= set(m.chain.elements) or support_bounds(u, poset)[1] != top:
                continue
            left = rest - u
            if not left.is_nonnegative():
                continue
            if not left.is_zero() and not (fan.monoid_contains(m, left) and chained(u, left, poset)):
                continue
            options.append((degree(u, poset), i, u))
        if not options:
            raise DomainError(f"{a} admits no ordered decomposition into indecomposables")
        u = min(options)[2]
        parts.append(u)
        rest = rest - u
    return parts
