"""Graded posets with bonds: the combinatorial skeleton of a stratification."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from math import lcm
from pathlib import Path
from typing import Iterator, Mapping, Sequence

from .errors import InputError

GEOMETRIC_AXIOMS_NOTE = (
    "geometric axioms are not checked: smoothness in codimension one, "
    "vanishing of f_q on X_p for q not <= p, and the set-theoretic zero locus of "
    "f_p on X_p are assumed"
)


@dataclass(frozen=True)
class StratPoset:
    """Finite poset A with covering relations, bonds and extremal-function degrees.

    ``covers`` holds pairs ``(p, q)`` meaning ``q < p`` is a covering relation.
    ``bonds`` is keyed by the same pairs.
    """

    elements: tuple[str, ...]
    covers: tuple[tuple[str, str], ...]
    bonds: Mapping[tuple[str, str], int]
    extremal_degrees: Mapping[str, int]
    label_priority: tuple[str, ...] = ()
    _below: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "elements", tuple(self.elements))
        object.__setattr__(self, "covers", tuple(tuple(c) for c in self.covers))
        object.__setattr__(self, "bonds", dict(self.bonds))
        object.__setattr__(self, "extremal_degrees", dict(self.extremal_degrees))
        object.__setattr__(self, "label_priority", tuple(self.label_priority))

    def lower_covers(self, p: str) -> list[str]:
        return sorted(q for (a, q) in self.covers if a == p)

    def upper_covers(self, q: str) -> list[str]:
        return sorted(a for (a, b) in self.covers if b == q)

    def down_set(self, p: str) -> frozenset[str]:
        """All q with q <= p."""
        if p not in self._below:
            seen = {p}
            stack = [p]
            while stack:
                x = stack.pop()
                for q in self.lower_covers(x):
                    if q not in seen:
                        seen.add(q)
                        stack.append(q)
            self._below[p] = frozenset(seen)
        return self._below[p]

    def leq(self, q: str, p: str) -> bool:
        return q in self.down_set(p)

    def comparable(self, p: str, q: str) -> bool:
        return self.leq(p, q) or self.leq(q, p)

    @property
    def maximal_elements(self) -> list[str]:
        lowered = {q for (_, q) in self.covers}
        tops = {p for p in self.elements if not self.upper_covers(p)}
        return sorted(tops if tops else set(self.elements) - lowered)

    @property
    def minimal_elements(self) -> list[str]:
        return sorted(p for p in self.elements if not self.lower_covers(p))

    @property
    def p_max(self) -> str:
        tops = self.maximal_elements
        if len(tops) != 1:
            raise InputError(f"poset has {len(tops)} maximal elements, expected exactly one")
        return tops[0]

    def length(self, p: str) -> int:
        """Length of a longest chain from p down to a minimal element."""
        below = self.lower_covers(p)
        return 0 if not below else 1 + max(self.length(q) for q in below)

    @property
    def rank(self) -> int:
        return self.length(self.p_max)

    def bond(self, p: str, q: str) -> int:
        return self.bonds[(p, q)]

    def is_chain(self, subset: Sequence[str] | frozenset[str]) -> bool:
        items = list(subset)
        return all(self.comparable(a, b) for a, b in itertools.combinations(items, 2))


@dataclass(frozen=True)
class ExtendedPoset:
    """A with an extra bottom element p_{-1}; bottom bonds equal deg f_p."""

    base: StratPoset
    bottom_bonds: Mapping[str, int]

    @classmethod
    def from_poset(cls, poset: StratPoset) -> "ExtendedPoset":
        return cls(poset, {p: poset.extremal_degrees[p] for p in poset.minimal_elements})

    def edges(self) -> dict[tuple[str, str], int]:
        out = dict(self.base.bonds)
        for p, b in self.bottom_bonds.items():
            out[(p, "p_-1")] = b
        return out


@dataclass(frozen=True)
class Chain:
    """Maximal chain p_r > ... > p_0 listed top-down.

    ``bonds[i]`` is the bond below ``elements[i]``; the last entry is the
    bottom bond deg f_{p_0}.
    """

    elements: tuple[str, ...]
    bonds: tuple[int, ...]

    @property
    def id(self) -> str:
        return ">".join(self.elements)

    @property
    def length(self) -> int:
        return len(self.elements) - 1

    def position(self, p: str) -> int:
        """Index k of p as p_k (bottom is 0)."""
        return self.length - self.elements.index(p)

    def __contains__(self, p: object) -> bool:
        return p in self.elements

    def __iter__(self):
        return iter(self.elements)


@dataclass(frozen=True)
class Linearization:
    """Total order q_M >^t ... >^t q_0, stored top-down."""

    order: tuple[str, ...]

    def index(self, p: str) -> int:
        return self.order.index(p)

    def greater(self, p: str, q: str) -> bool:
        return self.order.index(p) < self.order.index(q)


@dataclass
class ValidationReport:
    failures: list[str]
    assumed: list[str]

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {"valid": self.ok, "failures": self.failures, "assumed": self.assumed}


def validate(poset: StratPoset) -> ValidationReport:
    """Check the combinatorial invariants; geometric axioms are reported as assumed."""
    failures: list[str] = []
    elements = list(poset.elements)
    known = set(elements)
    if len(known) != len(elements):
        failures.append("duplicate element labels")
    for p, q in poset.covers:
        if p not in known or q not in known:
            failures.append(f"cover {p}>{q} references an unknown element")
    if failures:
        return ValidationReport(failures, [GEOMETRIC_AXIOMS_NOTE])

    if _has_cycle(poset):
        failures.append("cover relation has a cycle")
        return ValidationReport(failures, [GEOMETRIC_AXIOMS_NOTE])

    for p, q in poset.covers:
        # a genuine cover admits no longer path p > ... > q
        others = [x for x in poset.lower_covers(p) if x != q]
        if any(poset.leq(q, x) for x in others):
            failures.append(f"pair {p}>{q} is not a covering relation")

    tops = [p for p in elements if not poset.upper_covers(p)]
    if len(tops) != 1:
        failures.append(f"expected a unique maximal element, found {len(tops)}")
    else:
        lengths = {c.length for c in _all_chains(poset, tops[0])}
        if len(lengths) > 1:
            failures.append(f"unequal maximal chain lengths {sorted(lengths)}")

    for cover in poset.covers:
        b = poset.bonds.get(cover)
        if b is None:
            failures.append(f"missing bond for {cover[0]}>{cover[1]}")
        elif not isinstance(b, int) or b < 1:
            failures.append(f"bond {cover[0]}>{cover[1]} = {b} is not a positive integer")
    for key in poset.bonds:
        if key not in set(poset.covers):
            failures.append(f"bond given for non-cover {key[0]}>{key[1]}")
    for p in elements:
        d = poset.extremal_degrees.get(p)
        if d is None:
            failures.append(f"missing extremal degree for {p}")
        elif not isinstance(d, int) or d < 1:
            failures.append(f"extremal degree of {p} = {d} is not a positive integer")
    return ValidationReport(failures, [GEOMETRIC_AXIOMS_NOTE])


def _has_cycle(poset: StratPoset) -> bool:
    state: dict[str, int] = {}

    def visit(p: str) -> bool:
        state[p] = 1
        for q in poset.lower_covers(p):
            s = state.get(q, 0)
            if s == 1 or (s == 0 and visit(q)):
                return True
        state[p] = 2
        return False

    return any(state.get(p, 0) == 0 and visit(p) for p in poset.elements)


def _all_chains(poset: StratPoset, top: str) -> list[Chain]:
    out: list[Chain] = []

    def walk(path: list[str]) -> None:
        below = poset.lower_covers(path[-1])
        if not below:
            bonds = [poset.bonds.get((a, b), 0) for a, b in zip(path, path[1:])]
            bonds.append(poset.extremal_degrees.get(path[-1], 0))
            out.append(Chain(tuple(path), tuple(bonds)))
            return
        for q in below:
            walk(path + [q])

    walk([top])
    return sorted(out, key=lambda c: c.elements)


def maximal_chains(poset: StratPoset) -> list[Chain]:
    """All maximal chains from p_max down, ordered lexicographically by labels."""
    return _all_chains(poset, poset.p_max)


def _label_key(poset: StratPoset):
    prio = {p: i for i, p in enumerate(poset.label_priority)}
    return lambda p: (prio.get(p, len(prio)), p)


def length_preserving_linearizations(poset: StratPoset) -> Iterator[Linearization]:
    """Every total order refining <= that puts longer elements first.

    The first one yielded is the canonical linearization.
    """
    key = _label_key(poset)
    levels: dict[int, list[str]] = {}
    for p in poset.elements:
        levels.setdefault(poset.length(p), []).append(p)
    blocks = [sorted(levels[k], key=key) for k in sorted(levels, reverse=True)]
    for combo in itertools.product(*(itertools.permutations(b) for b in blocks)):
        yield Linearization(tuple(itertools.chain.from_iterable(combo)))


def canonical_linearization(poset: StratPoset) -> Linearization:
    return next(length_preserving_linearizations(poset))


def bond_lcm(poset: ExtendedPoset | StratPoset) -> int:
    """Least common multiple N of all bonds of the extended Hasse graph."""
    if isinstance(poset, StratPoset):
        poset = ExtendedPoset.from_poset(poset)
    return lcm(*poset.edges().values())


# -- JSON input -----------------------------------------------------------------

def poset_from_json(data: dict) -> StratPoset:
    """Build a poset from the documented dictionary layout.

    ``{"elements": [...], "covers": [[p, q], ...], "bonds": {"p>q": int},
    "extremal_degrees": {p: int}}`` with optional ``"label_priority"``.
    """
    if not isinstance(data, dict):
        raise InputError("top level must be an object")
    for key in ("elements", "covers", "bonds", "extremal_degrees"):
        if key not in data:
            raise InputError(f"missing key '{key}'")
    elements = data["elements"]
    if not isinstance(elements, list) or not all(isinstance(e, str) for e in elements):
        raise InputError("'elements' must be a list of strings")
    covers = []
    for i, c in enumerate(data["covers"]):
        if not (isinstance(c, list) and len(c) == 2 and all(isinstance(x, str) for x in c)):
            raise InputError(f"'covers'[{i}] must be a pair of labels")
        covers.append((c[0], c[1]))
    bonds = {}
    for k, v in data["bonds"].items():
        parts = k.split(">")
        if len(parts) != 2:
            raise InputError(f"bond key '{k}' must look like 'p>q'")
        if not isinstance(v, int) or isinstance(v, bool):
            raise InputError(f"bond '{k}' must be an integer")
        bonds[(parts[0], parts[1])] = v
    degrees = {}
    for k, v in data["extremal_degrees"].items():
        if not isinstance(v, int) or isinstance(v, bool):
            raise InputError(f"extremal degree of '{k}' must be an integer")
        degrees[k] = v
    return StratPoset(tuple(elements), tuple(covers), bonds, degrees,
                      tuple(data.get("label_priority", ())))


def poset_to_json(poset: StratPoset) -> dict:
    return {
        "elements": list(poset.elements),
        "covers": [list(c) for c in poset.covers],
        "bonds": {f"{p}>{q}": b for (p, q), b in poset.bonds.items()},
        "extremal_degrees": dict(poset.extremal_degrees),
        "label_priority": list(poset.label_priority),
    }


def load_json(path: str | Path) -> dict:
    """Read a JSON file, reporting syntax errors with their line number."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def load_poset(path: str | Path) -> StratPoset:
    data = load_json(path)
    try:
        return poset_from_json(data)
    except InputError as exc:
        raise InputError(f"{path}: {_locate(Path(path), str(exc))}{exc}") from exc


def _locate(path: Path, message: str) -> str:
    """Best-effort 'line N: ' prefix for the first quoted token in a message."""
    token = message.split("'")[1] if message.count("'") >= 2 else None
    if token is None:
        return ""
    for n, line in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        if f'"{token}"' in line:
            return f"line {n}: "
    return ""
