"""Exact multivariate polynomials over Q, monomial orders and reduced Groebner bases."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import InputError
from .fan import Ordering

Exps = tuple[int, ...]


@dataclass(frozen=True)
class VariableSet:
    """Ordered variable names with positive integer weights (default 1)."""

    names: tuple[str, ...]
    weights: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "names", tuple(self.names))
        if len(set(self.names)) != len(self.names):
            raise InputError(f"variable names are not unique: {self.names}")
        for n in self.names:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", n):
                raise InputError(f"bad variable name {n!r}")
        w = tuple(self.weights) or (1,) * len(self.names)
        if len(w) != len(self.names) or any(x < 1 for x in w):
            raise InputError("weights must be positive and match the variables")
        object.__setattr__(self, "weights", w)

    def __len__(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise InputError(f"unknown variable {name!r}") from None

    def wdeg(self, e: Exps) -> int:
        return sum(a * w for a, w in zip(e, self.weights))


class MonomialOrder:
    """Monomial order given by a sort key; larger key means larger monomial.

    ``wdeg-invlex``: higher weighted degree wins; on ties the monomial whose exponent
    difference has a negative first nonzero entry is larger.
    """

    KINDS = ("wdeg-invlex", "lex", "degrevlex")

    def __init__(self, kind: str = "wdeg-invlex"):
        if kind not in self.KINDS:
            raise InputError(f"unknown monomial order {kind!r}")
        self.kind = kind

    def key(self, e: Exps, variables: VariableSet):
        if self.kind == "wdeg-invlex":
            return (variables.wdeg(e), tuple(-a for a in e))
        if self.kind == "lex":
            return e
        return (variables.wdeg(e), tuple(-a for a in reversed(e)))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, MonomialOrder) and other.kind == self.kind

    def __hash__(self) -> int:
        return hash(self.kind)

    def __repr__(self) -> str:
        return f"MonomialOrder({self.kind!r})"


WDEG_INVLEX = MonomialOrder("wdeg-invlex")
LEX = MonomialOrder("lex")
DEGREVLEX = MonomialOrder("degrevlex")


@dataclass(frozen=True)
class Monomial:
    variables: VariableSet
    exps: Exps

    @property
    def degree(self) -> int:
        return sum(self.exps)


def compare(m1: Monomial, m2: Monomial, order: MonomialOrder) -> Ordering:
    if m1.variables != m2.variables:
        raise InputError("monomials live over different variable sets")
    k1, k2 = order.key(m1.exps, m1.variables), order.key(m2.exps, m2.variables)
    return Ordering.EQ if k1 == k2 else (Ordering.GT if k1 > k2 else Ordering.LT)


def _divides(a: Exps, b: Exps) -> bool:
    return all(x <= y for x, y in zip(a, b))


class Polynomial:
    """Immutable map monomial -> nonzero rational coefficient."""

    __slots__ = ("variables", "terms", "_hash")

    def __init__(self, variables: VariableSet, terms: Mapping[Exps, object] | None = None):
        self.variables = variables
        clean: dict[Exps, Fraction] = {}
        for e, c in (terms or {}).items():
            c = c if isinstance(c, Fraction) else Fraction(c)
            if c:
                clean[tuple(e)] = c
        self.terms = clean
        self._hash = None

    # construction
    @classmethod
    def zero(cls, variables: VariableSet) -> "Polynomial":
        return cls(variables)

    @classmethod
    def constant(cls, variables: VariableSet, c) -> "Polynomial":
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def var(cls, variables: VariableSet, name: str) -> "Polynomial":
        e = [0] * len(variables)
        e[variables.index(name)] = 1
        return cls(variables, {tuple(e): 1})

    @classmethod
    def monomial(cls, variables: VariableSet, exps: Sequence[int], c=1) -> "Polynomial":
        return cls(variables, {tuple(exps): c})

    # arithmetic
    def _check(self, other: "Polynomial") -> None:
        if other.variables != self.variables:
            raise InputError("polynomials live over different variable sets")

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(self.variables, other)
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return Polynomial(self.variables, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = Fraction(other)
            return Polynomial(self.variables, {e: v * c for e, v in self.terms.items()})
        self._check(other)
        out: dict[Exps, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Polynomial(self.variables, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = Polynomial.constant(self.variables, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.variables, other)
        return isinstance(other, Polynomial) and self.variables == other.variables and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.variables, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # inspection
    def sorted_terms(self, order: MonomialOrder) -> list[tuple[Exps, Fraction]]:
        """Terms from largest to smallest monomial."""
        return sorted(self.terms.items(), key=lambda t: order.key(t[0], self.variables), reverse=True)

    def leading_monomial(self, order: MonomialOrder) -> Exps:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=lambda e: order.key(e, self.variables))

    def leading_coefficient(self, order: MonomialOrder) -> Fraction:
        return self.terms[self.leading_monomial(order)]

    def monic(self, order: MonomialOrder) -> "Polynomial":
        return self * (1 / self.leading_coefficient(order)) if self.terms else self

    @property
    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def weighted_degrees(self) -> set[int]:
        return {self.variables.wdeg(e) for e in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.weighted_degrees()) <= 1

    def substitute(self, images: Sequence["Polynomial"], target: VariableSet) -> "Polynomial":
        """Ring map sending the i-th variable to images[i]."""
        powers: dict[tuple[int, int], Polynomial] = {}

        def power(i: int, k: int) -> Polynomial:
            if (i, k) not in powers:
                powers[(i, k)] = images[i] ** k
            return powers[(i, k)]

        out = Polynomial.zero(target)
        for e, c in self.terms.items():
            term = Polynomial.constant(target, c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            out = out + term
        return out

    def __repr__(self) -> str:
        return f"Polynomial({format_polynomial(self, WDEG_INVLEX)!r})"

    def __str__(self) -> str:
        return format_polynomial(self, WDEG_INVLEX)


# -- text format ------------------------------------------------------------------

def _format_monomial(e: Exps, variables: VariableSet) -> str:
    parts = []
    for name, k in zip(variables.names, e):
        if k == 1:
            parts.append(name)
        elif k > 1:
            parts.append(f"{name}^{k}")
    return " ".join(parts)


def format_polynomial(p: Polynomial, order: MonomialOrder = WDEG_INVLEX) -> str:
    """Terms 'c * v^e w' joined by ' + ', largest monomial first; '0' for zero."""
    if p.is_zero():
        return "0"
    out = []
    for e, c in p.sorted_terms(order):
        mono = _format_monomial(e, p.variables)
        out.append(f"{c} * {mono}" if mono else f"{c}")
    return " + ".join(out)


_TERM = re.compile(r"^\s*(-?\d+(?:/\d+)?)(?:\s*\*\s*(.+?))?\s*$")


def parse_polynomial(text: str, variables: VariableSet) -> Polynomial:
    """Inverse of format_polynomial."""
    text = text.strip()
    if text == "0":
        return Polynomial.zero(variables)
    terms: dict[Exps, Fraction] = {}
    for chunk in text.split(" + "):
        m = _TERM.match(chunk)
        if not m:
            raise InputError(f"cannot parse term {chunk!r}")
        coeff = Fraction(m.group(1))
        e = [0] * len(variables)
        for factor in (m.group(2) or "").split():
            name, _, k = factor.partition("^")
            if k and not k.isdigit():
                raise InputError(f"bad exponent in {factor!r}")
            e[variables.index(name)] += int(k) if k else 1
        key = tuple(e)
        terms[key] = terms.get(key, 0) + coeff
    return Polynomial(variables, terms)


def format_relation(p: Polynomial, order: MonomialOrder = WDEG_INVLEX) -> str:
    """Human-readable 'lead = rest' form, e.g. 'y_a y_b = y_c^2 - y_d y_e'."""
    if p.is_zero():
        return "0 = 0"
    terms = p.sorted_terms(order)
    (e0, c0), rest = terms[0], terms[1:]

    def signed(e, c, first):
        mono = _format_monomial(e, p.variables) or "1"
        mag = abs(c)
        body = mono if mag == 1 else f"{mag} {mono}"
        if first:
            return body if c > 0 else f"-{body}"
        return f"{'+' if c > 0 else '-'} {body}"

    lhs = signed(e0, c0, True)
    if not rest:
        return f"{lhs} = 0"
    rhs = [signed(e, -c, i == 0) for i, (e, c) in enumerate(rest)]
    return f"{lhs} = {' '.join(rhs)}"


# -- division and Groebner bases ------------------------------------------------------

def normal_form(f: Polynomial, G: Sequence[Polynomial], order: MonomialOrder) -> Polynomial:
    """Remainder of multivariate division; divisors are tried in list order."""
    variables = f.variables
    key = lambda e: order.key(e, variables)  # noqa: E731
    leads = [(g.leading_monomial(order), g) for g in G if g]
    p = dict(f.terms)
    rem: dict[Exps, Fraction] = {}
    while p:
        lm = max(p, key=key)
        lc = p[lm]
        for glm, g in leads:
            if _divides(glm, lm):
                factor = lc / g.terms[glm]
                shift = tuple(a - b for a, b in zip(lm, glm))
                for e, c in g.terms.items():
                    t = tuple(a + b for a, b in zip(e, shift))
                    v = p.get(t, 0) - factor * c
                    if v:
                        p[t] = v
                    else:
                        p.pop(t, None)
                break
        else:
            rem[lm] = lc
            del p[lm]
    return Polynomial(variables, rem)


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder) -> Polynomial:
    a, b = f.leading_monomial(order), g.leading_monomial(order)
    m = tuple(max(x, y) for x, y in zip(a, b))
    fa = Polynomial.monomial(f.variables, [x - y for x, y in zip(m, a)], 1 / f.terms[a])
    gb = Polynomial.monomial(f.variables, [x - y for x, y in zip(m, b)], 1 / g.terms[b])
    return fa * f - gb * g


@dataclass(frozen=True)
class GroebnerBasis:
    polys: tuple[Polynomial, ...]
    order: MonomialOrder
    reduced: bool = True

    def __iter__(self):
        return iter(self.polys)

    def __len__(self) -> int:
        return len(self.polys)

    def leading_monomials(self) -> list[Exps]:
        return [g.leading_monomial(self.order) for g in self.polys]

    def contains(self, f: Polynomial) -> bool:
        return normal_form(f, self.polys, self.order).is_zero()


def sort_basis(polys: Iterable[Polynomial], order: MonomialOrder) -> list[Polynomial]:
    """Canonical presentation order: by weighted degree, then by leading monomial."""
    def key(g: Polynomial):
        lm = g.leading_monomial(order)
        return (g.variables.wdeg(lm), order.key(lm, g.variables))

    return sorted(polys, key=key)


def is_reduced(polys: Sequence[Polynomial], order: MonomialOrder) -> bool:
    leads = [g.leading_monomial(order) for g in polys]
    for i, g in enumerate(polys):
        if g.terms[leads[i]] != 1:
            return False
        for j, lm in enumerate(leads):
            if i != j and any(_divides(lm, e) for e in g.terms):
                return False
    return True


def buchberger(gens: Iterable[Polynomial], order: MonomialOrder) -> GroebnerBasis:
    """Reduced Groebner basis; pairs processed by smallest lcm first."""
    gens = [g for g in gens if g]
    if not gens:
        return GroebnerBasis((), order)
    variables = gens[0].variables
    key = lambda e: order.key(e, variables)  # noqa: E731
    G: list[Polynomial] = []
    for g in gens:
        r = normal_form(g, G, order)
        if r:
            G.append(r.monic(order))
    leads = [g.leading_monomial(order) for g in G]
    pairs = {(i, j) for j in range(len(G)) for i in range(j)}

    def lcm_of(pair):
        i, j = pair
        return tuple(max(a, b) for a, b in zip(leads[i], leads[j]))

    while pairs:
        pair = min(pairs, key=lambda p: (key(lcm_of(p)), p))
        pairs.discard(pair)
        i, j = pair
        if all(min(a, b) == 0 for a, b in zip(leads[i], leads[j])):
            continue  # coprime leading monomials
        r = normal_form(s_polynomial(G[i], G[j], order), G, order)
        if r:
            G.append(r.monic(order))
            leads.append(G[-1].leading_monomial(order))
            n = len(G) - 1
            pairs |= {(k, n) for k in range(n)}
    return GroebnerBasis(tuple(sort_basis(_interreduce(G, order), order)), order)


def _interreduce(G: list[Polynomial], order: MonomialOrder) -> list[Polynomial]:
    leads = [g.leading_monomial(order) for g in G]
    keep = []
    for i, lm in enumerate(leads):
        dominated = any(
            j != i and _divides(leads[j], lm) and (leads[j] != lm or j < i) for j in range(len(G))
        )
        if not dominated:
            keep.append(G[i])
    out = []
    for i, g in enumerate(keep):
        others = keep[:i] + keep[i + 1:]
        lm = g.leading_monomial(order)
        tail = Polynomial(g.variables, {e: c for e, c in g.terms.items() if e != lm})
        out.append((Polynomial.monomial(g.variables, lm, g.terms[lm]) + normal_form(tail, others, order)).monic(order))
    return out


def initial_ideal_equal(G1: GroebnerBasis, G2: GroebnerBasis) -> bool:
    """Whether the leading monomials of both bases generate the same monomial ideal."""
    a, b = G1.leading_monomials(), G2.leading_monomials()

    def covered(xs, ys):
        return all(any(_divides(y, x) for y in ys) for x in xs)

    return covered(a, b) and covered(b, a)
