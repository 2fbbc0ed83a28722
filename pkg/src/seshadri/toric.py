"""A toric threefold with a linear LS-type stratification.

R = Q[x1..x6] / (x2^2 - x1 x3, x5^2 - x4 x6), stratified by the coordinate
subspaces cut out by x1, x3, x4, x6 in turn. The single chain carries bonds
2, 1, 2 and the generators y1..y6 of S map to x1..x6.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import floor
from typing import Sequence

from .errors import DomainError
from .fan import FanElement, FanOfMonoids, lex_key, ls_member
from .fan_algebra import presentation_ideal
from .poset import Chain, StratPoset, maximal_chains
from .polyring import WDEG_INVLEX, Polynomial, VariableSet, buchberger, normal_form
from .valuation import BasisExpansionBackend, QuasiValuationBackend

LABELS = ("p3", "p2", "p1", "p0")
X = VariableSet(tuple(f"x{i}" for i in range(1, 7)))


def toric_poset() -> StratPoset:
    bonds = {("p3", "p2"): 2, ("p2", "p1"): 1, ("p1", "p0"): 2}
    return StratPoset(LABELS, tuple(bonds), bonds, {p: 1 for p in LABELS}, LABELS)


def toric_example_valuation(exponents: Sequence[int]) -> FanElement:
    """(a1, a3, a4, a6) + 1/2 (a2, a2, a5, a5) on the labels p3, p2, p1, p0."""
    if len(exponents) != 6 or any(a < 0 for a in exponents):
        raise DomainError("expected six nonnegative exponents")
    a1, a2, a3, a4, a5, a6 = (Fraction(a) for a in exponents)
    half = Fraction(1, 2)
    return FanElement.from_vector(LABELS, (a1 + half * a2, a3 + half * a2, a4 + half * a5, a6 + half * a5))


def toric_chain() -> Chain:
    return maximal_chains(toric_poset())[0]


def ls_witness_exponent(u: FanElement, chain: Chain | None = None) -> tuple[int, ...]:
    """Exponents of a monomial with valuation u, for u in the LS-monoid of the chain."""
    if not ls_member(u, chain or toric_chain()):
        raise DomainError(f"{u} is not in the LS-monoid")
    u3, u2, u1, u0 = u.vector(LABELS)
    f3, f1 = u3 - floor(u3), u1 - floor(u1)
    out = (floor(u3), 2 * f3, u2 - f3, floor(u1), 2 * f1, u0 - f1)
    if any(Fraction(x).denominator != 1 or x < 0 for x in out):
        raise DomainError(f"{u} is not in the LS-monoid")
    return tuple(int(x) for x in out)


def _namer(i: int, u: FanElement) -> str:
    for k in range(6):
        e = [0] * 6
        e[k] = 1
        if toric_example_valuation(e) == u:
            return f"y{k + 1}"
    raise DomainError(f"{u} is not the valuation of a coordinate")


@lru_cache(maxsize=1)
def toric_fan() -> FanOfMonoids:
    return FanOfMonoids.build(toric_poset(), namer=_namer)


@lru_cache(maxsize=1)
def toric_ideal() -> tuple[Polynomial, ...]:
    """Reduced Groebner basis of the defining ideal of R; leading terms x2^2 and x5^2."""
    x = [Polynomial.var(X, n) for n in X.names]
    return buchberger([x[1] ** 2 - x[0] * x[2], x[4] ** 2 - x[3] * x[5]], WDEG_INVLEX).polys


def x_normal_form(g: Polynomial, fan: FanOfMonoids | None = None) -> Polynomial:
    """Image of a polynomial in y1..y6 in R, as a normal form in x1..x6."""
    fan = fan or toric_fan()
    images = [Polynomial.var(X, "x" + n[1:]) for n in fan.names]
    return normal_form(g.substitute(images, X), toric_ideal(), WDEG_INVLEX)


class ToricBackend(QuasiValuationBackend):
    """Exact valuation of R: normal-form monomials have pairwise distinct values."""

    def __init__(self, fan: FanOfMonoids | None = None):
        super().__init__(fan or toric_fan())

    def _valued_terms(self, g) -> dict[FanElement, Fraction]:
        g = g.poly if hasattr(g, "poly") else g
        return {toric_example_valuation(e): c for e, c in x_normal_form(g, self.fan).terms.items()}

    def chain_valuation(self, g, chain) -> FanElement:
        terms = self._valued_terms(g)
        if not terms:
            raise DomainError("the valuation of zero is undefined")
        return min(terms, key=lex_key(self.fan.linearization))

    def is_zero(self, g) -> bool:
        return x_normal_form(g.poly if hasattr(g, "poly") else g, self.fan).is_zero()

    def leading_ratio(self, f, m, value) -> Fraction:
        return self._valued_terms(f)[value] / self._valued_terms(m)[value]


def toric_expansion_backend() -> BasisExpansionBackend:
    fan = toric_fan()
    return BasisExpansionBackend(fan, lambda g: x_normal_form(g, fan).terms)


def toric_presentation(bound: int = 2):
    return presentation_ideal(toric_fan(), bound)
