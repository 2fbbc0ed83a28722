"""Gorenstein criterion for linear LS-type stratifications and weighted projective space combinatorics."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from .errors import DomainError, InputError
from .fan import FanElement, ls_member
from .poset import Chain


@dataclass(frozen=True)
class LinearBondData:
    """Bonds b_1..b_r of p_r > ... > p_0, with b_k the bond between p_k and p_{k-1}."""

    bonds: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "bonds", tuple(self.bonds))
        if not self.bonds or any(not isinstance(b, int) or b < 1 for b in self.bonds):
            raise InputError("bonds must be a nonempty list of positive integers")

    @property
    def r(self) -> int:
        return len(self.bonds)

    def b(self, k: int) -> int:
        """b_k with b_0 = b_{r+1} = 1."""
        return self.bonds[k - 1] if 1 <= k <= self.r else 1

    @property
    def M(self) -> tuple[int, ...]:
        """M_0..M_r with M_k = lcm(b_k, b_{k+1})."""
        return tuple(lcm(self.b(k), self.b(k + 1)) for k in range(self.r + 1))

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(f"p{k}" for k in range(self.r, -1, -1))

    def chain(self) -> Chain:
        return Chain(self.labels, tuple(self.b(k) for k in range(self.r, 0, -1)) + (1,))


def gorenstein_sums(data: LinearBondData) -> list[Fraction]:
    """b_k * sum_{j >= k} 1/M_j for k = 0..r."""
    M = data.M
    return [data.b(k) * sum((Fraction(1, M[j]) for j in range(k, data.r + 1)), Fraction(0)) for k in range(data.r + 1)]


def gorenstein_check(data: LinearBondData) -> bool:
    return all(s.denominator == 1 and s >= 0 for s in gorenstein_sums(data))


def iota_embedding(u: FanElement | Sequence, data: LinearBondData) -> tuple[int, ...]:
    """Exponents of x_0..x_r of the monomial x_k^{M_k u_k}; u is given as (u_r, ..., u_0) or a FanElement."""
    if not isinstance(u, FanElement):
        if len(u) != data.r + 1:
            raise InputError(f"expected {data.r + 1} coordinates")
        u = FanElement.from_vector(data.labels, u)
    if not ls_member(u, data.chain()):
        raise DomainError(f"{u} is not in the LS-monoid")
    out = []
    for k, m in enumerate(data.M):
        e = m * u[f"p{k}"]
        assert e.denominator == 1
        out.append(int(e))
    return tuple(out)


@dataclass(frozen=True)
class WPSWeights:
    a: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", tuple(sorted(self.a)))
        if len(self.a) < 2 or any(x < 1 for x in self.a):
            raise InputError("weights must be positive integers")

    @property
    def normalized(self) -> bool:
        n = len(self.a)
        return all(gcd(*(self.a[j] for j in range(n) if j != i)) == 1 for i in range(n))

    @property
    def gorenstein(self) -> bool:
        s = sum(self.a)
        return all(s % x == 0 for x in self.a)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.a)) + ")"


def _unit_fraction_partitions(n: int, total: Fraction, smallest: int):
    """Non-decreasing k_1 <= ... <= k_n >= smallest with sum 1/k_i = total."""
    if n == 1:
        if total.numerator == 1 and total.denominator >= smallest:
            yield (total.denominator,)
        return
    lo = max(smallest, int(1 / total) + (0 if (1 / total).denominator == 1 else 1))
    k = lo
    while Fraction(n, k) >= total:
        rest = total - Fraction(1, k)
        if rest > 0:
            for tail in _unit_fraction_partitions(n - 1, rest, k):
                yield (k,) + tail
        k += 1


def gorenstein_fano_wps(dim: int = 3) -> list[WPSWeights]:
    """Normalized weights (a_0 <= ... <= a_dim) with each a_i dividing their sum."""
    if dim != 3:
        raise InputError("only dimension 3 is implemented")
    found = set()
    for ks in _unit_fraction_partitions(dim + 1, Fraction(1), 1):
        L = lcm(*ks)
        a = [L // k for k in ks]
        g = gcd(*a)
        w = WPSWeights(tuple(x // g for x in a))
        if w.normalized:
            found.add(w.a)
    return [WPSWeights(a) for a in sorted(found)]


@dataclass(frozen=True)
class SingularStratum:
    prime: int
    indices: tuple[int, ...]

    @property
    def dimension(self) -> int:
        return len(self.indices) - 1


@dataclass(frozen=True)
class SingularLocus:
    weights: WPSWeights
    strata: tuple[SingularStratum, ...]
    components: tuple[SingularStratum, ...]

    @property
    def disjoint(self) -> bool:
        return all(not set(a.indices) & set(b.indices) for a, b in itertools.combinations(self.components, 2))

    @property
    def dimensions(self) -> tuple[int, ...]:
        return tuple(c.dimension for c in self.components)

    @property
    def two_disjoint_lines(self) -> bool:
        return self.dimensions == (1, 1) and self.disjoint

    def to_json(self) -> dict:
        return {
            "weights": list(self.weights.a),
            "strata": [{"prime": s.prime, "indices": list(s.indices), "dimension": s.dimension} for s in self.strata],
            "components": [list(c.indices) for c in self.components],
            "disjoint": self.disjoint,
        }


def _primes_dividing(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def wps_singular_locus(w: WPSWeights) -> SingularLocus:
    """Coordinate strata {x_i = 0 for p not dividing a_i}, one per prime p; components are the maximal ones."""
    if not w.normalized:
        raise DomainError(f"weights {w} are not normalized")
    primes = sorted(set().union(*(_primes_dividing(x) for x in w.a)))
    strata = tuple(SingularStratum(p, tuple(i for i, x in enumerate(w.a) if x % p == 0)) for p in primes)
    components = []
    for s in strata:
        if any(set(s.indices) < set(t.indices) for t in strata):
            continue
        if any(set(s.indices) == set(c.indices) for c in components):
            continue
        components.append(s)
    return SingularLocus(w, strata, tuple(components))
