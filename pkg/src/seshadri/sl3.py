"""The complete flag variety SL3/B stratified by Schubert varieties, computed exactly.

V(rho) is realized as the adjoint representation of sl3 on traceless 3x3
matrices. Functions on Schubert varieties are evaluated on charts built from
exponentials of nilpotent root vectors, so every chart value is an exact
polynomial in the chart parameters.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Mapping, Sequence

from .errors import DomainError
from .fan import FanElement, FanOfMonoids, lex_key
from .fan_algebra import presentation_ideal
from .poset import Chain, Linearization, StratPoset, bond_lcm, canonical_linearization, maximal_chains
from .polyring import WDEG_INVLEX, GroebnerBasis, Polynomial, VariableSet
from .valuation import BasisExpansionBackend, LiftReport, QuasiValuationBackend, lift_groebner_basis, subduct

# ChartPolynomial: a Polynomial over the chart parameters (lex order in parameter order).
ChartPolynomial = Polynomial

Vector = tuple[Fraction, ...]


# -- root data ---------------------------------------------------------------------

def _perm_mul(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(a[b[i]] for i in range(len(b)))


_SIMPLE_PERMS = {1: (1, 0, 2), 2: (0, 2, 1)}


def weyl_perm(word: Sequence[int]) -> tuple[int, ...]:
    p = (0, 1, 2)
    for i in word:
        p = _perm_mul(p, _SIMPLE_PERMS[i])
    return p


def weyl_length(perm: tuple[int, ...]) -> int:
    return sum(1 for i, j in itertools.combinations(range(3), 2) if perm[i] > perm[j])


@dataclass(frozen=True)
class A2RootData:
    """Roots in fundamental-weight coordinates and the Weyl group S3 by reduced words."""

    simple_roots: tuple[tuple[int, int], ...] = ((2, -1), (-1, 2))
    rho: tuple[int, int] = (1, 1)
    reduced_words: Mapping[str, tuple[tuple[int, ...], ...]] = field(default_factory=lambda: {
        "id": ((),),
        "s1": ((1,),),
        "s2": ((2,),),
        "s1s2": ((1, 2),),
        "s2s1": ((2, 1),),
        "w0": ((1, 2, 1), (2, 1, 2)),
    })

    @property
    def positive_roots(self) -> dict[str, tuple[int, int]]:
        a1, a2 = self.simple_roots
        return {"a1": a1, "a2": a2, "b": (a1[0] + a2[0], a1[1] + a2[1])}

    @property
    def weyl_group(self) -> dict[str, tuple[int, ...]]:
        return {name: weyl_perm(words[0]) for name, words in self.reduced_words.items()}

    def name_of(self, word: Sequence[int]) -> str:
        p = weyl_perm(word)
        for name, q in self.weyl_group.items():
            if q == p:
                return name
        raise DomainError(f"unknown Weyl element for word {tuple(word)}")

    def coroot_pairing(self, weight: tuple[int, int], i: int) -> int:
        return weight[i - 1]

    def reflect(self, weight: tuple[int, int], i: int) -> tuple[int, int]:
        k = self.coroot_pairing(weight, i)
        a = self.simple_roots[i - 1]
        return (weight[0] - k * a[0], weight[1] - k * a[1])

    def act(self, name: str, weight: tuple[int, int]) -> tuple[int, int]:
        for i in reversed(self.reduced_words[name][0]):
            weight = self.reflect(weight, i)
        return weight


# -- the adjoint representation --------------------------------------------------------

Matrix3 = tuple[tuple[Fraction, ...], ...]


def _e(i: int, j: int, c=1) -> Matrix3:
    return tuple(tuple(Fraction(c if (r, s) == (i, j) else 0) for s in range(3)) for r in range(3))


def _mm(a: Matrix3, b: Matrix3) -> Matrix3:
    return tuple(tuple(sum((a[r][k] * b[k][s] for k in range(3)), Fraction(0)) for s in range(3)) for r in range(3))


def _sub(a: Matrix3, b: Matrix3) -> Matrix3:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def _add(a: Matrix3, b: Matrix3) -> Matrix3:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def _scale(a: Matrix3, c) -> Matrix3:
    return tuple(tuple(x * c for x in r) for r in a)


def bracket(a: Matrix3, b: Matrix3) -> Matrix3:
    return _sub(_mm(a, b), _mm(b, a))


class AdjointRep:
    """sl3 acting on itself; basis ordered by weight from highest to lowest."""

    BASIS = ("E13", "E12", "E23", "H1", "H2", "E21", "E32", "E31")

    def __init__(self, roots: A2RootData | None = None):
        self.roots = roots or A2RootData()
        e = {f"E{i + 1}{j + 1}": _e(i, j) for i in range(3) for j in range(3) if i != j}
        self.basis_matrices: dict[str, Matrix3] = {k: e[k] for k in self.BASIS if k in e}
        self.basis_matrices["H1"] = _sub(_e(0, 0), _e(1, 1))
        self.basis_matrices["H2"] = _sub(_e(1, 1), _e(2, 2))
        x = {"a1": e["E12"], "a2": e["E23"], "-a1": e["E21"], "-a2": e["E32"]}
        x["b"] = bracket(x["a2"], x["a1"])
        x["-b"] = _scale(e["E31"], -1)
        self.root_vectors = x
        self.cartan = {"a1": self.basis_matrices["H1"], "a2": self.basis_matrices["H2"],
                       "b": _add(self.basis_matrices["H1"], self.basis_matrices["H2"])}
        self.ad = {k: self.ad_matrix(m) for k, m in x.items()}
        self.ad.update({f"h_{k}": self.ad_matrix(m) for k, m in self.cartan.items()})

    @property
    def dim(self) -> int:
        return len(self.BASIS)

    def coords(self, m: Matrix3) -> Vector:
        """Coordinates of a traceless matrix in BASIS."""
        if m[0][0] + m[1][1] + m[2][2] != 0:
            raise DomainError("matrix is not traceless")
        out = []
        for name in self.BASIS:
            if name == "H1":
                out.append(m[0][0])
            elif name == "H2":
                out.append(-m[2][2])
            else:
                out.append(m[int(name[1]) - 1][int(name[2]) - 1])
        return tuple(out)

    def matrix(self, v: Sequence[Fraction]) -> Matrix3:
        out = _e(0, 0, 0)
        for c, name in zip(v, self.BASIS):
            out = _add(out, _scale(self.basis_matrices[name], c))
        return out

    def ad_matrix(self, x: Matrix3) -> tuple[Vector, ...]:
        cols = [self.coords(bracket(x, self.basis_matrices[name])) for name in self.BASIS]
        return tuple(tuple(cols[j][i] for j in range(self.dim)) for i in range(self.dim))

    def apply(self, op: str, v: Sequence) -> list:
        """ad(X_op) applied to a vector whose entries may be numbers or polynomials."""
        mat = self.ad[op]
        out = []
        for row in mat:
            acc = 0
            for c, x in zip(row, v):
                if c:
                    acc = acc + x * c
            out.append(acc)
        return out

    def weight(self, name: str) -> tuple[int, int]:
        m = self.basis_matrices[name]
        if name.startswith("H"):
            return (0, 0)
        out = []
        for h in ("a1", "a2"):
            br = bracket(self.cartan[h], m)
            k = next(br[r][s] / m[r][s] for r in range(3) for s in range(3) if m[r][s])
            out.append(int(k))
        return tuple(out)

    @property
    def highest_weight_vector(self) -> Vector:
        return self.coords(_e(0, 2))

    def extremal_vector(self, tau: str, word: Sequence[int] | None = None) -> Vector:
        """Divided powers of the lowering operators along a reduced word, maximal at each step."""
        word = self.roots.reduced_words[tau][0] if word is None else tuple(word)
        v: list = list(self.highest_weight_vector)
        for i in reversed(word):
            op = f"-a{i}"
            k = 0
            while True:
                w = self.apply(op, v)
                if not any(w):
                    break
                k += 1
                v = [x / k for x in w]  # divided power X^(k) = X^k / k!
        return tuple(Fraction(x) for x in v)


def dual_functional(v: Vector) -> Vector:
    """Functional taking value 1 on a weight vector spanning a one-dimensional weight space."""
    nz = [i for i, x in enumerate(v) if x]
    if len(nz) != 1:
        raise DomainError("extremal vector must lie in a single basis weight space")
    i = nz[0]
    return tuple(Fraction(1) / v[i] if j == i else Fraction(0) for j in range(len(v)))


def is_zero_weight(functional: Vector, rep: AdjointRep) -> bool:
    return all(not c or rep.weight(name) == (0, 0) for c, name in zip(functional, rep.BASIS))


# -- charts -------------------------------------------------------------------

@dataclass(frozen=True)
class ChartSpec:
    """exp(t_1 X_1) ... exp(t_k X_k) applied to the extremal vector of ``base``."""

    label: str
    factors: tuple[tuple[str, str], ...]
    base: str

    @property
    def params(self) -> VariableSet:
        return VariableSet(tuple(p for _, p in self.factors))


def chart_vector(spec: ChartSpec, rep: AdjointRep) -> list[Polynomial]:
    """The orbit vector as eight polynomials in the chart parameters."""
    params = spec.params
    v = [Polynomial.constant(params, x) for x in rep.extremal_vector(spec.base)]
    for op, name in reversed(spec.factors):
        t = Polynomial.var(params, name)
        total = list(v)
        term = list(v)
        k = 0
        while True:
            term = rep.apply(op, term)
            if not any(term):
                break
            k += 1
            coeff = t ** k * Fraction(1, factorial(k))
            total = [a + b * coeff for a, b in zip(total, term)]
        v = total
    return v


def evaluate_functional(functional: Sequence[Fraction], vec: Sequence[Polynomial]) -> Polynomial:
    out = Polynomial.zero(vec[0].variables)
    for c, p in zip(functional, vec):
        if c:
            out = out + p * c
    return out


def chart_evaluate(
    factors: Sequence[tuple[Sequence[Fraction], int]], spec: ChartSpec, rep: AdjointRep
) -> ChartPolynomial:
    """Product of degree-one functionals (with exponents) evaluated on a chart."""
    vec = chart_vector(spec, rep)
    out = Polynomial.constant(spec.params, 1)
    for functional, k in factors:
        out = out * evaluate_functional(functional, vec) ** k
    return out


def vanishing_order(p: ChartPolynomial, param: str) -> int:
    """Lowest exponent of a parameter among the terms of p."""
    if p.is_zero():
        raise DomainError("the zero polynomial has no vanishing order")
    i = p.variables.index(param)
    return min(e[i] for e in p.terms)


def restrict(p: Polynomial, zero_params: Sequence[int]) -> Polynomial:
    """Set the given parameter positions to 0."""
    return Polynomial(p.variables, {e: c for e, c in p.terms.items() if all(e[i] == 0 for i in zero_params)})


def lexmin_term(p: Polynomial, priority: Sequence[int]) -> tuple[tuple[int, ...], Fraction]:
    e = min(p.terms, key=lambda e: tuple(e[i] for i in priority))
    return e, p.terms[e]


@dataclass(frozen=True)
class NestedChart:
    """Chart of the top stratum whose coordinate hyperplanes cut out a chain.

    ``word`` is a reduced word of the top element; removing the letters at
    ``removal`` one after another walks down the chain, and setting the
    matching parameter to zero restricts to the next stratum.
    """

    chain: Chain
    word: tuple[int, ...]
    removal: tuple[int, ...]

    @property
    def spec(self) -> ChartSpec:
        return ChartSpec(self.chain.elements[0], tuple((f"-a{i}", f"z{k + 1}") for k, i in enumerate(self.word)), "id")


def nested_chart(chain: Chain, roots: A2RootData) -> NestedChart:
    """Find a reduced word and removal order realizing the chain."""
    for word in roots.reduced_words[chain.elements[0]]:
        for removal in itertools.permutations(range(len(word))):
            ok = True
            for step in range(len(removal)):
                left = [word[i] for i in range(len(word)) if i not in removal[: step + 1]]
                perm = weyl_perm(left)
                if weyl_length(perm) != len(left) or roots.name_of(left) != chain.elements[step + 1]:
                    ok = False
                    break
            if ok:
                return NestedChart(chain, tuple(word), tuple(removal))
    raise DomainError(f"no nested chart for chain {chain.id}")


def big_cell_chart() -> ChartSpec:
    """exp(t1 X_b) exp(t2 X_a2) exp(y X_-a1) applied to v_{s2s1}."""
    return ChartSpec("w0", (("b", "t1"), ("a2", "t2"), ("-a1", "y")), "s2s1")


def s2s1_cell_chart() -> ChartSpec:
    """exp(t1 X_a1) exp(y X_-a2) applied to v_{s1}."""
    return ChartSpec("s2s1", (("a1", "t1"), ("-a2", "y")), "s1")


# -- the chart backend ------------------------------------------------------------

class ChartBackend(QuasiValuationBackend):
    """Chain valuations read off nested charts.

    Along a chain only the lex-minimal exponent of a chart polynomial matters:
    the order along the first divisor is its first entry, restricting the
    renormalized ratio keeps the lowest coefficient, and so on down the chain.
    """

    def __init__(self, fan: FanOfMonoids, rep: AdjointRep, functionals: Mapping[str, Vector],
                 extremal: Mapping[str, Vector], charts: Mapping[str, NestedChart]):
        super().__init__(fan)
        self.rep = rep
        self.functionals = dict(functionals)
        self.extremal = dict(extremal)
        self.charts = dict(charts)
        self.N = bond_lcm(fan.poset)
        self._vectors = {cid: chart_vector(ch.spec, rep) for cid, ch in self.charts.items()}
        self._images: dict[str, list[Polynomial]] = {}
        self._steps: dict[str, list] = {}
        self._primary = self.chains[0].id

    def images(self, chain_id: str) -> list[Polynomial]:
        if chain_id not in self._images:
            vec = self._vectors[chain_id]
            self._images[chain_id] = [evaluate_functional(self.functionals[n], vec) for n in self.fan.names]
        return self._images[chain_id]

    def chart_polynomial(self, g, chain_id: str) -> ChartPolynomial:
        g = g.poly if hasattr(g, "poly") else g
        return g.substitute(self.images(chain_id), self.charts[chain_id].spec.params)

    def functional_on_chart(self, functional: Sequence[Fraction], chain_id: str) -> ChartPolynomial:
        return evaluate_functional(functional, self._vectors[chain_id])

    def _chain_steps(self, chain: Chain):
        """Per step: parameter index, bond, lex-min exponent and degree of f_p on its stratum."""
        if chain.id not in self._steps:
            ch = self.charts[chain.id]
            vec = self._vectors[chain.id]
            steps = []
            for i, p in enumerate(chain.elements[:-1]):
                f = restrict(evaluate_functional(self.extremal[p], vec), ch.removal[:i])
                if f.is_zero():
                    raise DomainError(f"extremal function of {p} vanishes on its own stratum")
                e, _ = lexmin_term(f, ch.removal)
                var = ch.removal[i]
                if e[var] != chain.bonds[i]:
                    raise DomainError(
                        f"chart order of f_{p} along the next stratum is {e[var]}, bond says {chain.bonds[i]}"
                    )
                steps.append((var, chain.bonds[i], e, self.fan.poset.extremal_degrees[p]))
            self._steps[chain.id] = steps
        return self._steps[chain.id]

    def value_from_chart(self, p: ChartPolynomial, deg: int, chain: Chain) -> FanElement:
        """Chain valuation of a homogeneous function of degree deg with chart polynomial p."""
        if p.is_zero():
            raise DomainError(f"function vanishes identically on the chart of {chain.id}")
        ch = self.charts[chain.id]
        N = self.N
        c, _ = lexmin_term(p, ch.removal)
        c = list(c)
        d = Fraction(deg)
        coords: dict[str, Fraction] = {}
        for i, (var, b, ef, df) in enumerate(self._chain_steps(chain)):
            a = c[var]
            coords[chain.elements[i]] = Fraction(a, b * N ** i)
            k = Fraction(N * a, b)
            c = [N * x - k * y for x, y in zip(c, ef)]
            d = N * d - k * df
            assert c[var] == 0
        if any(c):
            raise DomainError("chart exponent did not reduce to zero along the chain")
        r = chain.length
        coords[chain.elements[r]] = d / (chain.bonds[r] * N ** r)
        return FanElement.of(coords)

    def chain_valuation(self, g, chain: Chain) -> FanElement:
        g = g.poly if hasattr(g, "poly") else g
        degs = g.weighted_degrees()
        if len(degs) != 1:
            raise DomainError("chain valuations need a nonzero homogeneous element")
        return self.value_from_chart(self.chart_polynomial(g, chain.id), degs.pop(), chain)

    def is_zero(self, g) -> bool:
        g = g.poly if hasattr(g, "poly") else g
        by_degree: dict[int, dict] = {}
        for e, c in g.terms.items():
            by_degree.setdefault(g.variables.wdeg(e), {})[e] = c
        return all(self.chart_polynomial(Polynomial(g.variables, t), self._primary).is_zero()
                   for t in by_degree.values())

    def leading_ratio(self, f, m, value) -> Fraction:
        ratios = set()
        for chain in self.chains:
            if self.chain_valuation(f, chain) != value or self.chain_valuation(m, chain) != value:
                continue
            removal = self.charts[chain.id].removal
            ef, cf = lexmin_term(self.chart_polynomial(f, chain.id), removal)
            em, cm = lexmin_term(self.chart_polynomial(m, chain.id), removal)
            assert ef == em
            ratios.add(cf / cm)
        if len(ratios) != 1:
            raise DomainError(f"leading coefficient at {value} is undetermined: {sorted(ratios)}")
        return ratios.pop()


# -- the instance ----------------------------------------------------------------

SL3_ELEMENTS = ("w0", "s1s2", "s2s1", "s1", "s2", "id")
SL3_BONDS = {
    ("w0", "s2s1"): 1, ("w0", "s1s2"): 1,
    ("s2s1", "s1"): 2, ("s2s1", "s2"): 1,
    ("s1s2", "s2"): 2, ("s1s2", "s1"): 1,
    ("s1", "id"): 1, ("s2", "id"): 1,
}
PI1 = FanElement.of({"s2s1": Fraction(1, 2), "s1": Fraction(1, 2)})
PI2 = FanElement.of({"s1s2": Fraction(1, 2), "s2": Fraction(1, 2)})
MIRRORED = Linearization(("w0", "s2s1", "s1s2", "s2", "s1", "id"))


def sl3_poset() -> StratPoset:
    """Bruhat order on S3 with the bonds of the Schubert stratification."""
    return StratPoset(SL3_ELEMENTS, tuple(SL3_BONDS), SL3_BONDS, {p: 1 for p in SL3_ELEMENTS}, SL3_ELEMENTS)


def _sl3_namer(i: int, u: FanElement) -> str:
    if u == PI1:
        return "y_pi1"
    if u == PI2:
        return "y_pi2"
    (p, _), = u.items
    return f"y_{p}"


@dataclass
class PencilSearch:
    """Zero-weight pencil members with their quasi-valuations."""

    candidates: list[tuple[Vector, FanElement, FanElement]]  # functional, V canonical, V mirrored
    generic: tuple[Vector, FanElement, FanElement]


@dataclass
class SL3Example:
    roots: A2RootData
    rep: AdjointRep
    poset: StratPoset
    linearization: Linearization
    fan: FanOfMonoids
    functionals: dict[str, Vector]
    charts: dict[str, NestedChart]
    backend: ChartBackend
    pencil: PencilSearch
    raw_scales: tuple[Fraction, Fraction]

    @property
    def ring(self) -> VariableSet:
        return self.backend.ring

    def y(self, name: str) -> Polynomial:
        return Polynomial.var(self.ring, f"y_{name}")

    def expansion_backend(self, spec: ChartSpec | None = None) -> BasisExpansionBackend:
        """Basis expansion through evaluation on a single dominant chart."""
        spec = spec or big_cell_chart()
        vec = chart_vector(spec, self.rep)
        images = [evaluate_functional(self.functionals[n], vec) for n in self.fan.names]
        params = spec.params

        def evaluate(g: Polynomial):
            return g.substitute(images, params).terms

        return BasisExpansionBackend(self.fan, evaluate)

    def semitoric_basis(self) -> GroebnerBasis:
        return presentation_ideal(self.fan, 2).groebner()

    def lift(self) -> LiftReport:
        return lift_groebner_basis(self.semitoric_basis(), self.backend)


def _pencil_values(backend: ChartBackend, functional: Vector) -> tuple[FanElement, FanElement]:
    values = []
    for chain in backend.chains:
        p = backend.functional_on_chart(functional, chain.id)
        values.append(backend.value_from_chart(p, 1, chain))
    return min(values, key=lex_key(backend.fan.linearization)), min(values, key=lex_key(MIRRORED))


def _normalize(v: Vector) -> Vector:
    lead = next(x for x in v if x)
    return tuple(x / lead for x in v)


def find_path_vectors(backend: ChartBackend) -> tuple[Vector, Vector, PencilSearch]:
    """Members of the zero-weight pencil of V(rho)* with values pi1 and pi2.

    The generic member takes one value; a member where the leading chart
    coefficient on some chain cancels can only take a different value. pi2 is
    the unique such member with value pi2 under the canonical linearization;
    pi1 is the unique member with value pi1 under the mirrored one.
    """
    rep = backend.rep
    zero = [i for i, name in enumerate(rep.BASIS) if rep.weight(name) == (0, 0)]
    if len(zero) != 2:
        raise DomainError("zero-weight space should be two-dimensional")
    basis = [tuple(Fraction(int(j == i)) for j in range(rep.dim)) for i in zero]
    points = set()
    for chain in backend.chains:
        removal = backend.charts[chain.id].removal
        p1, p2 = (backend.functional_on_chart(b, chain.id) for b in basis)
        e = min((lexmin_term(p, removal)[0] for p in (p1, p2) if p), key=lambda e: tuple(e[i] for i in removal))
        c1, c2 = p1.terms.get(e, Fraction(0)), p2.terms.get(e, Fraction(0))
        points.add(_normalize((c2, -c1)))
    members = []
    for lam, mu in sorted(points):
        f = tuple(lam * x + mu * y for x, y in zip(*basis))
        members.append((f, *_pencil_values(backend, f)))
    generic_point = next((Fraction(1), Fraction(k)) for k in itertools.count(1)
                         if _normalize((Fraction(1), Fraction(k))) not in points)
    gf = tuple(generic_point[0] * x + generic_point[1] * y for x, y in zip(*basis))
    search = PencilSearch(members, (gf, *_pencil_values(backend, gf)))

    def pick(target: FanElement, slot: int) -> Vector:
        hits = [m[0] for m in members if m[slot] == target]
        if len(hits) != 1 or search.generic[slot] == target:
            raise DomainError(f"pencil search for {target} found {len(hits)} exceptional members")
        return hits[0]

    pi2 = pick(PI2, 1)
    pi1 = pick(PI1, 2)
    if _pencil_values(backend, pi1)[0] != PI1:
        raise DomainError("pi1 member has the wrong value under the canonical linearization")
    return pi1, pi2, search


@lru_cache(maxsize=1)
def build_sl3_stratification() -> SL3Example:
    roots = A2RootData()
    rep = AdjointRep(roots)
    poset = sl3_poset()
    lin = canonical_linearization(poset)
    fan = FanOfMonoids.build(poset, lin, namer=_sl3_namer)
    extremal = {tau: dual_functional(rep.extremal_vector(tau)) for tau in SL3_ELEMENTS}
    charts = {c.id: nested_chart(c, roots) for c in maximal_chains(poset)}
    functionals = {f"y_{tau}": extremal[tau] for tau in SL3_ELEMENTS}
    zero = tuple(Fraction(0) for _ in range(rep.dim))
    probe = ChartBackend(fan, rep, {**functionals, "y_pi1": zero, "y_pi2": zero}, extremal, charts)
    pi1, pi2, search = find_path_vectors(probe)
    functionals.update({"y_pi1": pi1, "y_pi2": pi2})
    backend = ChartBackend(fan, rep, functionals, extremal, charts)
    # scale so that p_s1 p_s2 = p_id p_pi1 + p_id p_pi2
    ring = backend.ring
    res = subduct(Polynomial.var(ring, "y_s1") * Polynomial.var(ring, "y_s2"), backend)
    coeff = {m.label(fan): c for c, m in res.terms}
    s1, s2 = coeff.get("y_pi1 y_id"), coeff.get("y_pi2 y_id")
    if s1 is None or s2 is None or len(coeff) != 2:
        raise DomainError(f"unexpected subduction of p_s1 p_s2: {coeff}")
    functionals["y_pi1"] = tuple(x * s1 for x in pi1)
    functionals["y_pi2"] = tuple(x * s2 for x in pi2)
    backend = ChartBackend(fan, rep, functionals, extremal, charts)
    return SL3Example(roots, rep, poset, lin, fan, functionals, charts, backend, search, (s1, s2))


# Relations as printed in the reference computation, written as lhs - rhs with
# generator names; used to compare the lifted basis up to rescaling of pi1, pi2.
REFERENCE_SEMITORIC = [
    ("s2s1*s1s2", ""), ("s2*s1", ""), ("pi1*s1s2", ""), ("pi1*s2", ""), ("pi2*s2s1", ""),
    ("pi2*s1", ""), ("pi1^2", "s2s1*s1"), ("pi2^2", "s1s2*s2"), ("pi2*pi1", ""),
]
REFERENCE_LIFTED = [
    ("s1*s2", "id*pi1 + id*pi2"),
    ("s1*pi2", "s1s2*id"),
    ("pi1^2", "s2s1*s1 - id*w0"),
    ("pi1*s2", "s2s1*id"),
    ("pi1*pi2", "w0*id"),
    ("pi1*s1s2", "w0*s1"),
    ("s2s1*pi2", "w0*s2"),
    ("s2s1*s1s2", "w0*pi1 + w0*pi2"),
    ("pi2^2", "s1s2*s2 - id*w0"),
]


def reference_polynomial(lhs: str, rhs: str, ring: VariableSet) -> Polynomial:
    """Parse 'a*b^2' style products with '+'/'-' separated sums into lhs - rhs."""

    def side(text: str) -> Polynomial:
        out = Polynomial.zero(ring)
        text = text.replace("-", "+-").strip()
        for chunk in filter(None, (c.strip() for c in text.split("+"))):
            sign = -1 if chunk.startswith("-") else 1
            term = Polynomial.constant(ring, sign)
            for factor in chunk.lstrip("-").split("*"):
                name, _, k = factor.strip().partition("^")
                term = term * Polynomial.var(ring, f"y_{name}") ** (int(k) if k else 1)
            out = out + term
        return out

    return side(lhs) - side(rhs)


def compare_up_to_rescaling(
    computed: Sequence[Polynomial], reference: Sequence[Polynomial], ring: VariableSet
) -> tuple[Fraction, Fraction] | None:
    """Scalars (c1, c2) with y_pi1 -> c1 y_pi1, y_pi2 -> c2 y_pi2 matching the sets up to monic scaling."""
    i1, i2 = ring.index("y_pi1"), ring.index("y_pi2")

    def rescale(p: Polynomial, c1, c2) -> Polynomial:
        return Polynomial(ring, {e: c * c1 ** e[i1] * c2 ** e[i2] for e, c in p.terms.items()}).monic(WDEG_INVLEX)

    target = {r.monic(WDEG_INVLEX) for r in reference}
    candidates = {Fraction(1), Fraction(-1)}
    for p in computed:
        for q in reference:
            for e, c in p.terms.items():
                d = q.terms.get(e)
                if d and (e[i1] + e[i2]) == 1:
                    candidates.add(d / c)
    for c1 in sorted(candidates):
        for c2 in sorted(candidates):
            if {rescale(p, c1, c2) for p in computed} == target:
                return c1, c2
    return None
