from __future__ import annotations

import itertools
import random
from fractions import Fraction as Fr

import pytest

from seshadri.errors import DomainError, InputError
from seshadri.fan import FanElement, degree, lex_compare, Ordering
from seshadri.fan_algebra import StandardMonomial
from seshadri.polyring import WDEG_INVLEX, GroebnerBasis, Polynomial
from seshadri.sl3 import PI1, PI2
from seshadri.toric import LABELS, ToricBackend, toric_expansion_backend
from seshadri.valuation import (
    RingElement,
    TableBackend,
    chain_valuation,
    lift_groebner_basis,
    lift_relation,
    quasi_valuation,
    subduct,
    subduct_by_expansion,
)

E = FanElement.unit
half = Fr(1, 2)


@pytest.fixture(scope="module")
def table(sl3):
    return {
        n: {c.id: sl3.backend.chain_valuation(sl3.y(n[2:]), c) for c in sl3.backend.chains}
        for n in sl3.fan.names
    }


def test_table_backend_additive(sl3, table):
    tb = TableBackend(sl3.fan, table)
    m = sl3.y("w0") * sl3.y("pi1") * sl3.y("id")
    for c in tb.chains:
        assert tb.chain_valuation(m, c) == sl3.backend.chain_valuation(m, c)
        assert tb.chain_valuation(m, c) == sum(
            (table[n][c.id] for n in ("y_w0", "y_pi1", "y_id")), FanElement()
        )


def test_table_backend_refuses_non_standard(sl3, table):
    tb = TableBackend(sl3.fan, table)
    with pytest.raises(DomainError):
        tb.chain_valuation(sl3.y("pi1") ** 2, tb.chains[0])
    with pytest.raises(DomainError):
        tb.chain_valuation(sl3.y("w0") + sl3.y("id"), tb.chains[0])
    with pytest.raises(InputError):
        TableBackend(sl3.fan, {"y_w0": table["y_w0"]})


def test_table_backend_json_round_trip(sl3, table, tmp_path):
    tb = TableBackend(sl3.fan, table)
    again = TableBackend.from_json(sl3.fan, tb.to_json())
    assert again.table == tb.table
    path = tmp_path / "table.json"
    import json

    path.write_text(json.dumps(tb.to_json()))
    assert TableBackend.load(sl3.fan, path).table == tb.table


def test_quasi_valuation_examples(sl3):
    b = sl3.backend
    assert quasi_valuation(sl3.y("pi1"), b) == PI1
    assert quasi_valuation(sl3.y("pi2"), b) == PI2
    assert quasi_valuation(sl3.y("w0"), b) == E("w0")
    f = sl3.y("s2s1") * sl3.y("s1s2")
    assert quasi_valuation(f, b) == FanElement.of({"w0": 1, "s2s1": half, "s1": half})
    assert quasi_valuation(RingElement(f), b) == quasi_valuation(f, b)
    with pytest.raises(DomainError):
        quasi_valuation(sl3.y("pi1") * sl3.y("pi2") - sl3.y("w0") * sl3.y("id"), b)
    assert quasi_valuation(sl3.y("s1") * sl3.y("s2"), b) == PI1 + E("id")


def test_chain_valuation_examples(sl3):
    b = sl3.backend
    c1 = next(c for c in b.chains if c.id == "w0>s2s1>s1>id")
    c2 = next(c for c in b.chains if c.id == "w0>s1s2>s2>id")
    f = sl3.y("s2s1") * sl3.y("s1s2")
    expected = FanElement.of({"w0": 1, "s2s1": half, "s1": half})
    assert chain_valuation(f, c1, b) == expected
    assert chain_valuation(f, c2, b) == FanElement.of({"w0": 1, "s1s2": half, "s2": half})


def test_subduct_examples(sl3):
    res = subduct(sl3.y("s2s1") * sl3.y("s1s2"), sl3.backend)
    assert res.residual_zero
    assert sorted(m.label(sl3.fan) for _, m in res.terms) == ["y_w0 y_pi1", "y_w0 y_pi2"]
    assert all(c == 1 for c, _ in res.terms)
    values = [s.value for s in res.steps]
    assert all(lex_compare(a, b, sl3.fan.linearization) == Ordering.LT for a, b in zip(values, values[1:]))


def test_one_shot_matches_iterative(sl3):
    exp = sl3.expansion_backend()
    names = [n[2:] for n in sl3.fan.names]
    for a, b in itertools.combinations_with_replacement(names, 2):
        f = sl3.y(a) * sl3.y(b)
        if sl3.backend.is_zero(f):
            assert exp.is_zero(f)
            continue
        it = subduct(f, sl3.backend)
        once = subduct_by_expansion(f, exp)
        assert it.as_polynomial(sl3.fan) == once.as_polynomial(sl3.fan)
        assert [s.value for s in it.steps] == [s.value for s in once.steps]


def test_lift_relation_examples(sl3):
    y = sl3.y
    assert lift_relation(y("pi1") * y("pi2"), sl3.backend) == y("pi1") * y("pi2") - y("w0") * y("id")
    assert lift_relation(y("pi1") ** 2 - y("s2s1") * y("s1"), sl3.backend) == (
        y("pi1") ** 2 - y("s2s1") * y("s1") + y("id") * y("w0")
    )


def test_lift_rejects_relations_outside_the_ideal(sl3):
    with pytest.raises(DomainError):
        lift_relation(sl3.y("s1"), sl3.backend)
    with pytest.raises(DomainError):
        lift_relation(sl3.y("pi1") ** 2, sl3.backend)


def test_lift_of_empty_basis(sl3):
    report = lift_groebner_basis(GroebnerBasis((), WDEG_INVLEX), sl3.backend)
    assert report.basis.polys == () and report.spairs_checked == 0


def test_lift_report(sl3):
    report = sl3.lift()
    assert len(report.basis) == 9 and report.spairs_checked == 36
    data = report.to_json(sl3.fan)
    assert len(data["lifted_basis"]) == 9 and len(data["entries"]) == 9


def _random_poly(ring, d, rng, nterms=3):
    out = Polynomial.zero(ring)
    for _ in range(nterms):
        e = [0] * len(ring)
        for _ in range(d):
            e[rng.randrange(len(ring))] += 1
        out = out + Polynomial.monomial(ring, e, rng.randint(-3, 3))
    return out


def test_values_nonnegative_and_degree(sl3):
    rng = random.Random(3)
    for _ in range(40):
        d = rng.randint(1, 3)
        f = _random_poly(sl3.ring, d, rng)
        if sl3.backend.is_zero(f):
            continue
        v = quasi_valuation(f, sl3.backend)
        assert all(x >= 0 for x in v.coords.values())
        assert degree(v, sl3.fan.poset) == d
        assert sl3.fan.contains(v)


def test_toric_backend_agrees_with_expansion():
    tb = ToricBackend()
    exp = toric_expansion_backend()
    rng = random.Random(5)
    for _ in range(30):
        f = _random_poly(tb.ring, rng.randint(1, 3), rng)
        if tb.is_zero(f):
            assert exp.is_zero(f)
            continue
        assert quasi_valuation(f, tb) == quasi_valuation(f, exp)


def test_toric_generator_value():
    tb = ToricBackend()
    y1 = Polynomial.var(tb.ring, "y1")
    assert quasi_valuation(y1, tb) == E("p3")
    y2 = Polynomial.var(tb.ring, "y2")
    assert quasi_valuation(y2, tb) == FanElement.from_vector(LABELS, (half, half, 0, 0))


def test_standard_monomial_values_are_sums(sl3):
    for d in (1, 2):
        for a in sl3.fan.elements_of_degree(d):
            from seshadri.fan import decompose

            sm = StandardMonomial(tuple(decompose(a, sl3.fan)))
            assert quasi_valuation(sm.as_polynomial(sl3.ring, sl3.fan), sl3.backend) == a
