from __future__ import annotations

import itertools
import random
from fractions import Fraction as Fr

import pytest

from seshadri.fan import FanElement, FanOfMonoids, chained, decompose
from seshadri.fan_algebra import (
    ZERO,
    StandardMonomial,
    algebra_image,
    fan_product,
    koszul_check,
    presentation_ideal,
    quadratic_relations,
    rewrite_pair,
    standard_monomials,
    straighten,
)
from seshadri.poset import StratPoset
from seshadri.sl3 import PI1, PI2

E = FanElement.unit
half = Fr(1, 2)


def test_fan_product_examples(sl3_fan):
    assert fan_product(E("s1"), E("s2"), sl3_fan) is ZERO
    assert fan_product(PI1, PI2, sl3_fan) is ZERO
    assert fan_product(PI1, E("id"), sl3_fan) == PI1 + E("id")
    assert fan_product(PI2, PI2, sl3_fan) == FanElement.of({"s1s2": 1, "s2": 1})


def test_rewrite_pair_cases(sl3_fan):
    assert rewrite_pair(E("s1"), E("s2"), sl3_fan).case == 1
    assert rewrite_pair(E("w0"), E("id"), sl3_fan) == rewrite_pair(E("id"), E("w0"), sl3_fan)
    assert rewrite_pair(E("w0"), E("id"), sl3_fan).case == 3
    step = rewrite_pair(PI1, PI1, sl3_fan)
    assert step.case == 2 and step.result == (E("s2s1"), E("s1"))
    step = rewrite_pair(PI2, PI2, sl3_fan)
    assert step.case == 2 and step.result == (E("s1s2"), E("s2"))
    assert rewrite_pair(PI1, E("s2"), sl3_fan).case == 1


def test_straighten_examples(sl3_fan):
    assert straighten([E("s1"), E("s2")], sl3_fan) is ZERO
    assert straighten([PI1, PI1], sl3_fan) == StandardMonomial((E("s2s1"), E("s1")))
    assert straighten([E("id"), PI1, E("w0")], sl3_fan) == StandardMonomial((E("w0"), PI1, E("id")))
    assert straighten([], sl3_fan) == StandardMonomial(())


def test_straighten_is_confluent(sl3_fan):
    """Any rewrite schedule reaches the same normal form: the decomposition of the sum."""
    rng = random.Random(7)
    gens = list(sl3_fan.indecomposable)
    for k in range(2, 5):
        for word in itertools.product(gens, repeat=k):
            if k == 4 and rng.random() > 0.05:
                continue
            result = straighten(word, sl3_fan)
            shuffled = list(word)
            rng.shuffle(shuffled)
            assert straighten(shuffled, sl3_fan) == result
            if result is ZERO:
                continue
            total = FanElement()
            for u in word:
                total = total + u
            assert result.parts == tuple(decompose(total, sl3_fan))
            assert all(chained(a, b, sl3_fan.poset) for a, b in zip(result.parts, result.parts[1:]))


def test_quadratic_relation_count(sl3_fan):
    rels = quadratic_relations(sl3_fan)
    assert len(rels) == 9
    assert sorted(r.case for r in rels) == [1] * 7 + [2] * 2


def test_degree_two_counts(sl3_fan):
    monomials = 36
    assert len(standard_monomials(sl3_fan, 2)) == 27 == monomials - 9
    assert len(sl3_fan.elements_of_degree(2)) == 27


def test_presentation_generators_vanish(sl3_fan):
    pres = presentation_ideal(sl3_fan, 3)
    assert pres.generators
    for g in pres.generators:
        assert algebra_image(g, sl3_fan) == {}
    assert len(pres.groebner()) == 9


def test_algebra_image_nonzero(sl3):
    f = sl3.y("pi1") ** 2 + sl3.y("s2s1") * sl3.y("s1")
    img = algebra_image(f, sl3.fan)
    assert img == {StandardMonomial((E("s2s1"), E("s1"))): 2}


def test_koszul_examples(sl3_fan, toric):
    assert koszul_check(presentation_ideal(sl3_fan, 3)).verdict == "Quadratic"
    assert koszul_check(presentation_ideal(toric, 3)).verdict == "Quadratic"


def _point():
    return StratPoset(("p",), (), {}, {"p": 1}, ())


def test_numerical_semigroup_not_quadratic():
    fan = FanOfMonoids.build(_point(), generators={"p": [FanElement.of({"p": 2}), FanElement.of({"p": 3})]},
                             degree_bound=6)
    result = koszul_check(presentation_ideal(fan, 3))
    assert not result.quadratic
    assert result.witness.total_degree == 3


def test_rank_zero_has_zero_ideal():
    fan = FanOfMonoids.build(_point())
    pres = presentation_ideal(fan, 4)
    assert pres.generators == ()
    assert len(pres.groebner()) == 0
    assert koszul_check(pres).quadratic


def test_standard_monomial_check_rejects(sl3_fan):
    from seshadri.errors import DomainError

    with pytest.raises(DomainError):
        StandardMonomial((E("id"), E("w0"))).check(sl3_fan)
    with pytest.raises(DomainError):
        StandardMonomial((E("w0") + E("id"),)).check(sl3_fan)
    StandardMonomial((E("w0"), PI1, E("id"))).check(sl3_fan)
