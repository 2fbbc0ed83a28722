from __future__ import annotations

import itertools
from fractions import Fraction as Fr

import pytest
from hypothesis import given
from hypothesis import strategies as st

from seshadri.errors import InputError
from seshadri.fan import Ordering
from seshadri.polyring import (
    DEGREVLEX,
    LEX,
    WDEG_INVLEX,
    Monomial,
    Polynomial,
    VariableSet,
    buchberger,
    compare,
    format_polynomial,
    initial_ideal_equal,
    is_reduced,
    normal_form,
    parse_polynomial,
    s_polynomial,
)

V3 = VariableSet(("a", "b", "c"))


def mono(*e, vs=V3):
    return Monomial(vs, tuple(e))


def p(text, vs=V3):
    return parse_polynomial(text, vs)


def naive_greater(e1, e2, weights):
    """Reference order: higher weighted degree, then the first differing exponent is smaller in e1."""
    d1 = sum(a * w for a, w in zip(e1, weights))
    d2 = sum(a * w for a, w in zip(e2, weights))
    if d1 != d2:
        return d1 > d2
    for a, b in zip(e1, e2):
        if a != b:
            return a < b
    return False


def test_compare_examples():
    assert compare(mono(0, 1, 1), mono(1, 0, 1), WDEG_INVLEX) == Ordering.GT
    assert compare(mono(2, 0, 0), mono(0, 0, 1), WDEG_INVLEX) == Ordering.GT
    assert compare(mono(0, 0, 2), mono(2, 0, 0), WDEG_INVLEX) == Ordering.GT
    assert compare(mono(1, 1, 0), mono(1, 1, 0), WDEG_INVLEX) == Ordering.EQ
    assert compare(mono(2, 0, 0), mono(0, 0, 2), LEX) == Ordering.GT


def test_compare_respects_weights():
    w = VariableSet(("a", "b"), (1, 3))
    assert compare(mono(0, 1, vs=w), mono(2, 0, vs=w), WDEG_INVLEX) == Ordering.GT


def test_compare_rejects_mixed_rings():
    with pytest.raises(InputError):
        compare(mono(1, 0, 0), Monomial(VariableSet(("x", "y", "z")), (1, 0, 0)), WDEG_INVLEX)


def test_variable_set_validation():
    with pytest.raises(InputError):
        VariableSet(("a", "a"))
    with pytest.raises(InputError):
        VariableSet(("a", "b"), (1, 0))


exps = st.tuples(*[st.integers(0, 4)] * 3)


@given(exps, exps)
def test_wdeg_invlex_order_matches_naive_definition(e1, e2):
    assert (compare(mono(*e1), mono(*e2), WDEG_INVLEX) == Ordering.GT) == naive_greater(e1, e2, (1, 1, 1))


@given(exps, exps, exps)
def test_order_is_multiplicative(e1, e2, e3):
    for order in (WDEG_INVLEX, LEX, DEGREVLEX):
        a = compare(mono(*e1), mono(*e2), order)
        shifted = [tuple(x + y for x, y in zip(e, e3)) for e in (e1, e2)]
        assert compare(mono(*shifted[0]), mono(*shifted[1]), order) == a


@given(exps, exps, exps)
def test_order_total_and_transitive(e1, e2, e3):
    c12, c21 = compare(mono(*e1), mono(*e2), WDEG_INVLEX), compare(mono(*e2), mono(*e1), WDEG_INVLEX)
    assert (c12 == Ordering.EQ) == (e1 == e2)
    assert {c12, c21} in ({Ordering.EQ}, {Ordering.GT, Ordering.LT})
    if c12 == Ordering.GT and compare(mono(*e2), mono(*e3), WDEG_INVLEX) == Ordering.GT:
        assert compare(mono(*e1), mono(*e3), WDEG_INVLEX) == Ordering.GT


def test_normal_form_against_semitoric_basis(sl3):
    G = sl3.semitoric_basis().polys
    y = sl3.y
    assert normal_form(y("pi1") ** 2, G, WDEG_INVLEX) == y("s2s1") * y("s1")
    assert normal_form(y("s2") * y("s1"), G, WDEG_INVLEX).is_zero()
    cube = y("id") ** 3
    assert normal_form(cube, G, WDEG_INVLEX) == cube
    assert normal_form(y("pi1") ** 2 * y("id"), G, WDEG_INVLEX) == y("s2s1") * y("s1") * y("id")


def test_buchberger_sl3_has_nine_quadrics(sl3):
    gb = sl3.semitoric_basis()
    assert len(gb) == 9
    assert all(g.total_degree == 2 for g in gb)
    assert is_reduced(gb.polys, WDEG_INVLEX)


def test_buchberger_principal_ideal():
    f = p("2 * a^2 + -4 * b c")
    gb = buchberger([f, f * p("1 * a"), p("3 * c") * f], WDEG_INVLEX)
    assert gb.polys == (f.monic(WDEG_INVLEX),)


def test_buchberger_empty():
    assert len(buchberger([], WDEG_INVLEX)) == 0


T = VariableSet(("x0", "x1", "x2", "x3"))


def twisted_cubic_image(e):
    """x_i -> s^(3-i) t^i, returned as the exponent of s^? t^?."""
    return (sum((3 - i) * k for i, k in enumerate(e)), sum(i * k for i, k in enumerate(e)))


def kernel_dimension(deg):
    monos = [e for e in itertools.product(range(deg + 1), repeat=4) if sum(e) == deg]
    return len(monos) - len({twisted_cubic_image(e) for e in monos})


def test_twisted_cubic():
    g = [p(t, T) for t in ("1 * x0 x2 + -1 * x1^2", "1 * x1 x3 + -1 * x2^2", "1 * x0 x3 + -1 * x1 x2")]
    gb = buchberger(g, WDEG_INVLEX)
    assert len(gb) == 3 and all(h.total_degree == 2 for h in gb)
    for deg in (2, 3):
        monos = [e for e in itertools.product(range(deg + 1), repeat=4) if sum(e) == deg]
        standard = [e for e in monos if not any(all(a >= b for a, b in zip(e, lm)) for lm in gb.leading_monomials())]
        assert len(monos) - len(standard) == kernel_dimension(deg)


def test_initial_ideal_equal():
    a = buchberger([p("1 * a^2 + -1 * b c")], WDEG_INVLEX)
    b = buchberger([p("1 * a^2 + 5 * b c")], WDEG_INVLEX)
    c = buchberger([p("1 * b^2 + -1 * a c")], WDEG_INVLEX)
    assert initial_ideal_equal(a, b)
    assert not initial_ideal_equal(a, c)


polys = st.lists(
    st.tuples(st.tuples(*[st.integers(0, 2)] * 3), st.integers(-3, 3)), min_size=1, max_size=4
).map(lambda ts: sum((Polynomial.monomial(V3, e, c) for e, c in ts), Polynomial.zero(V3)))


@given(st.lists(polys, min_size=1, max_size=3), polys)
def test_groebner_properties(gens, f):
    gb = buchberger(gens, WDEG_INVLEX)
    G = gb.polys
    assert is_reduced(G, WDEG_INVLEX)
    for g in gens:
        assert gb.contains(g)
    for g, h in itertools.combinations(G, 2):
        assert normal_form(s_polynomial(g, h, WDEG_INVLEX), G, WDEG_INVLEX).is_zero()
    r = normal_form(f, G, WDEG_INVLEX)
    assert normal_form(r, G, WDEG_INVLEX) == r
    assert buchberger(G, WDEG_INVLEX).polys == G


@given(polys)
def test_parse_format_round_trip(f):
    text = format_polynomial(f, WDEG_INVLEX)
    assert parse_polynomial(text, V3) == f


def test_parse_examples():
    f = p("3/2 * a^2 b + -1 * c")
    assert f.terms == {(2, 1, 0): Fr(3, 2), (0, 0, 1): Fr(-1)}
    with pytest.raises(InputError):
        p("1 * d")
    with pytest.raises(InputError):
        p("1 * a^x")
