from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cuspidal.errors import NegativeConstantTerm, NonvanishingConstantTerm, ZeroConstantTerm
from cuspidal.jets import Jet, invert_unit, sqrt_unit

ORDER = 5
u, v, s = Jet.variables(ORDER)

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)
exponents = st.tuples(*[st.integers(0, ORDER)] * 3).filter(lambda e: sum(e) <= ORDER)


@st.composite
def jets(draw, min_degree=0):
    terms = draw(st.dictionaries(exponents.filter(lambda e: sum(e) >= min_degree), rationals,
                                 max_size=8))
    return Jet(terms, ORDER)


@st.composite
def units(draw):
    j = draw(jets())
    c = draw(st.sampled_from([F(1), F(4), F(1, 9), F(25, 4)]))
    return j - j.constant + c


@settings(max_examples=60, deadline=None)
@given(jets(), jets(), jets())
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a - a == 0


@settings(max_examples=60, deadline=None)
@given(jets(), jets(), st.sampled_from("uvs"))
def test_leibniz(a, b, var):
    assert (a * b).differentiate(var) == a.differentiate(var) * b + a * b.differentiate(var)


@settings(max_examples=40, deadline=None)
@given(jets(), jets(1), jets(1), jets(1))
def test_chain_rule(f, g1, g2, g3):
    inner = [g1, g2, g3]
    lhs = f.compose(inner).differentiate("v").truncate(ORDER - 1)
    rhs = sum((f.differentiate(x).compose(inner) * g.differentiate("v")
               for x, g in zip("uvs", inner)), Jet({}, ORDER)).truncate(ORDER - 1)
    assert lhs == rhs


@settings(max_examples=60, deadline=None)
@given(units())
def test_unit_inverses(a):
    assert a * invert_unit(a) == 1
    assert invert_unit(a) * a == 1
    r = sqrt_unit(a)
    assert r * r == a
    assert sqrt_unit(r * r) == r


def test_arithmetic_examples():
    assert (1 + u) * (1 - u) == 1 - u ** 2
    j = 3 * u * s - v
    assert j + 0 == j
    w = Jet.var("v", 3)
    assert (w ** 2) * (w ** 2) == 0


def test_order_is_min_of_operands():
    a = Jet.var("u", 4)
    b = Jet.var("u", 6)
    assert (a * b).order == 4
    assert (a + b).order == 4


def test_explicit_zero_is_absent():
    assert Jet({(1, 0, 0): 0}, 3) == Jet({}, 3)
    assert len(Jet({(1, 0, 0): 0, (0, 1, 0): 2}, 3)) == 1


def test_truncation_drops_high_degree():
    j = Jet({(2, 2, 0): 1, (1, 0, 0): 1}, 3)
    assert j == u.truncate(3)


def test_differentiate_examples():
    d2 = F(7, 3)
    assert (u ** 2 * d2).differentiate("u") == 2 * u * d2
    c0, c1, c2 = u * s, s + u ** 2, 1 + u
    f32 = c0 + v * c1 + v ** 2 * c2
    assert f32.differentiate("v").restrict("v") == c1.truncate(ORDER - 1)
    assert (s + u * s * 5).differentiate("s").constant == 1
    assert u.differentiate("u").order == ORDER - 1


def test_compose_examples():
    assert (u ** 2).compose([u + v, None, None]) == u ** 2 + 2 * u * v + v ** 2
    c1 = s + u ** 2
    t = Jet.var("u", ORDER)
    assert c1.compose([u, None, -(v * v)]) == u ** 2 - v ** 2
    j = 1 + u * v - s ** 3
    assert j.compose([u, v, s]) == j
    assert t.compose([None, None, None]) == t


def test_compose_requires_vanishing_constants():
    with pytest.raises(NonvanishingConstantTerm):
        u.compose([1 + u, None, None])


def test_unit_examples():
    geo = invert_unit(1 + u)
    assert geo == sum(((-u) ** k for k in range(ORDER + 1)), Jet({}, ORDER))
    assert sqrt_unit(1 + 2 * u + u ** 2) == 1 + u
    assert sqrt_unit(Jet.const(4, ORDER)) == 2
    with pytest.raises(ZeroConstantTerm):
        invert_unit(u)
    with pytest.raises(NegativeConstantTerm):
        sqrt_unit(u - 1)


def test_evaluate_examples():
    assert (u ** 2 + s).evaluate((F(1, 5), 0, F(-1, 25))) == 0
    assert abs((u ** 2 + s).evaluate((0.2, 0, -0.04))) < 1e-16
    j = 7 + u - 3 * v * s
    assert j.evaluate((0, 0, 0)) == 7
    assert (v ** 2).evaluate((0, 3, 0)) == 9


def test_float_tower():
    a = (1 + u).to_float()
    assert not a.is_exact
    assert (a * a)[(1, 0, 0)] == 2.0
    assert (1 + u).is_exact


def test_weighted_truncation():
    w = Jet.var("v", 4, weights=(1, 2, 1))
    assert (w * w).order == 4
    assert (w * w * w) == 0
