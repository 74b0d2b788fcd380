"""Ring, operator, and serialization behavior of GfPoly."""

import pytest
from hypothesis import given, settings, strategies as st

from gkzmodp import GfPoly


def poly(p, d):
    return GfPoly(p, 2, d)


def test_construction_drops_zero_coefficients():
    f = poly(5, {(1, 0): 5, (0, 1): 3})
    assert f.terms == {(0, 1): 3}


def test_construction_rejects_bad_exponents():
    with pytest.raises(ValueError):
        poly(5, {(1,): 1})
    with pytest.raises(ValueError):
        poly(5, {(-1, 0): 1})


def test_zero_and_constant():
    assert GfPoly.zero(5, 2).is_zero()
    assert GfPoly.constant(5, 2, 7).terms == {(0, 0): 2}
    assert GfPoly.monomial(5, (2, 1)).terms == {(2, 1): 1}


def test_ring_operations():
    f = poly(5, {(1, 0): 2})
    g = poly(5, {(0, 1): 3})
    assert (f + g).terms == {(1, 0): 2, (0, 1): 3}
    assert (f - f).is_zero()
    assert (f * g).terms == {(1, 1): 1}
    assert (f * 3).terms == {(1, 0): 1}
    assert (3 * f) == f * 3
    assert (-f).terms == {(1, 0): 3}
    assert f.scale(0).is_zero()


def test_derivative_power_is_falling_factorial():
    # d^2/dx^2 of 2 x^3 y = 12 x y = 2 x y mod 5
    f = poly(5, {(3, 1): 2})
    assert f.derivative_power(0, 2).terms == {(1, 1): 2}
    # order >= p kills every monomial with exponent < order
    assert f.derivative_power(0, 4).is_zero()
    assert f.derivative_power(1, 2).is_zero()


def test_frobenius_twist_scales_exponents():
    f = poly(5, {(1, 2): 3})
    assert f.frobenius_twist(1).terms == {(5, 10): 3}
    assert f.frobenius_twist(0) == f


def test_evaluate():
    # 1 + 4 x + x^2 at x = 2 is 13 = 3 mod 5
    f = GfPoly(5, 1, {(0,): 1, (1,): 4, (2,): 1})
    assert f.evaluate((2,)) == 3
    assert GfPoly.zero(5, 1).evaluate((4,)) == 0


def test_degrees():
    f = poly(5, {(1, 2): 3, (3, 0): 1})
    assert f.degree_in(0) == 3
    assert f.degree_in(1) == 2
    assert f.total_degree() == 3
    assert GfPoly.zero(5, 2).degree_in(0) == -1


def test_text_form_is_canonical():
    f = GfPoly(5, 2, {(3, 0): 4, (5, 2): 2})
    assert f.to_text() == "4*l1^3 + 2*l1^5*l2^2"
    assert GfPoly.zero(5, 2).to_text() == "0"
    assert GfPoly(5, 2, {(1, 0): 3}).to_text() == "3*l1"
    assert GfPoly.constant(5, 2, 2).to_text() == "2"


def test_json_form():
    f = GfPoly(5, 2, {(3, 0): 4, (5, 2): 2})
    assert f.to_json_obj() == [{"coef": 4, "exps": [3, 0]},
                               {"coef": 2, "exps": [5, 2]}]


def test_equality_and_hash():
    f = poly(5, {(1, 0): 2})
    g = poly(5, {(1, 0): 7})
    assert f == g and hash(f) == hash(g)
    assert f != poly(5, {(1, 0): 3})
    assert f != poly(7, {(1, 0): 2})


small_polys = st.builds(
    lambda d: GfPoly(5, 2, d),
    st.dictionaries(
        st.tuples(st.integers(0, 4), st.integers(0, 4)),
        st.integers(-10, 10), max_size=5))


@settings(max_examples=100, deadline=None)
@given(small_polys, small_polys, small_polys)
def test_ring_axioms(f, g, h):
    assert f + g == g + f
    assert f * g == g * f
    assert (f + g) + h == f + (g + h)
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f + GfPoly.zero(5, 2) == f
    assert f * GfPoly.constant(5, 2, 1) == f


@settings(max_examples=100, deadline=None)
@given(small_polys, small_polys, st.tuples(st.integers(0, 4), st.integers(0, 4)))
def test_evaluation_is_a_homomorphism(f, g, x):
    assert (f * g).evaluate(x) == f.evaluate(x) * g.evaluate(x) % 5
    assert (f + g).evaluate(x) == (f.evaluate(x) + g.evaluate(x)) % 5


@settings(max_examples=100, deadline=None)
@given(small_polys, small_polys)
def test_derivative_is_linear(f, g):
    assert (f + g).derivative_power(0, 1) == \
        f.derivative_power(0, 1) + g.derivative_power(0, 1)


@settings(max_examples=60, deadline=None)
@given(small_polys, small_polys)
def test_twist_is_multiplicative(f, g):
    assert (f * g).frobenius_twist(1) == \
        f.frobenius_twist(1) * g.frobenius_twist(1)
