import sympy
from hypothesis import given, settings, strategies as st
from sympy.functions.combinatorial.numbers import stirling

from conftest import F, R, X, monic_linear_products, polys, to_sympy, x
from telescope.ratsum import (abramov_reduce, from_falling, is_rational_summable, stirling2,
                              sum_polynomial, to_falling)
from telescope.rational import dispersion


def test_stirling_matches_sympy():
    for m in range(12):
        for i in range(m + 1):
            assert stirling2(m, i) == stirling(m, i, kind=2)


@settings(max_examples=100, deadline=None)
@given(polys(0, 7))
def test_falling_roundtrip(p):
    assert from_falling(to_falling(p).coeffs, R) == p


@settings(max_examples=100, deadline=None)
@given(polys(0, 7))
def test_sum_polynomial(p):
    g = sum_polynomial(p)
    assert g.shift(1) - g == p and not g(0)
    i = sympy.Symbol("i")
    oracle = sympy.summation(to_sympy(p, i), (i, 0, X - 1))
    assert sympy.expand(oracle - to_sympy(g)) == 0


def test_sum_cubes():
    assert str(sum_polynomial(x ** 3)) == "1/4*x^4 - 1/2*x^3 + 1/4*x^2"


@st.composite
def rational_functions(draw):
    b = draw(monic_linear_products(max_factors=3, spread=8))
    a = draw(polys(0, 5))
    return F.convert(a) / F.convert(b)


@settings(max_examples=300, deadline=None)
@given(rational_functions())
def test_abramov_identity(f):
    g, r = abramov_reduce(f)
    assert g.shift(1) - g + r == f
    if r:
        assert r.num.degree() < r.den.degree()
        if r.den.degree() > 0:
            assert dispersion(r.den) == 0


@settings(max_examples=100, deadline=None)
@given(rational_functions())
def test_differences_are_summable(g):
    assert is_rational_summable(g.shift(1) - g)


def test_harmonic_not_summable():
    g, r = abramov_reduce(1 / x)
    assert not g and r == 1 / x
    assert not is_rational_summable(1 / x + 1 / (x + 3) ** 2)


def test_telescoping_example():
    g, r = abramov_reduce(1 / (x * (x + 1)))
    assert g == -1 / x and not r
