import pytest
import sympy
from hypothesis import given, settings, strategies as st
from sympy.integrals.rationaltools import ratint_logpart

from conftest import F, R, X, monic_linear_products, polys, to_sympy, x
from telescope.arith import DomainError, poly_gcd
from telescope.integrate import (hermite_reduce, horowitz_ostrogradsky, integrate_rational,
                                 is_integrable, logpart)
from telescope.rational import der


@st.composite
def rational_functions(draw, max_num=7):
    b = draw(monic_linear_products(max_factors=3))
    a = draw(polys(0, max_num))
    return F.convert(a) / F.convert(b)


def _check_hermite(f, g, h):
    assert der(g) + h == f
    assert h.num.degree() < h.den.degree() or not h
    if h:
        assert poly_gcd(h.den, h.den.diff()).degree() == 0


@settings(max_examples=500, deadline=None)
@given(rational_functions())
def test_hermite_identity(f):
    g, h = hermite_reduce(f)
    _check_hermite(f, g, h)


@settings(max_examples=100, deadline=None)
@given(rational_functions())
def test_horowitz_agrees_with_hermite(f):
    g1, h1 = hermite_reduce(f)
    g2, h2 = horowitz_ostrogradsky(f)
    _check_hermite(f, g2, h2)
    assert h1 == h2
    assert (g1 - g2).is_constant()


@settings(max_examples=100, deadline=None)
@given(rational_functions(max_num=3))
def test_integrable_exactly_for_derivatives(g):
    assert is_integrable(der(g))


def test_not_integrable():
    assert not is_integrable(1 / (x + 1))


@st.composite
def squarefree_proper(draw):
    roots = draw(st.lists(st.integers(-6, 6), min_size=1, max_size=3, unique=True))
    b = R.one
    for r in roots:
        b = b * (x - r)
    if draw(st.booleans()):
        c = draw(st.integers(1, 4))
        b = b * (x ** 2 + c)
    a = draw(polys(0, b.degree() - 1))
    return F.convert(a) / F.convert(b)


def _monic_u(u):
    return str(sympy.Poly(u, sympy.Symbol("t")).monic().as_expr())


@settings(max_examples=60, deadline=None)
@given(squarefree_proper())
def test_logpart_matches_sympy(f):
    if not f:
        return
    lp = logpart(f)
    t = sympy.Symbol("t")
    theirs = ratint_logpart(to_sympy(f.num), to_sympy(f.den), X, t)
    # sympy groups roots by resultant multiplicity, we split into irreducibles: same root set
    ours = sympy.Mul(*[to_sympy(u, t) for u, _ in lp])
    expected = sympy.Mul(*[q.as_expr() for _, q in theirs])
    assert _monic_u(ours) == _monic_u(expected)
    # d/dx sum_{u(a)=0} a log g(a, x) = f
    total = 0
    for u, g in lp:
        gs = sum(to_sympy(c.poly, t) * X ** i for i, c in enumerate(g.coeffs))
        total += sympy.RootSum(to_sympy(u, t), sympy.Lambda(t, t * sympy.diff(gs, X) / gs))
    assert sympy.cancel(sympy.together(total.doit() if hasattr(total, "doit") else total)
                        - to_sympy(f)) == 0


def test_logpart_examples():
    assert str(logpart(1 / (x ** 3 + x))) == "[(z - 1, x), (z + 1/2, x^2 + 1)]"
    assert len(logpart(F.zero)) == 0


def test_logpart_rejects_bad_input():
    with pytest.raises(DomainError):
        logpart(1 / (x + 1) ** 2)
    with pytest.raises(DomainError):
        logpart(x ** 2 / (x + 1))


def test_integrate_rational_session():
    f = (x + 1) ** 4 * (x + 2) ** 3 / ((x + 4) ** 2 * (x + 5) ** 3)
    g, lp = integrate_rational(f)
    assert lp.as_strings() == [("z - 3780", "x + 4"), ("z + 4896", "x + 5")]
    h = f - der(g)
    assert h == (-1116 * x - 684) / (x ** 2 + 9 * x + 20)
