"""Shared helpers: sympy bridges (test-only oracle) and hypothesis strategies."""

from fractions import Fraction

import pytest
import sympy
from hypothesis import strategies as st

from telescope.arith.core import QQ, FracField, Poly, PolyRing, RatFun

X = sympy.Symbol("x")
R = PolyRing(QQ, "x")
F = FracField(R)
x = R.gen


def to_sympy(p, sym=X):
    """Poly or RatFun over QQ -> sympy expression."""
    if type(p) is RatFun:
        return to_sympy(p.num, sym) / to_sympy(p.den, sym)
    return sum((sympy.Rational(Fraction(c).numerator, Fraction(c).denominator) * sym ** i
                for i, c in enumerate(p.coeffs)), sympy.Integer(0))


def from_sympy(expr, ring=R, sym=X):
    """Polynomial sympy expression -> Poly over QQ."""
    coeffs = sympy.Poly(sympy.expand(expr), sym).all_coeffs()[::-1]
    return Poly([QQ.convert(Fraction(int(c.p), int(c.q))) for c in coeffs], ring)


def small_rationals(lo=-9, hi=9):
    return st.builds(lambda a, b: QQ.convert(Fraction(a, b)),
                     st.integers(lo, hi), st.integers(1, 4))


def polys(min_deg=0, max_deg=4, ring=R, nonzero=False):
    """Random polynomials over QQ with small coefficients."""
    def build(cs):
        p = Poly(cs, ring)
        return p
    s = st.integers(min_deg, max_deg).flatmap(
        lambda d: st.lists(small_rationals(), min_size=d + 1, max_size=d + 1))
    s = s.map(build)
    if nonzero:
        s = s.filter(lambda p: p.degree() >= min_deg and bool(p))
    return s


def monic_linear_products(max_factors=4, spread=6):
    """Products of small monic linear and quadratic factors with multiplicities."""
    def build(parts):
        out = R.one
        for kind, a, b, e in parts:
            fac = x + a if kind == 0 else x ** 2 + a * x + (b * b + 1)
            out = out * fac ** e
        return out
    part = st.tuples(st.integers(0, 1), st.integers(-spread, spread),
                     st.integers(-2, 2), st.integers(1, 3))
    return st.lists(part, min_size=1, max_size=max_factors).map(build)


@pytest.fixture
def xgen():
    return x


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
