"""Indefinite summation of polynomials and rational functions."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .arith.core import QQ, DomainError, FracField, Poly, PolyRing, RatFun
from .arith.factor import factor_rationals
from .rational import as_ratfun, partial_fractions

__all__ = [
    "stirling2", "FallingFactorialPoly", "to_falling", "from_falling",
    "sum_polynomial", "AbramovResult", "abramov_reduce", "is_rational_summable",
]


@lru_cache(maxsize=None)
def stirling2(m, i):
    """Stirling numbers of the second kind."""
    if m < 0 or i < 0:
        raise ValueError("Stirling numbers need nonnegative arguments")
    if i > m:
        return 0
    if m == i:
        return 1
    if i == 0:
        return 0
    return stirling2(m - 1, i - 1) + i * stirling2(m - 1, i)


@dataclass(frozen=True)
class FallingFactorialPoly:
    """sum c_j x^(j falling)."""

    coeffs: tuple
    ring: PolyRing

    def to_poly(self):
        return from_falling(self.coeffs, self.ring)


def falling(ring, j):
    x = ring.gen
    r = ring.one
    for i in range(j):
        r = r * (x - i)
    return r


def to_falling(p):
    """Coefficients of p in the falling-factorial basis."""
    n = p.degree() + 1
    dom = p.ring.dom
    out = [dom.zero] * n
    for i, a in enumerate(p.coeffs):
        if a:
            for j in range(i + 1):
                s = stirling2(i, j)
                if s:
                    out[j] = out[j] + a * s
    return FallingFactorialPoly(tuple(out), p.ring)


def from_falling(coeffs, ring):
    r = ring.zero
    for j, c in enumerate(coeffs):
        if c:
            r = r + falling(ring, j) * c
    return r


def sum_polynomial(f):
    """g with g(x+1) - g(x) = f(x) and g(0) = 0.

    >>> x = PolyRing(QQ, 'x').gen
    >>> print(sum_polynomial(x**3))
    1/4*x^4 - 1/2*x^3 + 1/4*x^2
    """
    ring = f.ring
    dom = ring.dom
    c = to_falling(f).coeffs
    g = [dom.zero] + [dom.div(a, dom.convert(j + 1)) for j, a in enumerate(c)]
    return from_falling(g, ring)


@dataclass(frozen=True)
class AbramovResult:
    """f = g(x+1) - g(x) + r with den(r) shift-free and r proper."""

    g: RatFun
    r: RatFun

    def __iter__(self):
        return iter((self.g, self.r))


def _orbits(factors):
    """Group monic irreducibles by integer shift equivalence.

    Returns a list of (representative, {factor: shift}) where
    factor(x) = representative(x + shift) and the representative has the
    smallest shift (all shifts >= 0).
    """
    groups = []
    for f in factors:
        placed = False
        for grp in groups:
            rep = grp[0]
            if rep.degree() != f.degree():
                continue
            d = f.degree()
            k = Fraction(f.coeff(d - 1) - rep.coeff(d - 1)) / d
            if k.denominator != 1:
                continue
            k = int(k)
            if rep.shift(k) == f:
                grp[1][f] = k
                placed = True
                break
        if not placed:
            groups.append((f, {f: 0}))
    out = []
    for rep, members in groups:
        low = min(members.values())
        new_rep = rep.shift(low)
        out.append((new_rep, {f: s - low for f, s in members.items()}))
    return out


def abramov_reduce(f):
    """Abramov reduction over QQ.

    >>> x = PolyRing(QQ, 'x').gen
    >>> res = abramov_reduce(1/(x*(x + 1)))
    >>> print(res.g, res.r)
    -1/x 0
    """
    f = as_ratfun(f)
    field = f.field
    if f.ring.dom is not QQ:
        raise DomainError("abramov_reduce works over rational coefficients")
    q, a = f.num.divmod(f.den)
    g = field.convert(sum_polynomial(q))
    r = field.zero
    if not a:
        return AbramovResult(g, r)
    fac = factor_rationals(f.den)
    orbits = _orbits([u for u, _ in fac.factors])
    shift_of = {}
    for rep, members in orbits:
        for u, s in members.items():
            shift_of[u] = (rep, s)
    pf = partial_fractions(RatFun(a, f.den, field), "irreducible")
    for c, base, e in pf.terms:
        rep, m = shift_of[base]
        b = rep ** e
        # c / sigma^m(b) = Delta(sum_{j=1}^m sigma^{-j} c / sigma^{m-j} b) + sigma^{-m} c / b
        for j in range(1, m + 1):
            g = g + RatFun(c.shift(-j), b.shift(m - j), field)
        r = r + RatFun(c.shift(-m), b, field)
    return AbramovResult(g, r)


def is_rational_summable(f):
    """True iff f = g(x+1) - g(x) for a rational g."""
    return not abramov_reduce(f).r
