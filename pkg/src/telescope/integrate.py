"""Indefinite integration of rational functions.

``hermite_reduce`` splits f into g' + h with h having a squarefree
denominator; ``logpart`` expresses the integral of such an h as a sum over
roots of the Rothstein-Trager resultant.
"""

from __future__ import annotations

from dataclasses import dataclass

from .arith.core import (QQ, AlgebraicField, DomainError, FracField, Poly, PolyRing, RatFun,
                         poly_gcd)
from .arith.algorithms import resultant, solvemod, squarefree_decomposition
from .arith.factor import factor_rationals
from .linalg import Matrix, solve
from .rational import as_ratfun

__all__ = [
    "HermiteResult", "LogPart", "hermite_reduce", "horowitz_ostrogradsky",
    "is_integrable", "logpart", "integrate_rational", "intpoly",
]


@dataclass(frozen=True)
class HermiteResult:
    g: RatFun
    h: RatFun

    def __iter__(self):
        return iter((self.g, self.h))


@dataclass(frozen=True)
class LogPart:
    """Sum over pairs (u, g) of  sum_{u(alpha)=0} alpha * log g(alpha, x)."""

    contributions: tuple

    def __iter__(self):
        return iter(self.contributions)

    def __len__(self):
        return len(self.contributions)

    def as_strings(self):
        return [(str(u), str(g)) for u, g in self.contributions]

    def __str__(self):
        return "[" + ", ".join(f"({u}, {g})" for u, g in self.as_strings()) + "]"


def intpoly(p):
    """Antiderivative of a polynomial with zero constant term."""
    return p.integrate()


def hermite_reduce(f):
    """Ostrogradsky-Hermite reduction: f = der(g) + h, den(h) squarefree, h proper.

    >>> x = PolyRing(QQ, 'x').gen
    >>> g, h = hermite_reduce((x+1)**4*(x+2)**3/((x+4)**2*(x+5)**3))
    >>> print(h)
    (-1116*x - 684)/(x^2 + 9*x + 20)
    """
    f = as_ratfun(f)
    field = f.field
    p, u = f.num, f.den
    if u.degree() == 0:
        return HermiteResult(field.convert(intpoly(p.scale(field.ring.dom.inv(u.lc())))), field.zero)
    q, p = p.divmod(u)
    g = field.convert(intpoly(q))
    dec = squarefree_decomposition(u)
    m = max(e for _, e in dec.factors)
    factors = [field.ring.one] * (m + 1)
    for fac, e in dec.factors:
        factors[e] = fac
    while m > 1:
        v = factors[m]
        dv = v.diff()
        u = u.exquo(v ** m)
        b = solvemod(p, -(u * dv).scale(field.ring.dom.convert(m - 1)), v)
        p = (p + (b * u * dv).scale(field.ring.dom.convert(m - 1)) - b.diff() * u * v).exquo(v)
        g = g + RatFun(b, v ** (m - 1), field)
        factors[m - 1] = factors[m - 1] * v
        u = u * v ** (m - 1)
        m -= 1
    return HermiteResult(g, RatFun(p, factors[1], field))


def horowitz_ostrogradsky(f):
    """Same contract as :func:`hermite_reduce`, by undetermined coefficients."""
    f = as_ratfun(f)
    field = f.field
    ring = field.ring
    dom = ring.dom
    q0, a = f.num.divmod(f.den)
    b = f.den
    g0 = field.convert(intpoly(q0))
    if not a:
        return HermiteResult(g0, field.zero)
    bm = poly_gcd(b, b.diff())
    bs = b.exquo(bm)
    t = (bs * bm.diff()).exquo(bm)
    dp, dq = bm.degree(), bs.degree()
    nrow = b.degree()
    x = ring.gen
    cols = []
    for i in range(dp):
        xi = x ** i
        cols.append(xi.diff() * bs - xi * t)
    for i in range(dq):
        cols.append((x ** i) * bm)
    rows = [[c.coeff(r) for c in cols] for r in range(nrow)]
    rhs = [a.coeff(r) for r in range(nrow)]
    sol = solve(Matrix(rows, dom, len(cols)), rhs)
    if sol is None:
        raise DomainError("Horowitz-Ostrogradsky system unexpectedly inconsistent")
    p = Poly([dom.convert(c) for c in sol[:dp]], ring)
    q = Poly([dom.convert(c) for c in sol[dp:]], ring)
    return HermiteResult(g0 + RatFun(p, bm, field), RatFun(q, bs, field))


def is_integrable(f):
    """True iff f has a rational antiderivative."""
    return not hermite_reduce(f).h


def logpart(f):
    """Rothstein-Trager logarithmic part of a proper f with squarefree denominator.

    >>> x = PolyRing(QQ, 'x').gen
    >>> print(logpart(1/(x**3 + x)))
    [(z - 1, x), (z + 1/2, x^2 + 1)]
    """
    f = as_ratfun(f)
    a, b = f.num, f.den
    if f.ring.dom is not QQ:
        raise DomainError("logpart needs rational coefficients")
    if a.degree() >= b.degree() and a:
        raise DomainError("logpart needs a proper rational function")
    if b.degree() > 0 and poly_gcd(b, b.diff()).degree() > 0:
        raise DomainError("logpart needs a squarefree denominator")
    if not a:
        return LogPart(())
    xv = f.ring.var
    zname = "z" if xv != "z" else "t"
    Rz = PolyRing(QQ, zname)
    Rzx = PolyRing(Rz, xv)
    z = Rzx.convert(Rz.gen)
    bz = Poly([Rz.convert(c) for c in b.coeffs], Rzx)
    az = Poly([Rz.convert(c) for c in a.coeffs], Rzx)
    dbz = Poly([Rz.convert(c) for c in b.diff().coeffs], Rzx)
    R = resultant(bz, az - z * dbz)
    out = []
    for u, _ in factor_rationals(R).factors:
        if u.degree() < 1:
            continue
        K = AlgebraicField(u)
        RK = PolyRing(K, xv)
        zk = K.gen
        bk = Poly([K.convert(c) for c in b.coeffs], RK)
        ck = Poly([K.convert(c) - zk * K.convert(d)
                   for c, d in zip(_pad(a.coeffs, len(b.coeffs)), _pad(b.diff().coeffs, len(b.coeffs)))],
                  RK)
        g = poly_gcd(bk, ck)
        out.append((u, g))
    return LogPart(tuple(out))


def _pad(c, n):
    return list(c) + [0] * (n - len(c))


def integrate_rational(f):
    """Return (g, logpart) with f = der(g) + derivative of the log contributions."""
    r = hermite_reduce(f)
    return r.g, logpart(r.h)
