"""Polynomial subroutines built on the core tower."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import QQ, DomainError, Poly, PolyRing, poly_gcd, poly_xgcd, qq

__all__ = [
    "Factorization", "squarefree_decomposition", "squarefree_part", "split",
    "solvemod", "resultant", "subresultant_resultant", "integer_roots",
]


@dataclass(frozen=True)
class Factorization:
    """``unit * prod(f**e for f, e in factors)``."""

    unit: object
    factors: tuple

    def expand(self):
        if not self.factors:
            return self.unit
        ring = self.factors[0][0].ring
        r = ring.convert(self.unit)
        for f, e in self.factors:
            r = r * f ** e
        return r

    def __iter__(self):
        return iter(self.factors)


def squarefree_decomposition(p):
    """Yun's algorithm.  Factors are monic, squarefree and pairwise coprime.

    >>> x = PolyRing(QQ, 'x').gen
    >>> [(str(f), e) for f, e in squarefree_decomposition(x**8 + 6*x**6 + 12*x**4 + 8*x**2)]
    [('x', 2), ('x^2 + 2', 3)]
    """
    if not p:
        raise DomainError("squarefree decomposition of zero")
    unit = p.lc()
    f = p.monic()
    if f.degree() <= 0:
        return Factorization(unit, ())
    df = f.diff()
    a0 = poly_gcd(f, df)
    b = f.exquo(a0)
    c = df.exquo(a0)
    d = c - b.diff()
    out = []
    i = 1
    while b.degree() > 0:
        a = poly_gcd(b, d)
        b = b.exquo(a)
        c = d.exquo(a)
        d = c - b.diff()
        if a.degree() > 0:
            out.append((a, i))
        i += 1
    return Factorization(unit, tuple(out))


def squarefree_part(p):
    """Monic product of the distinct irreducible factors of p."""
    if p.degree() <= 0:
        return p.ring.one
    return p.monic().exquo(poly_gcd(p, p.diff()))


def split(p):
    """Return (u, v, m) with p = u * v**m, v squarefree monic, gcd(u, v) = 1, m maximal."""
    if not p:
        raise DomainError("split of zero")
    if p.degree() == 0:
        return p, p.ring.one, 1
    fac = squarefree_decomposition(p)
    v, m = fac.factors[-1]
    u = p.exquo(v ** m)
    return u, v, m


def solvemod(a, u, v):
    """Return b with deg b < deg v and b*u = a (mod v)."""
    if v.degree() < 1:
        raise DomainError("solvemod needs a nonconstant modulus")
    if not a:
        return a.ring.zero
    g, s, _ = poly_xgcd(u, v)
    q, r = a.divmod(g)
    if r:
        raise DomainError("no solution: gcd(u, v) does not divide a")
    return (s * q) % v


def _prem(a, b):
    """Pseudo-remainder lc(b)^(deg a - deg b + 1) * a mod b, over an integral domain."""
    da, db = a.degree(), b.degree()
    lb = b.lc()
    r = list(a.coeffs)
    bc = b.coeffs
    zero = a.ring.dom.zero
    for i in range(da - db, -1, -1):
        c = r[i + db]
        r = [x * lb for x in r]
        if c:
            for j in range(db + 1):
                r[i + j] = r[i + j] - c * bc[j]
        r[i + db] = zero
    return Poly(r[:db], a.ring)


def subresultant_resultant(a, b):
    """Sylvester resultant lc(a)^deg(b) * prod b(alpha) via the subresultant PRS."""
    if a.ring is not b.ring:
        raise TypeError("resultant operands must share a ring")
    dom = a.ring.dom
    if not a or not b:
        return dom.zero
    da, db = a.degree(), b.degree()
    if da == 0:
        return a.lc() ** db
    if db == 0:
        return b.lc() ** da
    s = 1
    A, B = a, b
    if da < db:
        A, B = B, A
        if da % 2 and db % 2:
            s = -s
    g = dom.one
    h = dom.one
    while True:
        dA, dB = A.degree(), B.degree()
        delta = dA - dB
        if dA % 2 and dB % 2:
            s = -s
        R = _prem(A, B)
        A = B
        if not R:
            return dom.zero
        B = R.quo_scalar(g * h ** delta)
        g = A.lc()
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = dom.exquo(g ** delta, h ** (delta - 1))
        if B.degree() == 0:
            dA = A.degree()
            lb = B.lc()
            if dA == 1:
                res = lb
            else:
                res = dom.exquo(lb ** dA, h ** (dA - 1))
            return res * s if s == 1 else -res


def resultant(a, b, elim_var=None):
    """Resultant with the convention Res(a, b) = lc(b)^deg(a) * prod a(beta).

    ``a`` and ``b`` are polynomials in ``elim_var`` whose coefficients may be
    polynomials in further variables.

    >>> R = PolyRing(PolyRing(QQ, 'z'), 'x'); x, z = R.gen, R.convert(R.dom.gen)
    >>> resultant(x**3 + x, 1 - z*(3*x**2 + 1))
    Poly(-4*z^3 + 3*z + 1, z)
    """
    if elim_var is not None and a.ring.var != elim_var:
        raise ValueError(f"polynomials are in {a.ring.var}, not {elim_var}")
    r = subresultant_resultant(a, b)
    if (a.degree() * b.degree()) % 2:
        r = -r
    return r


def integer_roots(p):
    """Set of integer roots of a nonzero rational polynomial."""
    if not p:
        raise DomainError("integer roots of zero")
    if p.ring.dom is not QQ:
        raise TypeError("integer_roots needs rational coefficients")
    from .factor import factor_rationals

    roots = set()
    c = p.coeffs
    i = 0
    while i < len(c) and not c[i]:
        i += 1
    if i:
        roots.add(0)
        p = Poly(c[i:], p.ring)
    if p.degree() <= 0:
        return roots
    if p.degree() == 1:
        r = qq(Fraction(-p.coeffs[0]) / p.coeffs[1])
        if type(r) is int:
            roots.add(r)
        return roots
    for f, _ in factor_rationals(squarefree_part(p)).factors:
        if f.degree() == 1:
            r = qq(-Fraction(f.coeffs[0]))
            if type(r) is int:
                roots.add(r)
    return roots
