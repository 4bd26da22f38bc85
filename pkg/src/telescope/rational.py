"""Calculus, partial fractions and dispersion of univariate rational functions."""

from __future__ import annotations

from dataclasses import dataclass

from .arith.core import QQ, DomainError, FracField, Poly, PolyRing, RatFun, poly_gcd, poly_xgcd
from .arith.algorithms import integer_roots, resultant, squarefree_decomposition, squarefree_part
from .arith.core import specialize, _random_point
from .arith.factor import factor_rationals

__all__ = [
    "as_ratfun", "der", "shift", "PartialFractions", "partial_fractions",
    "shift_resonances", "dispersion", "poly_part",
]


def as_ratfun(f):
    """Promote a polynomial to its fraction field; pass rational functions through."""
    if type(f) is RatFun:
        return f
    if type(f) is Poly:
        return FracField(f.ring).convert(f)
    raise TypeError(f"expected Poly or RatFun, got {type(f).__name__}")


def der(f):
    """Derivative with respect to the outermost variable, reduced."""
    return as_ratfun(f).diff()


def shift(f, a):
    """f(x + a) for an integer (or coefficient-field) shift a."""
    return as_ratfun(f).shift(a)


def poly_part(f):
    """Split f into (polynomial part, proper numerator)."""
    q, r = f.num.divmod(f.den)
    return q, r


@dataclass(frozen=True)
class PartialFractions:
    poly_part: Poly
    terms: tuple  # (numerator, base, exponent)

    def recombine(self):
        field = FracField(self.poly_part.ring)
        total = field.convert(self.poly_part)
        for num, base, e in self.terms:
            total = total + RatFun(num, base ** e, field)
        return total


def _crt_split(a, mods):
    """Write a/prod(mods) as sum a_i/mods[i] with deg a_i < deg mods[i] (mods coprime)."""
    total = mods[0].ring.one
    for m in mods:
        total = total * m
    out = []
    for m in mods:
        cof = total.exquo(m)
        _, s, _ = poly_xgcd(cof, m)
        out.append((a * s) % m)
    return out


def partial_fractions(f, mode="squarefree"):
    """Partial fraction decomposition in ``squarefree`` or ``irreducible`` mode."""
    f = as_ratfun(f)
    q, r = poly_part(f)
    if not r:
        return PartialFractions(q, ())
    if mode == "squarefree":
        fac = squarefree_decomposition(f.den)
        groups = [(b, e) for b, e in fac.factors]
    elif mode == "irreducible":
        if f.ring.dom is not QQ:
            raise DomainError("irreducible partial fractions need rational coefficients")
        groups = [(b, e) for b, e in factor_rationals(f.den).factors]
    else:
        raise ValueError(f"unknown mode {mode!r}")
    mods = [b ** e for b, e in groups]
    nums = _crt_split(r, mods)
    terms = []
    for (b, e), a in zip(groups, nums):
        if not a:
            continue
        if mode == "squarefree":
            terms.append((a, b, e))
            continue
        # base-b expansion a = sum c_l b^l gives c_l / b^(e-l)
        l = 0
        while a:
            a, c = a.divmod(b)
            if c:
                terms.append((c, b, e - l))
            l += 1
    return PartialFractions(q, tuple(terms))


def _shifted_in(b, ring_j):
    """b(x + j) as a polynomial in x over QQ[j]."""
    RX = PolyRing(ring_j, b.ring.var + "_")
    x = RX.gen
    arg = x + RX.convert(ring_j.gen)
    res = RX.zero
    for c in reversed(b.coeffs):
        res = res * arg + RX.convert(c)
    return res, RX


def _qq_resonances(a, b):
    # common roots only depend on the squarefree parts
    a, b = squarefree_part(a), squarefree_part(b)
    Rj = PolyRing(QQ, "j")
    bj, RX = _shifted_in(b, Rj)
    aj = Poly([Rj.convert(c) for c in a.coeffs], RX)
    res = resultant(aj, bj)
    if not res:
        raise DomainError("resultant vanishes identically")
    return integer_roots(res)


def shift_resonances(a, b):
    """Sorted integers j for which gcd(a(x), b(x + j)) is nonconstant.

    Over QQ the candidates are the integer roots of Res_x(a(x), b(x+j)).  Over a
    rational function field the resultant is taken after specializing the
    parameters at a random point, and each candidate is then confirmed by an
    exact gcd.
    """
    if a.degree() < 1 or b.degree() < 1:
        return []
    if a.ring.dom is QQ:
        return sorted(_qq_resonances(a, b))
    if not isinstance(a.ring.dom, FracField):
        raise TypeError("unsupported coefficient domain for shift resonances")
    dom = a.ring.dom
    cands = None
    for _ in range(5):
        env = _random_point(dom.vars)
        try:
            sa = specialize(a, env)
            sb = specialize(b, env)
        except ZeroDivisionError:
            continue
        if sa.degree() != a.degree() or sb.degree() != b.degree():
            continue
        cands = _qq_resonances(sa, sb)
        break
    if cands is None:
        raise DomainError("could not find a regular specialization point")
    out = []
    for j in sorted(cands):
        if poly_gcd(a, b.shift(j)).degree() > 0:
            out.append(j)
    return out


def dispersion(p):
    """Largest i >= 0 with gcd(p(x), p(x+i)) nonconstant.

    >>> x = PolyRing(QQ, 'x').gen
    >>> dispersion(x*(x + 3)*(x**2 - 2))
    3
    """
    if p.degree() < 1:
        raise DomainError("dispersion of a constant polynomial")
    return max(j for j in shift_resonances(p, p) if j >= 0)
