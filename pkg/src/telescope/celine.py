"""Sister Celine's method: k-free recurrences by undetermined coefficients."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .arith.core import FracField, Poly, poly_lcm
from .hyper import HyperTerm, compatibility_check, compile_term
from .linalg import Matrix, nullspace
from .ore import OreOp
from .arith.core import DomainError

__all__ = ["KFreeRecurrence", "kfree_recurrence", "celine_sum_recurrence",
           "celine_sum_recurrences", "WegschaiderRelation", "wegschaider_lift"]


@dataclass(frozen=True)
class KFreeRecurrence:
    """sum a_{i,j}(n) f(n+i, k+j) = 0 with coefficients free of k."""

    coefficients: dict
    r: int
    s: int
    field: FracField

    def column_sums(self, m=0):
        """Coefficient of S_n^i in the Delta_k^m part: sum_j binom(j, m) a_{i,j}."""
        K = self.field
        out = [K.zero] * (self.r + 1)
        for (i, j), a in self.coefficients.items():
            w = comb(j, m)
            if w and a:
                out[i] = out[i] + K.convert(a) * w
        return out

    def check(self, t):
        """Exact test of the relation after division by f(n,k)."""
        F = t.field
        acc = F.zero
        for (i, j), a in self.coefficients.items():
            if a:
                acc = acc + _shift_ratio(t, i, j) * F.convert(a)
        return not acc


def _shift_ratio(t, i, j):
    """f(n+i, k+j) / f(n, k)."""
    F = t.field
    out = F.one
    for i1 in range(i):
        out = out * t.u.shift_var(t.n, i1)
    vi = t.v.shift_var(t.n, i) if i else t.v
    for j1 in range(j):
        out = out * vi.shift_var(t.k, j1)
    return out


def _as_term(t):
    return compile_term(t) if not isinstance(t, HyperTerm) else t


def kfree_recurrence(t, r, s):
    """All k-free recurrences supported on shifts 0..r in n and 0..s in k.

    One recurrence per kernel basis vector; ``[]`` when the kernel is trivial.
    """
    t = _as_term(t)
    if not compatibility_check(t):
        raise DomainError("shift quotients are not compatible")
    F = t.field
    K = F.ring.dom
    cells = [(i, j) for i in range(r + 1) for j in range(s + 1)]
    ratios = [_shift_ratio(t, i, j) for i, j in cells]
    L = F.ring.one
    for q in ratios:
        L = poly_lcm(L, q.den)
    polys = [q.num * L.exquo(q.den) for q in ratios]
    nrow = max(p.degree() for p in polys) + 1
    rows = [[p.coeff(m) for p in polys] for m in range(nrow)]
    out = []
    for vec in nullspace(Matrix(rows, K, len(cells))):
        last = K.convert(next(a for a in reversed(vec) if a))
        coeffs = {c: K.convert(a) / last for c, a in zip(cells, vec) if a}
        out.append(KFreeRecurrence(coeffs, r, s, K))
    return out


@dataclass(frozen=True)
class WegschaiderRelation:
    """sum_{m,i} Delta_k^m c_{m,i}(n,k) S_n^i annihilating f, coefficients right of Delta."""

    terms: dict
    multiplier: int
    field: FracField

    def delta_free(self, K):
        order = max((i for (m, i), c in self.terms.items() if m == 0 and c), default=-1)
        cs = [K.zero] * (order + 1)
        for (m, i), c in self.terms.items():
            if m == 0 and c:
                cs[i] = K.convert(c.num.constant_value()) if c.is_constant() else None
        if any(c is None for c in cs):
            raise ArithmeticError("Delta-free part still depends on k")
        return cs


def _to_delta_form(rec, F):
    terms = {}
    for (i, j), a in rec.coefficients.items():
        for m in range(j + 1):
            w = comb(j, m)
            key = (m, i)
            terms[key] = terms.get(key, F.zero) + F.convert(a) * w
    return {key: c for key, c in terms.items() if c}


def wegschaider_lift(rec, F=None):
    """Multiply by k from the left until the Delta_k-free part is nonzero.

    Uses k Delta^m = Delta^m k - m Delta^(m-1).  Returns a
    :class:`WegschaiderRelation`; when the Delta-free part of ``rec`` is
    already nonzero the relation is returned unchanged.
    """
    K = rec.field
    if F is None:
        from .arith.core import PolyRing
        F = FracField(PolyRing(K, "k"))
    terms = _to_delta_form(rec, F)
    kk = F.gen
    mult = 0
    while terms and not any(c for (m, _), c in terms.items() if m == 0):
        new = {}
        for (m, i), c in terms.items():
            a = (m, i)
            new[a] = new.get(a, F.zero) + kk * c
            if m:
                b = (m - 1, i)
                new[b] = new.get(b, F.zero) - c * m
        terms = {key: c for key, c in new.items() if c}
        mult += 1
    return WegschaiderRelation(terms, mult, F)


def _sum_operator(rec, K):
    cs = rec.column_sums(0)
    if any(cs):
        return OreOp(cs, "S", K)
    lifted = wegschaider_lift(rec)
    if not lifted.terms:
        return None
    return OreOp(lifted.delta_free(K), "S", K)


def celine_sum_recurrences(t, r, s):
    """Sum recurrences, one per kernel basis vector (natural boundaries assumed)."""
    t = _as_term(t)
    K = t.coeff_field
    out = []
    for rec in kfree_recurrence(t, r, s):
        op = _sum_operator(rec, K)
        if op is not None:
            out.append(OreOp([K.convert(p) for p in _clear_keep_sign(op)], "S", K))
    return out


def _clear_keep_sign(op):
    """Numerator of sum c_i S^i over the lcm of the (monic) coefficient denominators.

    The kernel vector has been scaled so its last entry is 1; only a positive
    integer content is removed afterwards.
    """
    from math import gcd
    from fractions import Fraction
    ring = op.field.ring
    L = ring.one
    for c in op.coeffs:
        if c.den.degree() > 0:
            L = poly_lcm(L, c.den)
    polys = [c.num * L.exquo(c.den) for c in op.coeffs]
    from math import lcm
    den = 1
    for p in polys:
        for a in p.coeffs:
            den = lcm(den, Fraction(a).denominator)
    cont = 0
    for p in polys:
        for a in p.coeffs:
            cont = gcd(cont, int(Fraction(a) * den))
    return [Poly([int(Fraction(a) * den) // cont for a in p.coeffs], ring) for p in polys]


def celine_sum_recurrence(t, r, s):
    """First sum recurrence from :func:`celine_sum_recurrences`, or None."""
    recs = celine_sum_recurrences(t, r, s)
    return recs[0] if recs else None
