"""Telescopers for bivariate rational functions, differential case.

Functions live in QQ(x)(y): the outer variable y is integrated, x is the
parameter of the telescoper P(x, D_x) with P.f = D_y g.
"""

from __future__ import annotations

from dataclasses import dataclass

from .arith.core import QQ, DomainError, FracField, Poly, PolyRing, RatFun, poly_lcm
from .integrate import hermite_reduce
from .linalg import Matrix, nullspace
from .ore import OreOp

__all__ = [
    "bivariate_field", "ReductionRow", "DiffTelescopingResult", "hermite_rows",
    "hermite_telescoper", "az_telescoper", "residue_annihilator", "diagonal_annihilator",
    "substitute_xy",
]


def bivariate_field(x="x", y="y"):
    return FracField(PolyRing(FracField(PolyRing(QQ, x)), y))


@dataclass(frozen=True)
class ReductionRow:
    """D_x^i f = D_y g + h with h proper and squarefree in y."""

    i: int
    g: RatFun
    h: RatFun


@dataclass
class DiffTelescopingResult:
    telescoper: OreOp
    certificate: RatFun
    verified: bool = False

    @property
    def order(self):
        return self.telescoper.order


def _xvar(f):
    return f.field.ring.dom.var


def hermite_rows(f, count):
    """The first ``count`` reduction rows, computed incrementally."""
    x = _xvar(f)
    g, h = hermite_reduce(f)
    rows = [ReductionRow(0, g, h)]
    for i in range(1, count):
        g2, h2 = hermite_reduce(rows[-1].h.diff_var(x))
        rows.append(ReductionRow(i, rows[-1].g.diff_var(x) + g2, h2))
    return rows


def _dependence(hs, K):
    """Kernel vector (c_0..c_r) of the h's with c_r != 0, or None."""
    ring = hs[0].field.ring
    L = ring.one
    for h in hs:
        if h:
            L = poly_lcm(L, h.den)
    polys = [h.num * L.exquo(h.den) if h else ring.zero for h in hs]
    nrow = max([p.degree() for p in polys] + [0]) + 1
    rows = [[p.coeff(m) for p in polys] for m in range(nrow)]
    for v in nullspace(Matrix(rows, K, len(hs))):
        if v[-1]:
            return [K.convert(c) for c in v]
    return None


def _normalize(cs, K):
    """Clear to primitive polynomials, last leading coefficient positive; returns (polys, scale)."""
    op = OreOp(cs, "D", K)
    cleared = op.cleared()
    scale = K.convert(cleared[-1]) / cs[-1]
    return [K.convert(p) for p in cleared], scale


def _verify(res, f):
    from .verify import check_telescoper_integral
    rep = check_telescoper_integral(res.telescoper, res.certificate, f, f.field.var)
    if not rep.ok:
        raise ArithmeticError("internal error: telescoper failed verification")
    res.verified = True
    return res


def hermite_telescoper(f):
    """Minimal-order telescoper by reduction: first dependence among h_0, h_1, ...

    The order never exceeds deg_y of the squarefree part of den(f).
    """
    if not f:
        raise DomainError("telescoper of zero")
    F = f.field
    K = F.ring.dom
    x = _xvar(f)
    g, h = hermite_reduce(f)
    rows = [ReductionRow(0, g, h)]
    while True:
        cs = _dependence([r.h for r in rows], K)
        if cs is not None:
            break
        last = rows[-1]
        g2, h2 = hermite_reduce(last.h.diff_var(x))
        rows.append(ReductionRow(len(rows), last.g.diff_var(x) + g2, h2))
    cs, scale = _normalize(cs, K)
    cert = F.zero
    for c, r in zip(cs, rows):
        if c:
            cert = cert + r.g * F.convert(c)
    return _verify(DiffTelescopingResult(OreOp(cs, "D", K), cert), f)


def _poly_over_ring(p, K):
    """Multiply a polynomial in y over QQ(x) by a common denominator: coefficients in QQ[x]."""
    L = K.ring.one
    for c in p.coeffs:
        if c.den.degree() > 0:
            L = poly_lcm(L, c.den)
    return p.scale(K.convert(L))


def az_telescoper(f, max_order=None):
    """Telescoper from the linear ansatz sum c_i D_x^i f = D_y(A/q^r), first solvable r."""
    F = f.field
    K = F.ring.dom
    x = _xvar(f)
    p, q = f.num, f.den
    if p.degree() >= q.degree():
        raise DomainError("az_telescoper needs a proper rational function in y")
    q = _poly_over_ring(q, K)
    p = p.scale(q.lc())
    dq, dp = q.degree(), p.degree()
    qx = Poly([c.diff_var(x) for c in q.coeffs], q.ring)
    dy_q = q.diff()
    if max_order is None:
        max_order = max(dq, 1) + 1
    # numerators p_i with D_x^i f = p_i / q^(i+1)
    ps = [p]
    for r in range(max_order + 1):
        while len(ps) <= r:
            i = len(ps) - 1
            pi = ps[-1]
            dpi = Poly([c.diff_var(x) for c in pi.coeffs], pi.ring)
            ps.append(dpi * q - pi * qx * (i + 1))
        s = max((r - 1) * dq + dp + 1, -1)
        ring = q.ring
        cols = [ps[i] * q ** (r - i) for i in range(r + 1)]
        for j in range(s + 1):
            A = ring.gen ** j
            cols.append(-(A.diff() * q - A * dy_q * r))
        nrow = max(c.degree() for c in cols) + 1
        rows = [[c.coeff(m) for c in cols] for m in range(nrow)]
        for v in nullspace(Matrix(rows, K, len(cols))):
            cs = [K.convert(c) for c in v[: r + 1]]
            if not any(cs):
                continue
            top = max(i for i, c in enumerate(cs) if c)
            cs = cs[: top + 1]
            norm, scale = _normalize(cs, K)
            A = Poly([K.convert(c) * scale for c in v[r + 1:]], ring)
            cert = RatFun(A, q ** r, F) if r else F.convert(A)
            return _verify(DiffTelescopingResult(OreOp(norm, "D", K), cert), f)
    return None


def residue_annihilator(f):
    """Operator killing res_y of every series expansion of f."""
    return hermite_telescoper(f).telescoper


def _eval_in(c, X):
    """c(X) for c in QQ(x) or QQ[x] and X in the bivariate field."""
    if type(c) is RatFun:
        return _eval_in(c.num, X) / _eval_in(c.den, X)
    acc = X.field.zero
    for a in reversed(c.coeffs):
        acc = acc * X + a
    return acc


def substitute_xy(f, X, Y):
    """f(X, Y) for f in QQ(x)(y) and X, Y in the same field."""
    F = f.field

    def ev(p):
        acc = F.zero
        for c in reversed(p.coeffs):
            acc = acc * Y + _eval_in(c, X)
        return acc

    den = ev(f.den)
    if not den:
        raise DomainError("substitution makes the denominator vanish")
    return ev(f.num) / den


def diagonal_annihilator(f):
    """Annihilator of the diagonal, via res_y y^(-1) f(y, x/y)."""
    F = f.field
    y = F.gen
    x = F.convert(F.ring.dom.gen)
    G = substitute_xy(f, y, x / y) / y
    return residue_annihilator(G)
