"""Exact linear algebra over QQ and over rational function fields.

Kernels over ``QQ(x)`` are computed by fraction-free Gauss-Jordan
elimination on integer polynomial rows (Bareiss-style exact divisions), so
no rational-function gcds are taken during elimination.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as igcd

from .arith.core import QQ, FracField, Poly, RatFun, poly_gcd, qq

__all__ = ["Matrix", "nullspace", "solve", "rank"]


class Matrix:
    """Dense matrix over ``QQ`` or a :class:`FracField`."""

    __slots__ = ("rows", "nrows", "ncols", "field")

    def __init__(self, rows, field=None, ncols=None):
        rows = [list(r) for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("matrix rows must have equal length")
        if field is None:
            field = _infer_field(rows)
        conv = field.convert
        self.rows = [[conv(x) for x in r] for r in rows]
        self.nrows = len(rows)
        self.ncols = ncols
        self.field = field

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def mul_vector(self, v):
        zero = self.field.zero
        out = []
        for r in self.rows:
            s = zero
            for a, b in zip(r, v):
                if a and b:
                    s = s + a * b
            out.append(s)
        return out

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols} over {self.field!r})"


def _infer_field(rows):
    for r in rows:
        for x in r:
            if type(x) is RatFun:
                return x.field
            if type(x) is Poly:
                return FracField(x.ring)
    return QQ


# ---------------------------------------------------------------- QQ entries

def _qq_rref(rows, ncols):
    rows = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        pr = rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], pr)]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def _int_normalize(v):
    den = 1
    for x in v:
        x = Fraction(x)
        den = den * x.denominator // igcd(den, x.denominator)
    w = [int(Fraction(x) * den) for x in v]
    g = 0
    for x in w:
        g = igcd(g, x)
    if g == 0:
        return w
    last = next(x for x in reversed(w) if x)
    if last < 0:
        g = -g
    return [x // g for x in w]


# ------------------------------------------------------ polynomial entries

def _clear_row(row, ring):
    """Multiply a row of RatFuns by the lcm of denominators; integer primitive polys out."""
    den = ring.one
    for x in row:
        if x.den.degree() > 0 and (den % x.den):
            den = den * x.den.exquo(poly_gcd(den, x.den))
    polys = [x.num * den.exquo(x.den) if x else ring.zero for x in row]
    cden = 1
    for p in polys:
        for c in p.coeffs:
            if type(c) is not int:
                cden = cden * c.denominator // igcd(cden, c.denominator)
    polys = [Poly([int(c * cden) for c in p.coeffs], ring) for p in polys]
    g = 0
    for p in polys:
        for c in p.coeffs:
            g = igcd(g, c)
            if g == 1:
                break
    if g > 1:
        polys = [Poly([c // g for c in p.coeffs], ring) for p in polys]
    return polys


def _size(p):
    return (p.degree(), max((abs(c) for c in p.coeffs), default=0).bit_length())


def _bareiss_gj(M, ncols):
    """Fraction-free Gauss-Jordan in place; returns (rank rows, pivot cols, last pivot)."""
    ring = M[0][0].ring if M and M[0] else None
    prev = None
    pivots = []
    r = 0
    nrows = len(M)
    for c in range(ncols):
        best = None
        for i in range(r, nrows):
            x = M[i][c]
            if x:
                s = _size(x)
                if best is None or s < best[0]:
                    best = (s, i)
        if best is None:
            continue
        p = best[1]
        M[r], M[p] = M[p], M[r]
        piv = M[r][c]
        prow = M[r]
        for i in range(nrows):
            if i == r:
                continue
            row = M[i]
            f = row[c]
            if prev is None:
                if f:
                    row[:] = [piv * a - f * b if b else piv * a for a, b in zip(row, prow)]
                else:
                    row[:] = [piv * a for a in row]
                continue
            new = []
            for a, b in zip(row, prow):
                t = piv * a
                if f and b:
                    t = t - f * b
                new.append(t.exquo(prev) if t else t)
            row[:] = new
        prev = piv
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return M[:r], pivots, prev


def _primitive_poly_vector(v, ring):
    g = ring.zero
    for p in v:
        if p:
            g = poly_gcd(g, p)
            if g.degree() == 0:
                break
    if g.degree() > 0:
        v = [p.exquo(g) for p in v]
    cden = 1
    for p in v:
        for c in p.coeffs:
            if type(c) is not int:
                cden = cden * c.denominator // igcd(cden, c.denominator)
    v = [Poly([int(c * cden) for c in p.coeffs], ring) for p in v]
    ig = 0
    for p in v:
        for c in p.coeffs:
            ig = igcd(ig, c)
    last = next(p for p in reversed(v) if p)
    if last.lc() < 0:
        ig = -ig
    if ig != 1:
        v = [Poly([c // ig for c in p.coeffs], ring) for p in v]
    return v


def _general_rref(rows, ncols, field):
    rows = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = field.inv(rows[r][c])
        rows[r] = [x * inv if x else x for x in rows[r]]
        pr = rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b if b else a for a, b in zip(rows[i], pr)]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def _is_qq_function_field(field):
    return isinstance(field, FracField) and field.ring.dom is QQ


# ------------------------------------------------------------------ public

def nullspace(m):
    """Basis of the right kernel, each vector primitive and sign-normalized.

    Vectors over ``QQ`` come back as integer lists; over ``QQ(x)`` as lists of
    integer-coefficient polynomials.  The last nonzero entry of every vector
    has a positive leading coefficient.
    """
    if m.ncols == 0:
        return []
    free_basis = []
    if m.field is QQ:
        R, piv = _qq_rref(m.rows, m.ncols) if m.nrows else ([], [])
        for f in range(m.ncols):
            if f in piv:
                continue
            v = [Fraction(0)] * m.ncols
            v[f] = Fraction(1)
            for i, pc in enumerate(piv):
                v[pc] = -R[i][f]
            free_basis.append(_int_normalize(v))
        return free_basis
    field = m.field
    if _is_qq_function_field(field):
        ring = field.ring
        if m.nrows == 0:
            R, piv, d = [], [], ring.one
        else:
            M = [_clear_row(r, ring) for r in m.rows]
            M = [r for r in M if any(r)]
            if M:
                R, piv, d = _bareiss_gj(M, m.ncols)
            else:
                R, piv, d = [], [], ring.one
        for f in range(m.ncols):
            if f in piv:
                continue
            v = [ring.zero] * m.ncols
            v[f] = d if d is not None else ring.one
            for i, pc in enumerate(piv):
                v[pc] = -R[i][f]
            free_basis.append(_primitive_poly_vector(v, ring))
        return free_basis
    # nested fields: plain Gauss-Jordan with field arithmetic
    R, piv = _general_rref(m.rows, m.ncols, field) if m.nrows else ([], [])
    ring = field.ring
    for f in range(m.ncols):
        if f in piv:
            continue
        v = [field.zero] * m.ncols
        v[f] = field.one
        for i, pc in enumerate(piv):
            v[pc] = -R[i][f]
        den = ring.one
        for x in v:
            if x.den.degree() > 0:
                den = den * x.den.exquo(poly_gcd(den, x.den))
        polys = [x.num * den.exquo(x.den) for x in v]
        g = ring.zero
        for p in polys:
            if p:
                g = poly_gcd(g, p)
        polys = [p.exquo(g) for p in polys]
        last = next(p for p in reversed(polys) if p)
        lc = last.lc()
        polys = [p.scale(field.ring.dom.inv(lc)) for p in polys]
        free_basis.append(polys)
    return free_basis


def rank(m):
    if m.field is QQ:
        return len(_qq_rref(m.rows, m.ncols)[1]) if m.nrows else 0
    return m.ncols - len(nullspace(m))


def solve(m, rhs):
    """One exact solution of m*v = rhs (field elements), or None if inconsistent."""
    field = m.field
    if len(rhs) != m.nrows:
        raise ValueError("right-hand side length does not match the matrix")
    aug = Matrix([list(r) + [-field.convert(b)] for r, b in zip(m.rows, rhs)], field, m.ncols + 1)
    n = m.ncols
    for v in nullspace(aug):
        if v[n]:
            last = v[n]
            if field is QQ:
                return [qq(Fraction(x, last)) for x in v[:n]]
            return [RatFun(x, last, field) for x in v[:n]] if _is_qq_function_field(field) \
                else [field.convert(x) / field.convert(last) for x in v[:n]]
    return None
