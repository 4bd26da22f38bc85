"""Univariate Ore operators in a shift ``S`` or a derivation ``D`` over a rational function field."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .arith.core import QQ, DomainError, FracField, Poly, PolyRing, RatFun, poly_gcd, poly_lcm
from .linalg import Matrix, nullspace

__all__ = [
    "OreOp", "ore_mul", "ore_divmod", "ore_reduce", "lclm", "annihilator_sum",
    "annihilator_product", "ode_to_rec", "AnnihilatedSeries", "unroll",
    "SingularPointError", "parse_operator",
]


class SingularPointError(ArithmeticError):
    """A recurrence cannot be continued at an index because its leading coefficient vanishes."""

    def __init__(self, index):
        self.index = index
        super().__init__(f"leading coefficient vanishes: value at index {index} is not determined")


class OreOp:
    """sum c_i G^i with G = S (x -> x+1) or D (d/dx), coefficients in ``field``."""

    __slots__ = ("coeffs", "gen", "field")

    def __init__(self, coeffs, gen, field):
        if gen not in ("S", "D"):
            raise ValueError("generator must be 'S' or 'D'")
        if not isinstance(field, FracField):
            raise TypeError("operators need a rational function field")
        cs = [field.convert(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)
        self.gen = gen
        self.field = field

    @property
    def var(self):
        return self.field.var

    @property
    def order(self):
        return len(self.coeffs) - 1

    def lc(self):
        return self.coeffs[-1]

    def __bool__(self):
        return bool(self.coeffs)

    def _check(self, other):
        if not isinstance(other, OreOp):
            return OreOp([other], self.gen, self.field)
        if other.gen != self.gen or other.field is not self.field:
            raise TypeError("operators with different generators or fields")
        return other

    def __eq__(self, other):
        return isinstance(other, OreOp) and other.gen == self.gen and other.field is self.field \
            and other.coeffs == self.coeffs

    def __hash__(self):
        return hash((self.gen, self.coeffs))

    def __add__(self, other):
        o = self._check(other)
        n = max(len(self.coeffs), len(o.coeffs))
        z = self.field.zero
        a = list(self.coeffs) + [z] * (n - len(self.coeffs))
        b = list(o.coeffs) + [z] * (n - len(o.coeffs))
        return OreOp([x + y for x, y in zip(a, b)], self.gen, self.field)

    __radd__ = __add__

    def __neg__(self):
        return OreOp([-c for c in self.coeffs], self.gen, self.field)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        return ore_mul(self, self._check(other))

    def __rmul__(self, other):
        return ore_mul(self._check(other), self)

    def scale_left(self, c):
        c = self.field.convert(c)
        return OreOp([c * x for x in self.coeffs], self.gen, self.field)

    def generator_power(self, i):
        return OreOp([self.field.zero] * i + [self.field.one], self.gen, self.field)

    def apply(self, f):
        """Apply to an element f of a field containing ``var``."""
        acc = None
        cur = f
        for i, c in enumerate(self.coeffs):
            if i:
                cur = cur.shift_var(self.var, 1) if self.gen == "S" else cur.diff_var(self.var)
            if c:
                term = cur * f.field.convert(c) if hasattr(f, "field") else cur * c
                acc = term if acc is None else acc + term
        return acc if acc is not None else f * 0

    def cleared(self):
        """Polynomial coefficients: left multiple by a rational factor, primitive, positive lc."""
        if not self.coeffs:
            return []
        ring = self.field.ring
        L = ring.one
        for c in self.coeffs:
            if c.den.degree() > 0:
                L = poly_lcm(L, c.den)
        polys = [c.num * L.exquo(c.den) for c in self.coeffs]
        return _normalize_polys(polys)

    def normalized(self):
        """Equal-up-to-left-rational-factor representative with polynomial coefficients."""
        return OreOp([self.field.convert(p) for p in self.cleared()], self.gen, self.field)

    def same_up_to_scalar(self, other):
        return self.normalized() == other.normalized()

    def __repr__(self):
        return f"OreOp({self})"

    def __str__(self):
        return format_operator(self)


def _normalize_polys(polys):
    """Remove polynomial gcd and integer content (QQ base) and make the last lc positive."""
    from .arith.core import poly_gcd
    ring = polys[0].ring
    g = ring.zero
    for p in polys:
        if p:
            g = poly_gcd(g, p)
    if g.degree() > 0:
        polys = [p.exquo(g) for p in polys]
    lead = next(p for p in reversed(polys) if p)
    if ring.dom is QQ:
        from math import gcd, lcm
        den = 1
        for p in polys:
            for c in p.coeffs:
                den = lcm(den, Fraction(c).denominator)
        polys = [p.scale(den) for p in polys]
        cont = 0
        for p in polys:
            for c in p.coeffs:
                cont = gcd(cont, int(c))
        lead = next(p for p in reversed(polys) if p)
        if lead.lc() < 0:
            cont = -cont
        return [Poly([QQ.div(c, cont) for c in p.coeffs], ring) for p in polys]
    inv = ring.dom.inv(lead.lc())
    return [p.scale(inv) for p in polys]


def format_operator(op):
    from .expr import format_value
    if not op.coeffs:
        return "0"
    parts = []
    for i, c in enumerate(op.coeffs):
        if not c:
            continue
        cs = format_value(c)
        g = "" if i == 0 else (op.gen if i == 1 else f"{op.gen}^{i}")
        neg = cs.startswith("-") and not _has_top_level_op(cs[1:])
        if neg:
            cs = cs[1:]
        if _has_top_level_op(cs):
            cs = f"({cs})"
        if not g:
            body = cs
        elif cs == "1":
            body = g
        else:
            body = f"{cs}*{g}"
        parts.append((neg, body))
    out = ""
    for j, (neg, body) in enumerate(parts):
        if j == 0:
            out = ("-" if neg else "") + body
        else:
            out += (" - " if neg else " + ") + body
    return out


def _has_top_level_op(s):
    depth = 0
    for i, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif depth == 0 and i > 0 and ch in "+-/":
            return True
    return False


# ------------------------------------------------------------------ arithmetic

def _commute(gen, i, b, var):
    """G^i * b as a list of coefficients (b on the left of the powers of G)."""
    if gen == "S":
        return {i: b.shift_var(var, i)}
    out = {}
    d = b
    for l in range(i + 1):
        if l:
            d = d.diff_var(var)
        if d:
            out[i - l] = d * comb(i, l)
    return out


def ore_mul(a, b):
    """Product a*b.

    >>> K = FracField(PolyRing(QQ, 'x'))
    >>> D = OreOp([0, 1], 'D', K)
    >>> print(D * OreOp([K.gen], 'D', K))
    1 + x*D
    """
    if a.gen != b.gen or a.field is not b.field:
        raise TypeError("operators with different generators or fields")
    field = a.field
    res = {}
    for i, ai in enumerate(a.coeffs):
        if not ai:
            continue
        for j, bj in enumerate(b.coeffs):
            if not bj:
                continue
            for l, c in _commute(a.gen, i, bj, a.var).items():
                t = ai * c
                res[l + j] = res[l + j] + t if (l + j) in res else t
    n = max(res) + 1 if res else 0
    return OreOp([res.get(i, field.zero) for i in range(n)], a.gen, field)


def ore_divmod(a, b):
    """(q, r) with a = q*b + r and ord r < ord b (right division)."""
    if not b:
        raise DomainError("division by the zero operator")
    field = a.field
    q = OreOp([], a.gen, field)
    r = a
    lb = b.lc()
    while r and r.order >= b.order:
        m = r.order - b.order
        lead = lb.shift_var(a.var, m) if a.gen == "S" else lb
        c = r.lc() / lead
        t = OreOp([field.zero] * m + [c], a.gen, field)
        q = q + t
        r = r - t * b
    return q, r


def ore_reduce(a, b):
    return ore_divmod(a, b)[1]


def _rem_vector(op, b):
    r = ore_reduce(op, b)
    return list(r.coeffs) + [op.field.zero] * (b.order - len(r.coeffs))


def _first_kernel(columns, field):
    """Smallest u with a dependence among columns[0..u]; returns the coefficient vector."""
    for u in range(len(columns)):
        rows = [[col[i] for col in columns[: u + 1]] for i in range(len(columns[0]))]
        if not rows:
            return [field.one] + [field.zero] * u
        ker = nullspace(Matrix(rows, field, u + 1))
        for v in ker:
            if v[u]:
                return [field.convert(x) for x in v]
    return None


def lclm(a, b):
    """Least common left multiple, monic up to clearing (minimal order)."""
    if not a or not b:
        raise DomainError("lclm of the zero operator")
    if a.gen != b.gen or a.field is not b.field:
        raise TypeError("operators with different generators or fields")
    field = a.field
    cols = []
    for i in range(a.order + b.order + 1):
        g = a.generator_power(i)
        cols.append(_rem_vector(g, a) + _rem_vector(g, b))
    if a.order + b.order == 0:
        return OreOp([field.one], a.gen, field)
    v = _first_kernel(cols, field)
    return OreOp(v, a.gen, field).normalized()


def annihilator_sum(a, b):
    """Operator killing f + g whenever a.f = 0 and b.g = 0."""
    return lclm(a, b)


def annihilator_product(a, b):
    """Operator killing f*g whenever a.f = 0 and b.g = 0 (tensor-basis ansatz)."""
    if a.gen != b.gen or a.field is not b.field:
        raise TypeError("operators with different generators or fields")
    field = a.field
    ra, rb = a.order, b.order
    if ra == 0 or rb == 0:
        return OreOp([field.one], a.gen, field)
    N = ra * rb
    fa = [_rem_vector(a.generator_power(i), a) for i in range(N + 1)]
    fb = [_rem_vector(b.generator_power(i), b) for i in range(N + 1)]
    cols = []
    for i in range(N + 1):
        vec = [field.zero] * N
        if a.gen == "S":
            pairs = [(1, fa[i], fb[i])]
        else:
            pairs = [(comb(i, l), fa[l], fb[i - l]) for l in range(i + 1)]
        for w, va, vb in pairs:
            for p in range(ra):
                if not va[p]:
                    continue
                for q in range(rb):
                    if vb[q]:
                        vec[p * rb + q] = vec[p * rb + q] + va[p] * vb[q] * w
        cols.append(vec)
    v = _first_kernel(cols, field)
    return OreOp(v, a.gen, field).normalized()


# ---------------------------------------------------------- ODE -> recurrence

def ode_to_rec(L, nvar="n"):
    """Recurrence for Taylor coefficients of solutions of L (a D-operator).

    Returns ``(op, valid_from)``: op in S over QQ(nvar), holding for n >= valid_from.

    >>> K = FracField(PolyRing(QQ, 'x'))
    >>> op, d = ode_to_rec(OreOp([-1, 1], 'D', K))
    >>> print(op, d)
    -1 + (n + 1)*S 0
    """
    if L.gen != "D":
        raise TypeError("ode_to_rec expects a differential operator")
    if L.order < 1:
        raise DomainError("an order-0 operator is an algebraic relation, not a differential equation")
    if L.field.ring.dom is not QQ:
        raise DomainError("ode_to_rec needs rational coefficients")
    polys = L.cleared()
    d = max(p.degree() for p in polys)
    Kn = FracField(PolyRing(QQ, nvar))
    n = Kn.gen
    res = {}
    for i, p in enumerate(polys):
        for j, c in enumerate(p.coeffs):
            if not c:
                continue
            poch = Kn.one
            for t in range(i):
                poch = poch * (n + (d - j + 1 + t))
            e = i - j + d
            term = poch * c
            res[e] = res[e] + term if e in res else term
    lo = min(e for e, c in res.items() if c)
    coeffs = [res.get(e, Kn.zero).shift_var(nvar, -lo) for e in range(lo, max(res) + 1)]
    valid = max(d - lo, 0)
    # dividing out a common factor g(n) loses the relation's meaning at integer roots of g
    common = Kn.ring.zero
    for c in coeffs:
        if c:
            common = poly_gcd(common, c.num)
    if common.degree() > 0:
        from .arith.algorithms import integer_roots
        roots = [r for r in integer_roots(common) if r >= valid]
        if roots:
            valid = max(roots) + 1
    op = OreOp(coeffs, "S", Kn).normalized()
    return op, valid


# ------------------------------------------------------------------- unroll

@dataclass(frozen=True)
class AnnihilatedSeries:
    """A sequence (or Taylor series) pinned down by an operator and initial values."""

    annihilator: OreOp
    initial_values: tuple
    offset: int = 0


def unroll(a, count):
    """First ``count`` terms of the sequence, starting at index ``a.offset``.

    >>> K = FracField(PolyRing(QQ, 'n'))
    >>> n = K.gen
    >>> unroll(AnnihilatedSeries(OreOp([-1, n + 1], 'S', K), (1,)), 5)
    [1, 1, Fraction(1, 2), Fraction(1, 6), Fraction(1, 24)]
    """
    op = a.annihilator
    if op.gen == "D":
        op, _ = ode_to_rec(op)
    polys = op.cleared()
    r = len(polys) - 1
    vals = [QQ.convert(x) for x in a.initial_values]
    if r < 0:
        raise DomainError("cannot unroll the zero operator")
    ring = polys[0].ring
    while len(vals) < count:
        m = len(vals) + a.offset
        nn = m - r
        if len(vals) < r:
            raise DomainError(f"need at least {r} initial values")
        lead = polys[r](nn)
        if not lead:
            raise SingularPointError(m)
        s = 0
        for i in range(r):
            c = polys[i](nn)
            if c:
                s += Fraction(c) * vals[len(vals) - r + i]
        vals.append(QQ.convert(-s / Fraction(lead)))
    return vals[:count]


# ----------------------------------------------------------------- parsing

def parse_operator(text, gen, field):
    """Parse ``c0 + c1*G + ...`` (coefficients written to the left of G)."""
    from .expr import parse, to_field, free_symbols
    node = parse(text)
    syms = free_symbols(node)
    allowed = set(field.vars) | {gen}
    bad = syms - allowed
    if bad:
        raise ValueError(f"unexpected symbol(s) {sorted(bad)} in operator")
    Fg = FracField(PolyRing(field, gen))
    val = to_field(node, Fg)
    if val.den.degree() != 0:
        raise ValueError("operator must be polynomial in the generator")
    inv = field.inv(val.den.lc())
    return OreOp([c * inv for c in val.num.coeffs], gen, field)
