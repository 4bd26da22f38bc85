"""Hypergeometric terms, Gosper's algorithm and Zeilberger telescopers in the shift case."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .arith.core import QQ, DomainError, FracField, Poly, PolyRing, RatFun, poly_gcd, poly_lcm
from .expr import (Node, UnsupportedExpression, free_symbols, make_tower, parse, rationalize,
                   shifted, structure, _const_value, _is_int_const)
from .linalg import Matrix, nullspace, solve
from .ore import OreOp
from .rational import shift_resonances

__all__ = [
    "HyperTerm", "compile_term", "compatibility_check", "GosperForm", "gosper_form",
    "gosper_degree_bound", "gosper", "gosper_parameterized", "TelescopingResult",
    "zeilberger", "az_order_bound", "wz_pair", "hyper_field",
]


@dataclass
class HyperTerm:
    """f(n, k) known through u = f(n+1,k)/f(n,k) and v = f(n,k+1)/f(n,k)."""

    u: RatFun
    v: RatFun
    n: str = "n"
    k: str = "k"
    source: Node | None = None

    @property
    def field(self):
        return self.v.field

    @property
    def coeff_field(self):
        """The field of coefficients in k, i.e. QQ(params)(n)."""
        return self.v.field.ring.dom


def hyper_field(params, n="n", k="k"):
    """The tower QQ(params)(n)(k)."""
    return make_tower(list(params) + [n, k])[-1]


def _as_node(e):
    return parse(e) if isinstance(e, str) else e


def _field_for(node, n, k):
    params = sorted(free_symbols(node) - {n, k})
    return hyper_field(params, n, k)


def _quotient(node, var, n, k, field):
    hs = structure(shifted(node, var, 1), n, k, field).mul(structure(node, n, k, field), -1)
    return rationalize(hs, n, k, field)


def compile_term(e, n="n", k="k"):
    """Build the shift-quotient pair of a product-form expression.

    >>> t = compile_term("binomial(n,k)")
    >>> print(t.v)
    (-k + n)/(k + 1)
    """
    node = _as_node(e)
    field = _field_for(node, n, k)
    u = _quotient(node, n, n, k, field)
    v = _quotient(node, k, n, k, field)
    if not u or not v:
        raise UnsupportedExpression("term vanishes identically under a shift")
    return HyperTerm(u, v, n, k, node)


compile = compile_term


def compatibility_check(t):
    """u(n,k+1) v(n,k) == u(n,k) v(n+1,k) as rational functions."""
    lhs = t.u.shift_var(t.k, 1) * t.v
    rhs = t.u * t.v.shift_var(t.n, 1)
    return lhs == rhs


# ------------------------------------------------------------------ Gosper

@dataclass(frozen=True)
class GosperForm:
    """f = p(x+1)/p(x) * q(x)/r(x) with gcd(q(x), r(x+i)) = 1 for i >= 1."""

    p: Poly
    q: Poly
    r: Poly

    def __iter__(self):
        return iter((self.p, self.q, self.r))


def gosper_form(f):
    """Gosper form of a nonzero rational function in its outer variable.

    >>> x = PolyRing(QQ, 'k').gen
    >>> print(*gosper_form((x + 2)/x))
    k^2 + k 1 1
    """
    if not f:
        raise DomainError("Gosper form of zero")
    if type(f) is Poly:
        f = FracField(f.ring).convert(f)
    q, r = f.num, f.den
    ring = q.ring
    p = ring.one
    for j in shift_resonances(q, r):
        if j < 1:
            continue
        g = poly_gcd(q, r.shift(j))
        while g.degree() > 0:
            q = q.exquo(g)
            r = r.exquo(g.shift(-j))
            for i in range(1, j + 1):
                p = p * g.shift(-i)
            g = poly_gcd(q, r.shift(j))
    return GosperForm(p, q, r)


def _bound(q, rm1, degc):
    """Degree bound for polynomial z with q z(x+1) - rm1 z(x) = c, deg c = degc."""
    dom = q.ring.dom
    s = q + rm1
    t = q - rm1
    if degc < 0:
        degc = -1
    if t.degree() >= s.degree():
        d = degc - t.degree()
        return d if d >= 0 else None
    l = s.degree()
    cands = [degc - l + 1]
    A = s.coeff(l)
    B = t.coeff(l - 1) if l >= 1 else dom.zero
    val = _const_value(dom.div(B * (-2), A)) if B else 0
    if val is not None and _is_int_const(val):
        cands.append(int(val))
    d = max(cands)
    return d if d >= 0 else None


def gosper_degree_bound(gf, deg_c=None):
    """Bound on deg z in q(x) z(x+1) - r(x-1) z(x) = p(x); None when no degree is possible."""
    p, q, r = gf
    return _bound(q, r.shift(-1), p.degree() if deg_c is None else deg_c)


def _solve_poly_eq(a, b, c, d):
    """Polynomial z of degree <= d with a z(x+1) - b z(x) = c, or None."""
    ring = a.ring
    dom = ring.dom
    if d is None:
        return ring.zero if not c else None
    basis = [ring.gen ** i for i in range(d + 1)]
    cols = [a * e.shift(1) - b * e for e in basis]
    nrow = max([col.degree() for col in cols] + [c.degree()]) + 1
    rows = [[col.coeff(i) for col in cols] for i in range(nrow)]
    sol = solve(Matrix(rows, dom, d + 1), [c.coeff(i) for i in range(nrow)])
    if sol is None:
        return None
    return Poly([dom.convert(s) for s in sol], ring)


def gosper(t):
    """Rational y with rho*y(x+1) - y(x) = 1 for the shift quotient rho, else None.

    ``t`` is a quotient (RatFun) or a HyperTerm (its k-quotient is used).
    Then H = Delta(y H) for every term H with that quotient.
    """
    rho = t.v if isinstance(t, HyperTerm) else t
    if type(rho) is Poly:
        rho = FracField(rho.ring).convert(rho)
    field = rho.field
    p, q, r = gosper_form(rho)
    rm1 = r.shift(-1)
    z = _solve_poly_eq(q, rm1, p, gosper_degree_bound((p, q, r)))
    if z is None:
        return None
    return RatFun(rm1 * z, p, field)


# -------------------------------------------------- parameterized Gosper

def gosper_parameterized(v, rhos):
    """Find (p_i, R) with sum p_i rho_i f = R(x+1) v f(x+1)/... in the telescoping sense.

    ``v`` is the shift quotient f(x+1)/f(x) and ``rhos`` rational multipliers.
    Returns ``(coeffs, R)`` with sum_i p_i rho_i = R(x+1) v - R, p not all zero,
    or None.  The p_i live in the coefficient field of ``v``.
    """
    field = v.field
    ring = field.ring
    dom = ring.dom
    D = ring.one
    for rho in rhos:
        D = poly_lcm(D, rho.den)
    Ns = [rho.num * D.exquo(rho.den) for rho in rhos]
    w = v * RatFun(D, D.shift(1), field)
    c1, a, b = gosper_form(w)
    bm1 = b.shift(-1)
    degc = c1.degree() + max(N.degree() for N in Ns)
    d = _bound(a, bm1, degc)
    nz = 0 if d is None else d + 1
    basis = [ring.gen ** i for i in range(nz)]
    cols = [a * e.shift(1) - bm1 * e for e in basis] + [-(N * c1) for N in Ns]
    nrow = max(col.degree() for col in cols) + 1
    rows = [[col.coeff(i) for col in cols] for i in range(max(nrow, 1))]
    ker = nullspace(Matrix(rows, dom, len(cols)))
    for vec in ker:
        ps = [dom.convert(x) for x in vec[nz:]]
        if not any(ps):
            continue
        z = Poly([dom.convert(x) for x in vec[:nz]], ring)
        R = RatFun(bm1 * z, c1 * D, field)
        return ps, R
    return None


# ---------------------------------------------------------------- Zeilberger

@dataclass
class TelescopingResult:
    """sum_i p_i(n) f(n+i,k) = g(n,k+1) - g(n,k) with g = certificate * f."""

    telescoper: OreOp
    certificate: RatFun
    order: int
    warnings: list = dc_field(default_factory=list)
    verified: bool = False


def _normalize_pair(ps, R, K):
    """Clear the telescoper to primitive polynomial coefficients; scale R alike."""
    ring = K.ring
    L = ring.one
    for p in ps:
        if p.den.degree() > 0:
            L = poly_lcm(L, p.den)
    polys = [p.num * L.exquo(p.den) for p in ps]
    op = OreOp(polys, "S", K)
    cleared = op.cleared()
    lead_ratio = K.convert(cleared[-1]) / K.convert(polys[-1]) * K.convert(L)
    return OreOp(cleared, "S", K), R * R.field.convert(lead_ratio)


def _zeilberger_rhos(t, r):
    rhos = [t.field.one]
    prod = t.field.one
    for j in range(r):
        prod = prod * t.u.shift_var(t.n, j)
        rhos.append(prod)
    return rhos


def zeilberger_at_order(t, r):
    """Telescoper of exactly order <= r from the order-r ansatz, or None."""
    res = gosper_parameterized(t.v, _zeilberger_rhos(t, r))
    if res is None:
        return None
    ps, R = res
    return _normalize_pair(ps, R, t.coeff_field)


def zeilberger(t, r_max=6, verify=True):
    """Minimal-order telescoper with certificate, searching orders 0..r_max.

    >>> res = zeilberger(compile_term("binomial(n,k)"))
    >>> print(res.telescoper, res.order)
    -2 + S 1
    """
    if isinstance(t, (str, Node)):
        t = compile_term(t)
    if not compatibility_check(t):
        raise DomainError("shift quotients are not compatible")
    for r in range(r_max + 1):
        res = zeilberger_at_order(t, r)
        if res is None:
            continue
        op, R = res
        out = TelescopingResult(op, R, op.order)
        if verify:
            from .verify import check_telescoper_sum
            rep = check_telescoper_sum(op, R, t)
            if not rep.ok:
                raise ArithmeticError("internal error: telescoper failed verification")
            out.verified = True
            out.warnings = list(rep.warnings)
        return out
    return None


# ------------------------------------------------------ order bound and WZ

def az_order_bound(e, n="n", k="k"):
    """Order bound max(A + D, B + C) from the factorial factors of a proper term."""
    node = _as_node(e)
    field = _field_for(node, n, k)
    hs = structure(node, n, k, field)
    if hs.rat.den.degree() > 0:
        raise UnsupportedExpression("prefactor is not polynomial in the summation variable")
    from .expr import _split_const
    net = {}
    for L, ex in hs.merged_gammas():
        key_c, _ = _split_const(L.c)
        key = (L.a, L.b, key_c)
        net[key] = net.get(key, 0) + ex
    A = B = C = Dd = 0
    for (a, b, _), ex in net.items():
        if not b or not ex:
            continue
        w = abs(b) * abs(ex)
        if ex > 0 and b > 0:
            A += w
        elif ex > 0:
            B += w
        elif b > 0:
            C += w
        else:
            Dd += w
    return max(A + Dd, B + C)


def wz_pair(summand, rhs, n="n", k="k"):
    """R with f(n+1,k) - f(n,k) = g(n,k+1) - g(n,k), f = summand/rhs, g = R f; else None."""
    s = _as_node(summand)
    r = _as_node(rhs)
    node = Node("div", (s, r))
    t = compile_term(node, n, k)
    w = t.u - 1
    if not w:
        return t.field.zero
    y = gosper(w.shift(1) / w * t.v)
    if y is None:
        return None
    return y * w
