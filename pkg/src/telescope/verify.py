"""Independent checks of telescoping identities and recurrences, plus exact summation."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .arith.core import QQ, DomainError, FracField, Poly, PolyRing, RatFun, poly_lcm, specialize
from .arith.algorithms import integer_roots
from .expr import Node, evaluate, free_symbols, parse, format_value

__all__ = [
    "VerificationReport", "check_telescoper_sum", "check_telescoper_integral",
    "check_recurrence_on_values", "eval_sum", "support_range", "certificate_poles",
    "boundary_terms",
]


@dataclass
class VerificationReport:
    ok: bool
    residual: object
    warnings: list = dc_field(default_factory=list)

    def __bool__(self):
        return self.ok


def _lin_roots_in(den, n, k, field):
    """Integer-linear forms k = a*n + c (a in -3..3) at which den vanishes identically."""
    K = den.ring.dom
    out = []
    if den.degree() < 1:
        return out
    if K is QQ:
        return [f"{k} = {r}" for r in sorted(integer_roots(den))]
    if tuple(K.vars) != (n,):
        # symbolic parameters: integer pole lines are not well defined
        return out
    # specialize n at two points, match integer roots along lines
    pts = []
    for N in (1009, 2003):
        try:
            pts.append((N, set(integer_roots(specialize(den, {n: N})))))
        except (ZeroDivisionError, DomainError):
            return out
    (N1, r1), (N2, r2) = pts
    ring = den.ring
    for root in sorted(r1):
        for a in range(-3, 4):
            c = root - a * N1
            if a * N2 + c not in r2:
                continue
            form = K.convert(K.gen) * a + c if K.var == n else None
            if form is None:
                continue
            if not den(form):
                txt = format_value(form)
                s = f"{k} = {txt}"
                if s not in out:
                    out.append(s)
    return out


def certificate_poles(R, n="n", k="k"):
    """Readable list of integer-linear k-poles of a certificate."""
    try:
        return _lin_roots_in(R.den, n, k, R.field)
    except (DomainError, TypeError):
        return []


def _n_singularities(R, n):
    """Integer n at which some coefficient of the certificate (monic den in k) blows up."""
    K = R.field.ring.dom
    if K is QQ or tuple(K.vars) != (n,):
        return []
    L = K.ring.one
    for c in list(R.num.coeffs) + list(R.den.coeffs):
        if c.den.degree() > 0:
            L = poly_lcm(L, c.den)
    return sorted(integer_roots(L)) if L.degree() > 0 else []


def check_telescoper_sum(P, R, t):
    """sum_i p_i prod_{j<i} u(n+j,k) == R(n,k+1) v(n,k) - R(n,k)."""
    F = t.field
    lhs = F.zero
    prod = F.one
    for i, c in enumerate(P.coeffs):
        if i:
            prod = prod * t.u.shift_var(t.n, i - 1)
        if c:
            lhs = lhs + prod * F.convert(c)
    R = F.convert(R)
    rhs = R.shift(1) * t.v - R
    residual = lhs - rhs
    warnings = []
    poles = certificate_poles(R, t.n, t.k)
    if poles:
        warnings.append("certificate has poles at " + ", ".join(poles)
                        + "; summing the relation over a range containing them needs care")
    sing = _n_singularities(R, t.n)
    if sing:
        warnings.append("certificate undefined at " + ", ".join(f"{t.n} = {v}" for v in sing)
                        + "; the summed recurrence may fail there")
    return VerificationReport(not residual, residual, warnings)


def check_telescoper_integral(P, g, f, y="y"):
    """P.f - D_y g == 0 for f, g in QQ(x)(y) and P in D_x over QQ(x)."""
    F = f.field
    x = P.var
    acc = F.zero
    cur = f
    for i, c in enumerate(P.coeffs):
        if i:
            cur = cur.diff_var(x)
        if c:
            acc = acc + cur * F.convert(c)
    residual = acc - F.convert(g).diff_var(y)
    return VerificationReport(not residual, residual, [])


def check_recurrence_on_values(P, values, offset=0):
    """sum_i p_i(n) values[n - offset + i] == 0 for every n the values cover."""
    polys = P.cleared()
    r = len(polys) - 1
    if len(values) <= r:
        raise DomainError(f"need more than {r} values to check an order-{r} recurrence")
    bad = []
    for j in range(len(values) - r):
        nn = j + offset
        s = Fraction(0)
        for i, p in enumerate(polys):
            s += Fraction(p(nn)) * Fraction(values[j + i])
        if s:
            bad.append((nn, s))
    residual = bad[0][1] if bad else 0
    warnings = [f"fails at n = {nn}" for nn, _ in bad]
    return VerificationReport(not bad, residual, warnings)


# --------------------------------------------------------------- summation

def _linear_coeffs(node, var_vals, k):
    """(alpha, beta) with node = alpha + beta*k when the other symbols take var_vals."""
    env0 = dict(var_vals, **{k: 0})
    env1 = dict(var_vals, **{k: 1})
    env2 = dict(var_vals, **{k: 2})
    a0, a1, a2 = (evaluate(node, e) for e in (env0, env1, env2))
    if a2 - 2 * a1 + a0:
        return None
    return Fraction(a0), Fraction(a1 - a0)


def support_range(e, n_value, n="n", k="k", env=None):
    """Finite k-range outside which some binomial factor vanishes (None if unbounded).

    Uses the finite-support convention binomial(a, b) = 0 unless 0 <= b <= a for integer a.
    """
    node = parse(e) if isinstance(e, str) else e
    vals = dict(env or {})
    vals[n] = n_value
    lo, hi = None, None
    stack = [node]
    while stack:
        x = stack.pop()
        stack.extend(x.args)
        if x.op != "call" or x.value != "binomial":
            continue
        top, bot = x.args
        ct = _linear_coeffs(top, vals, k)
        cb = _linear_coeffs(bot, vals, k)
        if ct is None or cb is None:
            continue
        # nonzero needs bot >= 0 and, when top is a nonnegative integer, bot <= top
        a0, a1 = cb
        if a1 > 0:
            b = -a0 / a1
            lo = b if lo is None else max(lo, b)
        elif a1 < 0:
            b = -a0 / a1
            hi = b if hi is None else min(hi, b)
        t0, t1 = ct
        d0, d1 = t0 - a0, t1 - a1
        # finite support: an integer top needs top - bot >= 0
        if t0.denominator == 1 and t1.denominator == 1 and d1:
            b = -d0 / d1
            if d1 > 0:
                lo = b if lo is None else max(lo, b)
            else:
                hi = b if hi is None else min(hi, b)
    if lo is None or hi is None:
        return None
    from math import ceil, floor
    return ceil(lo), floor(hi)


def eval_sum(e, n_value, k_range="auto", n="n", k="k", env=None):
    """Exact sum over k of the term at n = n_value.

    ``k_range`` is ``"auto"`` (support of the binomial factors) or an inclusive pair.
    """
    node = parse(e) if isinstance(e, str) else e
    if k_range == "auto":
        rng = support_range(node, n_value, n, k, env)
        if rng is None:
            raise DomainError("cannot detect a finite summation range; give one explicitly")
    else:
        rng = k_range
    lo, hi = rng
    base = dict(env or {})
    base[n] = n_value
    total = Fraction(0)
    for kk in range(lo, hi + 1):
        base[k] = kk
        try:
            total += Fraction(evaluate(node, base))
        except ZeroDivisionError as exc:
            raise DomainError(f"term undefined at {k} = {kk}: {exc}") from None
    return QQ.convert(total)


def boundary_terms(R, e, n_value, lo, hi, n="n", k="k", env=None):
    """Values of g = R f at k = hi + 1 and k = lo; their difference is what telescoping leaves.

    Terms at poles of R are evaluated as limits along the term (returned as None if undefined).
    """
    node = parse(e) if isinstance(e, str) else e
    out = []
    for kk in (hi + 1, lo):
        vals = dict(env or {})
        vals[n] = n_value
        vals[k] = kk
        try:
            fv = evaluate(node, vals)
            rv = R.evaluate(vals) if fv else 0
            out.append(QQ.convert(Fraction(rv) * Fraction(fv)))
        except ZeroDivisionError:
            out.append(None)
    return tuple(out)
