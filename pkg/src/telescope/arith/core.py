"""Coefficient domains, dense univariate polynomials and reduced fractions.

Domains form a tower.  ``QQ`` holds rationals (Python ``int`` or
``fractions.Fraction``).  ``PolyRing(dom, var)`` holds :class:`Poly` objects
with coefficients in ``dom``, and ``FracField(ring)`` holds :class:`RatFun`
objects whose numerator and denominator live in ``ring``.  Nesting the two
gives fields such as Q(n)(k), written ``FracField(PolyRing(Q(n), 'k'))``.

Every object is immutable.  Arithmetic between an element and a coefficient
of a lower level coerces automatically; arithmetic between unrelated
domains raises ``TypeError``.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import gcd as igcd, isqrt

__all__ = [
    "QQ", "PolyRing", "FracField", "AlgebraicField", "AlgNum", "Poly", "RatFun",
    "DomainError", "qq", "poly_gcd", "poly_xgcd", "poly_lcm",
]


class DomainError(ValueError):
    """Raised when an input lies outside an operation's domain."""


def qq(x):
    """Canonical rational: ``int`` when integral, otherwise ``Fraction``."""
    if type(x) is int:
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, int):
        return int(x)
    raise TypeError(f"not a rational number: {x!r}")


# --------------------------------------------------------------------------
# rationals

class _Rationals:
    is_field = True
    zero = 0
    one = 1
    vars = ()

    def __repr__(self):
        return "QQ"

    def __reduce__(self):
        return (_get_qq, ())

    def convert(self, x):
        if type(x) is int:
            return x
        if isinstance(x, Fraction):
            return x.numerator if x.denominator == 1 else x
        if isinstance(x, bool):
            return int(x)
        if isinstance(x, int):
            return int(x)
        raise TypeError(f"cannot coerce {x!r} into QQ")

    def div(self, a, b):
        if not b:
            raise ZeroDivisionError("division by zero in QQ")
        r = Fraction(a) / b if not isinstance(a, Fraction) else a / b
        return r.numerator if r.denominator == 1 else r

    exquo = div

    def inv(self, a):
        return self.div(1, a)

    def contains(self, x):
        return isinstance(x, (int, Fraction))

    def evaluate(self, a, env):
        return a

    def shift_var(self, a, var, s):
        return a

    def diff_var(self, a, var):
        return 0

    def to_str(self, a):
        return str(a)


QQ = _Rationals()


def _get_qq():
    return QQ


# --------------------------------------------------------------------------
# rings and fields (interned so identity comparison suffices)

_RINGS = {}
_FIELDS = {}


class PolyRing:
    """Univariate polynomial ring ``dom[var]``."""

    is_field = False

    def __new__(cls, dom, var):
        key = (id(dom), var)
        hit = _RINGS.get(key)
        if hit is not None:
            return hit
        if var in dom.vars:
            raise ValueError(f"variable {var!r} already used by {dom!r}")
        self = object.__new__(cls)
        self.dom = dom
        self.var = var
        self.vars = dom.vars + (var,)
        self.zero = Poly((), self)
        self.one = Poly((dom.one,), self)
        self.gen = Poly((dom.zero, dom.one), self)
        _RINGS[key] = self
        return self

    def __reduce__(self):
        return (PolyRing, (self.dom, self.var))

    def __repr__(self):
        return f"{self.dom!r}[{self.var}]"

    def __call__(self, coeffs):
        conv = self.dom.convert
        return Poly([conv(c) for c in coeffs], self)

    def convert(self, x):
        if type(x) is Poly and x.ring is self:
            return x
        return Poly((self.dom.convert(x),), self)

    def contains(self, x):
        return type(x) is Poly and x.ring is self

    def div(self, a, b):
        return a.exquo(b)

    exquo = div

    def field(self):
        return FracField(self)

    def evaluate(self, a, env):
        x = env[self.var]
        dom = self.dom
        r = 0
        for c in reversed(a.coeffs):
            r = r * x + dom.evaluate(c, env)
        return r

    def shift_var(self, a, var, s):
        if var == self.var:
            return a.shift(s)
        if var not in self.dom.vars:
            return a
        return Poly([self.dom.shift_var(c, var, s) for c in a.coeffs], self)

    def diff_var(self, a, var):
        if var == self.var:
            return a.diff()
        if var not in self.dom.vars:
            return self.zero
        return Poly([self.dom.diff_var(c, var) for c in a.coeffs], self)

    def to_str(self, a):
        return str(a)


class FracField:
    """Field of fractions of a :class:`PolyRing` whose coefficients form a field."""

    is_field = True

    def __new__(cls, ring):
        hit = _FIELDS.get(id(ring))
        if hit is not None:
            return hit
        if not ring.dom.is_field:
            raise TypeError("fraction fields need polynomial rings over a field")
        self = object.__new__(cls)
        self.ring = ring
        self.var = ring.var
        self.vars = ring.vars
        self.zero = RatFun(ring.zero, ring.one, self, _reduced=True)
        self.one = RatFun(ring.one, ring.one, self, _reduced=True)
        self.gen = RatFun(ring.gen, ring.one, self, _reduced=True)
        _FIELDS[id(ring)] = self
        return self

    def __reduce__(self):
        return (FracField, (self.ring,))

    def __repr__(self):
        base = self.ring.dom
        inner = "QQ" if base is QQ else repr(base)
        return f"{inner}({self.var})"

    def convert(self, x):
        if type(x) is RatFun and x.field is self:
            return x
        return RatFun(self.ring.convert(x), self.ring.one, self, _reduced=True)

    def contains(self, x):
        return type(x) is RatFun and x.field is self

    def div(self, a, b):
        return a / b

    exquo = div

    def inv(self, a):
        return self.one / a

    def __call__(self, num, den=None):
        n = self.ring.convert(num)
        d = self.ring.one if den is None else self.ring.convert(den)
        return RatFun(n, d, self)

    def evaluate(self, a, env):
        d = self.ring.evaluate(a.den, env)
        if not d:
            raise ZeroDivisionError("denominator vanishes at evaluation point")
        n = self.ring.evaluate(a.num, env)
        if isinstance(n, (int, Fraction)) and isinstance(d, (int, Fraction)):
            return qq(Fraction(n) / d)
        return n / d

    def shift_var(self, a, var, s):
        if var not in self.vars:
            return a
        return RatFun(self.ring.shift_var(a.num, var, s), self.ring.shift_var(a.den, var, s), self)

    def diff_var(self, a, var):
        if var not in self.vars:
            return self.zero
        r = self.ring
        dn = r.diff_var(a.num, var)
        dd = r.diff_var(a.den, var)
        return RatFun(dn * a.den - a.num * dd, a.den * a.den, self)

    def to_str(self, a):
        return str(a)


class AlgebraicField:
    """The field ``QQ[z]/(u)`` for an irreducible polynomial ``u``."""

    is_field = True

    def __init__(self, modulus):
        if modulus.ring.dom is not QQ or modulus.degree() < 1:
            raise DomainError("modulus must be a nonconstant rational polynomial")
        self.modulus = modulus.monic()
        self.ring = modulus.ring
        self.vars = ()
        self.zero = AlgNum(self.ring.zero, self)
        self.one = AlgNum(self.ring.one, self)
        self.gen = AlgNum(self.ring.gen % self.modulus, self)

    def __repr__(self):
        return f"QQ[{self.ring.var}]/({self.modulus})"

    def convert(self, x):
        if type(x) is AlgNum and x.field is self:
            return x
        if type(x) is Poly and x.ring is self.ring:
            return AlgNum(x % self.modulus, self)
        return AlgNum(self.ring.convert(x), self)

    def contains(self, x):
        return type(x) is AlgNum and x.field is self

    def inv(self, a):
        return a.inverse()

    def div(self, a, b):
        return self.convert(a) * self.convert(b).inverse()

    exquo = div

    def trace(self, a):
        """Trace of an element down to QQ."""
        sums = _power_sums(self.modulus)
        return qq(sum(Fraction(c) * sums[i] for i, c in enumerate(a.poly.coeffs)))

    def to_str(self, a):
        return str(a)


def _power_sums(u):
    """Power sums p_0..p_{d-1} of the roots of monic u (Newton identities)."""
    d = u.degree()
    e = [u.coeffs[d - i] for i in range(d + 1)]  # e[i] = coefficient of x^(d-i)
    p = [Fraction(d)]
    for m in range(1, d):
        s = -m * Fraction(e[m])
        for i in range(1, m):
            s -= e[i] * p[m - i]
        p.append(s)
    return p


class AlgNum:
    """Element of :class:`AlgebraicField`, kept reduced modulo the minimal polynomial."""

    __slots__ = ("poly", "field")

    def __init__(self, poly, field):
        self.poly = poly
        self.field = field

    def _co(self, other):
        if type(other) is AlgNum and other.field is self.field:
            return other
        return self.field.convert(other)

    def __bool__(self):
        return bool(self.poly)

    def __eq__(self, other):
        try:
            return self.poly == self._co(other).poly
        except TypeError:
            return False

    def __hash__(self):
        return hash(self.poly)

    def __neg__(self):
        return AlgNum(-self.poly, self.field)

    def __add__(self, other):
        try:
            o = self._co(other)
        except TypeError:
            return NotImplemented
        return AlgNum(self.poly + o.poly, self.field)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            o = self._co(other)
        except TypeError:
            return NotImplemented
        return AlgNum(self.poly - o.poly, self.field)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        try:
            o = self._co(other)
        except TypeError:
            return NotImplemented
        return AlgNum((self.poly * o.poly) % self.field.modulus, self.field)

    __rmul__ = __mul__

    def inverse(self):
        g, s, _ = poly_xgcd(self.poly, self.field.modulus)
        if g.degree() != 0:
            raise ZeroDivisionError("element not invertible modulo the minimal polynomial")
        return AlgNum(s % self.field.modulus, self.field)

    def __truediv__(self, other):
        return self * self._co(other).inverse()

    def __repr__(self):
        return f"AlgNum({self.poly})"

    def __str__(self):
        return str(self.poly)


# --------------------------------------------------------------------------
# polynomials

def _strip(c):
    n = len(c)
    while n and not c[n - 1]:
        n -= 1
    return tuple(c[:n]) if n != len(c) else tuple(c)


class Poly:
    """Dense univariate polynomial, coefficients stored lowest degree first."""

    __slots__ = ("coeffs", "ring")

    def __init__(self, coeffs, ring):
        self.coeffs = _strip(coeffs)
        self.ring = ring

    # -- basic queries
    @property
    def var(self):
        return self.ring.var

    @property
    def dom(self):
        return self.ring.dom

    def degree(self):
        """Degree, with ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    def lc(self):
        return self.coeffs[-1] if self.coeffs else self.ring.dom.zero

    def tc(self):
        return self.coeffs[0] if self.coeffs else self.ring.dom.zero

    def coeff(self, i):
        c = self.coeffs
        return c[i] if 0 <= i < len(c) else self.ring.dom.zero

    def is_constant(self):
        return len(self.coeffs) <= 1

    def constant_value(self):
        return self.coeffs[0] if self.coeffs else self.ring.dom.zero

    def __bool__(self):
        return bool(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other):
        if type(other) is Poly:
            return other.ring is self.ring and other.coeffs == self.coeffs
        if type(other) is RatFun:
            return other == self
        try:
            o = self.ring.convert(other)
        except TypeError:
            return False
        return o.coeffs == self.coeffs

    def __hash__(self):
        if len(self.coeffs) <= 1:
            return hash(self.constant_value())
        return hash((self.ring.var, self.coeffs))

    # -- coercion
    def _co(self, other):
        if type(other) is Poly and other.ring is self.ring:
            return other
        return self.ring.convert(other)

    # -- arithmetic
    def __neg__(self):
        return Poly([-c for c in self.coeffs], self.ring)

    def __pos__(self):
        return self

    def __add__(self, other):
        try:
            o = self._co(other)
        except TypeError:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        res = list(a)
        for i, c in enumerate(b):
            res[i] = res[i] + c
        return Poly(res, self.ring)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            o = self._co(other)
        except TypeError:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        res = list(a) + [self.ring.dom.zero] * max(0, len(b) - len(a))
        for i, c in enumerate(b):
            res[i] = res[i] - c
        return Poly(res, self.ring)

    def __rsub__(self, other):
        try:
            o = self._co(other)
        except TypeError:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if type(other) is Poly and other.ring is self.ring:
            return Poly(_mul_lists(self.coeffs, other.coeffs), self.ring)
        try:
            c = self.ring.dom.convert(other)
        except TypeError:
            try:
                o = self.ring.convert(other)
            except TypeError:
                return NotImplemented
            return Poly(_mul_lists(self.coeffs, o.coeffs), self.ring)
        if not c:
            return self.ring.zero
        return Poly([x * c for x in self.coeffs], self.ring)

    __rmul__ = __mul__

    def __pow__(self, e):
        if not isinstance(e, int) or e < 0:
            raise ValueError("polynomial powers need a nonnegative integer exponent")
        result, base = self.ring.one, self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def scale(self, c):
        """Multiply by a coefficient-domain scalar."""
        return Poly([x * c for x in self.coeffs], self.ring)

    def quo_scalar(self, c):
        div = self.ring.dom.div
        return Poly([div(x, c) for x in self.coeffs], self.ring)

    def divmod(self, other):
        """Euclidean division; coefficient domain must be a field."""
        o = self._co(other)
        if not o:
            raise ZeroDivisionError("polynomial division by zero")
        dom = self.ring.dom
        db = len(o.coeffs) - 1
        r = list(self.coeffs)
        if len(r) - 1 < db:
            return self.ring.zero, self
        inv = dom.inv(o.coeffs[-1])
        bc = o.coeffs
        q = [dom.zero] * (len(r) - db)
        for i in range(len(r) - 1 - db, -1, -1):
            c = r[i + db]
            if c:
                c = c * inv
                q[i] = c
                for j in range(db):
                    r[i + j] = r[i + j] - c * bc[j]
            r[i + db] = dom.zero
        return Poly(q, self.ring), Poly(r[:db], self.ring)

    __divmod__ = divmod

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def exquo(self, other):
        """Exact division; works over rings with exact coefficient division."""
        o = self._co(other)
        if not o:
            raise ZeroDivisionError("polynomial division by zero")
        dom = self.ring.dom
        db = len(o.coeffs) - 1
        r = list(self.coeffs)
        if not r:
            return self.ring.zero
        if len(r) - 1 < db:
            raise DomainError("inexact polynomial division")
        lb = o.coeffs[-1]
        bc = o.coeffs
        q = [dom.zero] * (len(r) - db)
        for i in range(len(r) - 1 - db, -1, -1):
            c = r[i + db]
            if c:
                c = dom.exquo(c, lb)
                q[i] = c
                for j in range(db):
                    r[i + j] = r[i + j] - c * bc[j]
        if any(r[:db]):
            raise DomainError("inexact polynomial division")
        return Poly(q, self.ring)

    def __truediv__(self, other):
        if type(other) is Poly and other.ring is self.ring:
            return RatFun(self, other, FracField(self.ring))
        if type(other) is RatFun:
            return NotImplemented
        try:
            c = self.ring.dom.convert(other)
        except TypeError:
            return NotImplemented
        if self.ring.dom.is_field:
            return self.scale(self.ring.dom.inv(c))
        return self.quo_scalar(c)

    def __rtruediv__(self, other):
        o = self.ring.convert(other)
        return RatFun(o, self, FracField(self.ring))

    # -- calculus and substitution
    def diff(self):
        c = self.coeffs
        return Poly([c[i] * i for i in range(1, len(c))], self.ring)

    def integrate(self):
        """Antiderivative with zero constant term (field coefficients)."""
        dom = self.ring.dom
        return Poly([dom.zero] + [dom.div(c, dom.convert(i + 1)) for i, c in enumerate(self.coeffs)],
                    self.ring)

    def __call__(self, x):
        r = self.ring.dom.zero
        for c in reversed(self.coeffs):
            r = r * x + c
        return r

    def compose(self, q):
        """Substitute the polynomial (or value) ``q`` for the variable."""
        r = self.ring.zero if type(q) is Poly and q.ring is self.ring else self.ring.dom.zero
        for c in reversed(self.coeffs):
            r = r * q + c
        return r

    def shift(self, a):
        """Return p(x + a) by Taylor shift (a in the coefficient domain)."""
        if not a or len(self.coeffs) <= 1:
            return self
        c = list(self.coeffs)
        n = len(c)
        for i in range(n - 1):
            for j in range(n - 2, i - 1, -1):
                c[j] = c[j] + a * c[j + 1]
        return Poly(c, self.ring)

    def reflect(self):
        """Return p(-x)."""
        return Poly([c if i % 2 == 0 else -c for i, c in enumerate(self.coeffs)], self.ring)

    def monic(self):
        if not self.coeffs:
            return self
        lc = self.coeffs[-1]
        if lc == 1:
            return self
        inv = self.ring.dom.inv(lc)
        return Poly([c * inv for c in self.coeffs[:-1]] + [self.ring.dom.one], self.ring)

    def map_coeffs(self, fn, ring=None):
        return Poly([fn(c) for c in self.coeffs], ring or self.ring)

    # -- deep (tower) operations
    def evaluate(self, env):
        return self.ring.evaluate(self, env)

    def shift_var(self, var, s):
        return self.ring.shift_var(self, var, s)

    def diff_var(self, var):
        return self.ring.diff_var(self, var)

    # -- rational-coefficient helpers
    def content_primitive(self):
        """For QQ coefficients: (c, f) with self = c*f, f integral primitive, lc(f) > 0."""
        if self.ring.dom is not QQ:
            raise TypeError("content is defined here only for rational coefficients")
        if not self.coeffs:
            return 0, self
        den = 1
        for c in self.coeffs:
            if type(c) is not int:
                d = c.denominator
                den = den * d // igcd(den, d)
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for c in ints:
            g = igcd(g, c)
            if g == 1:
                break
        if ints[-1] < 0:
            g = -g
        return qq(Fraction(g, den)), Poly([c // g for c in ints], self.ring)

    def to_ints(self):
        """Primitive integer coefficient list (positive leading coefficient)."""
        return list(self.content_primitive()[1].coeffs)

    # -- printing
    def __repr__(self):
        return f"Poly({self}, {self.ring.var})"

    def __str__(self):
        return format_poly(self)


def _mul_lists(a, b):
    if not a or not b:
        return ()
    if len(a) < len(b):
        a, b = b, a
    if len(b) == 1:
        c0 = b[0]
        return [x * c0 for x in a]
    na, nb = len(a), len(b)
    if type(a[0]) is int and all(type(x) is int for x in a) and all(type(x) is int for x in b) and na > 12:
        return _kron_mul(a, b)
    res = [None] * (na + nb - 1)
    for i, x in enumerate(a):
        if not x:
            for j in range(nb):
                if res[i + j] is None:
                    res[i + j] = x * b[j]
            continue
        for j, y in enumerate(b):
            t = x * y
            k = i + j
            if res[k] is None:
                res[k] = t
            else:
                res[k] = res[k] + t
    return res


def _kron_mul(a, b):
    """Integer polynomial product by Kronecker substitution."""
    ma = max(abs(x) for x in a)
    mb = max(abs(x) for x in b)
    bound = ma * mb * min(len(a), len(b))
    bits = bound.bit_length() + 2
    shift = bits
    base = 1 << shift

    def pack(c):
        r = 0
        for x in reversed(c):
            r = (r << shift) + x
        return r

    prod = pack(a) * pack(b)
    half = base >> 1
    out = []
    n = len(a) + len(b) - 1
    mask = base - 1
    for _ in range(n):
        d = prod & mask
        if d >= half:
            d -= base
        out.append(d)
        prod = (prod - d) >> shift
    return out


# --------------------------------------------------------------------------
# gcd machinery

def _int_eval(c, x):
    r = 0
    for a in reversed(c):
        r = r * x + a
    return r


def _int_interp(h, x):
    out = []
    half = x // 2
    while h:
        g = h % x
        if g > half:
            g -= x
        out.append(g)
        h = (h - g) // x
    return out


def _int_primitive(c):
    g = 0
    for a in c:
        g = igcd(g, a)
    if g == 0:
        return c
    if c[-1] < 0:
        g = -g
    return [a // g for a in c]


def _int_divides(d, f):
    """True when integer polynomial d divides f exactly over ZZ."""
    f = list(f)
    dd = len(d) - 1
    ld = d[-1]
    for i in range(len(f) - 1 - dd, -1, -1):
        c = f[i + dd]
        if c:
            q, r = divmod(c, ld)
            if r:
                return False
            for j in range(dd + 1):
                f[i + j] -= q * d[j]
    return not any(f)


def _heu_gcd(f, g):
    """Heuristic integer polynomial gcd; returns primitive gcd or None."""
    nf = max(abs(a) for a in f)
    ng = max(abs(a) for a in g)
    # x >= 2*min(|f|, |g|) + 2 makes the divisibility test a proof
    x = 2 * min(nf, ng) + 2
    for _ in range(6):
        ff = _int_eval(f, x)
        gg = _int_eval(g, x)
        if ff and gg:
            h = igcd(ff, gg)
            hp = _int_primitive(_int_interp(h, x))
            if hp and _int_divides(hp, f) and _int_divides(hp, g):
                return hp
        x = 73794 * x * isqrt(isqrt(x)) // 27011
    return None


def _euclid_gcd(a, b):
    while b:
        a, b = b, (a % b).monic()
    return a.monic()


def _gcd_qq(a, b):
    ring = a.ring
    if a.degree() == 0 or b.degree() == 0:
        return ring.one
    fa = a.to_ints()
    fb = b.to_ints()
    h = _heu_gcd(fa, fb)
    if h is None:
        return _euclid_gcd(a, b)
    return Poly([Fraction(c, h[-1]) if c % h[-1] else c // h[-1] for c in h], ring)


_RNG = random.Random(0x5EED)


def _random_point(vars_):
    return {v: _RNG.randint(1000, 30000) for v in vars_}


def specialize(p, env):
    """Evaluate all coefficients of ``p`` (a Poly over a function field) at ``env``."""
    dom = p.ring.dom
    ring = PolyRing(QQ, p.ring.var)
    return Poly([dom.evaluate(c, env) for c in p.coeffs], ring)


def _clear_to_ring(p, pring):
    """p over FracField(K) times the lcm of its coefficient denominators, as a Poly over K."""
    K = pring.dom
    L = K.one
    for c in p.coeffs:
        if c.den.degree() > 0:
            L = poly_lcm(L, c.den)
    return Poly([c.num * L.exquo(c.den) for c in p.coeffs], pring)


def _prem_ring(a, b):
    da, db = a.degree(), b.degree()
    lb = b.lc()
    r = list(a.coeffs)
    zero = a.ring.dom.zero
    for i in range(da - db, -1, -1):
        c = r[i + db]
        r = [x * lb for x in r]
        if c:
            for j in range(db + 1):
                r[i + j] = r[i + j] - c * b.coeffs[j]
        r[i + db] = zero
    return Poly(r[:db], a.ring)


def _subresultant_gcd(a, b):
    """gcd over FracField(K) via the subresultant PRS over K, which keeps coefficients small."""
    field = a.ring.dom
    K = field.ring
    pring = PolyRing(K, a.ring.var)
    A, B = _clear_to_ring(a, pring), _clear_to_ring(b, pring)
    if A.degree() < B.degree():
        A, B = B, A
    g = h = K.one
    while True:
        delta = A.degree() - B.degree()
        R = _prem_ring(A, B)
        if not R:
            break
        if R.degree() == 0:
            return a.ring.one
        A, B = B, R.quo_scalar(g * h ** delta)
        g = A.lc()
        if delta:
            h = g ** delta if delta == 1 else (g ** delta).exquo(h ** (delta - 1))
    return Poly([field.convert(c) for c in B.coeffs], a.ring).monic()


def _gcd_field_tower(a, b):
    """gcd over a rational function field, with a specialization shortcut."""
    dom = a.ring.dom
    for _ in range(3):
        env = _random_point(dom.vars)
        try:
            sa = specialize(a, env)
            sb = specialize(b, env)
        except ZeroDivisionError:
            continue
        if sa.degree() != a.degree() or sb.degree() != b.degree():
            continue
        g = _gcd_qq(sa, sb)
        if g.degree() == 0:
            return a.ring.one
        if g.degree() == b.degree():
            if not (a % b):
                return b.monic()
        elif g.degree() == a.degree():
            if not (b % a):
                return a.monic()
        break
    return _subresultant_gcd(a, b)


def poly_gcd(a, b):
    """Monic greatest common divisor of two polynomials over a field.

    >>> R = PolyRing(QQ, 'x'); x = R.gen
    >>> poly_gcd(x**2 - 1, x**2 - 2*x + 1)
    Poly(x - 1, x)
    """
    if type(a) is not Poly or type(b) is not Poly or a.ring is not b.ring:
        raise TypeError("poly_gcd needs two polynomials from the same ring")
    if not a.ring.dom.is_field:
        raise TypeError("poly_gcd needs a coefficient field")
    if not a:
        return b.monic()
    if not b:
        return a.monic()
    if a.ring.dom is QQ:
        return _gcd_qq(a, b)
    if isinstance(a.ring.dom, FracField):
        return _gcd_field_tower(a, b)
    return _euclid_gcd(a, b)


def poly_lcm(a, b):
    if not a or not b:
        return a.ring.zero
    g = poly_gcd(a, b)
    return (a * b.exquo(g)).monic()


def poly_xgcd(a, b):
    """Extended Euclid: returns (g, s, t) with g = s*a + t*b and g monic."""
    if type(a) is not Poly or type(b) is not Poly or a.ring is not b.ring:
        raise TypeError("poly_xgcd needs two polynomials from the same ring")
    ring = a.ring
    if not a and not b:
        raise DomainError("xgcd of two zero polynomials")
    if a == b:
        return a.monic(), ring.zero, ring.convert(ring.dom.inv(a.lc()))
    r0, r1 = a, b
    s0, s1 = ring.one, ring.zero
    t0, t1 = ring.zero, ring.one
    while r1:
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    inv = ring.dom.inv(r0.lc())
    return r0.scale(inv), s0.scale(inv), t0.scale(inv)


# --------------------------------------------------------------------------
# reduced fractions

class RatFun:
    """Reduced fraction num/den with monic denominator."""

    __slots__ = ("num", "den", "field")

    def __init__(self, num, den, field, _reduced=False):
        self.field = field
        if _reduced:
            self.num, self.den = num, den
            return
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if not num:
            self.num, self.den = field.ring.zero, field.ring.one
            return
        if den.degree() > 0 and num.degree() >= 0:
            g = poly_gcd(num, den)
            if g.degree() > 0:
                num = num.exquo(g)
                den = den.exquo(g)
        lc = den.coeffs[-1]
        if lc != 1:
            inv = field.ring.dom.inv(lc)
            num = num.scale(inv)
            den = den.monic()
        self.num, self.den = num, den

    @property
    def var(self):
        return self.field.var

    @property
    def ring(self):
        return self.field.ring

    def is_poly(self):
        return self.den.degree() == 0

    def is_constant(self):
        return self.den.degree() == 0 and self.num.degree() <= 0

    def constant_value(self):
        return self.num.constant_value()

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if type(other) is RatFun:
            return other.field is self.field and self.num == other.num and self.den == other.den
        try:
            o = self.field.convert(other)
        except TypeError:
            return False
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        if self.den.degree() == 0:
            return hash(self.num)
        return hash((self.num, self.den))

    def _co(self, other):
        if type(other) is RatFun and other.field is self.field:
            return other
        return self.field.convert(other)

    def __neg__(self):
        return RatFun(-self.num, self.den, self.field, _reduced=True)

    def __pos__(self):
        return self

    def __add__(self, other):
        try:
            o = self._co(other)
        except TypeError:
            return NotImplemented
        if not o.num:
            return self
        if not self.num:
            return o
        d1, d2 = self.den, o.den
        if d1.degree() == 0 and d2.degree() == 0:
            return RatFun(self.num + o.num, d1, self.field, _reduced=True)
        if d1 == d2:
            return RatFun(self.num + o.num, d1, self.field)
        if d2.degree() == 0:
            return RatFun(self.num + o.num * d1, d1, self.field, _reduced=True)
        if d1.degree() == 0:
            return RatFun(self.num * d2 + o.num, d2, self.field, _reduced=True)
        g = poly_gcd(d1, d2)
        if g.degree() == 0:
            return RatFun(self.num * d2 + o.num * d1, d1 * d2, self.field)
        c1 = d1.exquo(g)
        c2 = d2.exquo(g)
        return RatFun(self.num * c2 + o.num * c1, c1 * d2, self.field)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            o = self._co(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        try:
            o = self._co(other)
        except TypeError:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        try:
            o = self._co(other)
        except TypeError:
            return NotImplemented
        if not self.num or not o.num:
            return self.field.zero
        n1, d1, n2, d2 = self.num, self.den, o.num, o.den
        if d1.degree() == 0 and d2.degree() == 0:
            return RatFun(n1 * n2, d1, self.field, _reduced=True)
        if d2.degree() > 0 and n1.degree() > 0:
            g = poly_gcd(n1, d2)
            if g.degree() > 0:
                n1 = n1.exquo(g)
                d2 = d2.exquo(g)
        if d1.degree() > 0 and n2.degree() > 0:
            g = poly_gcd(n2, d1)
            if g.degree() > 0:
                n2 = n2.exquo(g)
                d1 = d1.exquo(g)
        num = n1 * n2
        den = d1 * d2
        lc = den.coeffs[-1]
        if lc != 1:
            inv = self.field.ring.dom.inv(lc)
            num = num.scale(inv)
            den = den.monic()
        return RatFun(num, den, self.field, _reduced=True)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("inverse of zero rational function")
        num, den = self.den, self.num
        lc = den.coeffs[-1]
        if lc != 1:
            inv = self.field.ring.dom.inv(lc)
            num = num.scale(inv)
            den = den.monic()
        return RatFun(num, den, self.field, _reduced=True)

    def __truediv__(self, other):
        try:
            o = self._co(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        try:
            o = self._co(other)
        except TypeError:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e):
        if not isinstance(e, int):
            raise ValueError("rational function powers need an integer exponent")
        if e < 0:
            return self.inverse() ** (-e)
        return RatFun(self.num ** e, self.den ** e, self.field, _reduced=True)

    # -- calculus and substitution
    def diff(self):
        n, d = self.num, self.den
        return RatFun(n.diff() * d - n * d.diff(), d * d, self.field)

    def shift(self, a):
        return RatFun(self.num.shift(a), self.den.shift(a), self.field)

    def __call__(self, x):
        d = self.den(x)
        if not d:
            raise ZeroDivisionError("pole at evaluation point")
        n = self.num(x)
        dom = self.field.ring.dom
        if dom is QQ and isinstance(d, (int, Fraction)):
            return dom.div(n, d)
        return n / d

    def evaluate(self, env):
        return self.field.evaluate(self, env)

    def shift_var(self, var, s):
        return self.field.shift_var(self, var, s)

    def diff_var(self, var):
        return self.field.diff_var(self, var)

    def __repr__(self):
        return f"RatFun({self})"

    def __str__(self):
        if self.den.degree() == 0:
            return str(self.num)
        ns = str(self.num)
        if _needs_paren(ns):
            ns = f"({ns})"
        ds = str(self.den)
        if _needs_paren(ds) or "*" in ds:
            ds = f"({ds})"
        return f"{ns}/{ds}"


# --------------------------------------------------------------------------
# printing

def _needs_paren(s):
    depth = 0
    for i, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif depth == 0 and ch in "+-/" and i > 0:
            return True
    return False


def _coeff_str(c):
    if isinstance(c, (int, Fraction)):
        return str(c)
    return str(c)


def format_poly(p):
    """Render with explicit ``*`` and ``^`` so the text re-parses to the same value."""
    if not p.coeffs:
        return "0"
    var = p.ring.var
    parts = []
    for i in range(len(p.coeffs) - 1, -1, -1):
        c = p.coeffs[i]
        if not c:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if isinstance(c, (int, Fraction)):
            neg = c < 0
            a = -c if neg else c
            if mono and a == 1:
                body = mono
            elif mono:
                body = f"{a}*{mono}"
            else:
                body = str(a)
        else:
            s = _coeff_str(c)
            neg = s.startswith("-") and not _needs_paren(s[1:])
            if neg:
                s = s[1:]
            if mono and s == "1":
                body = mono
            elif mono:
                if _needs_paren(s):
                    s = f"({s})"
                body = f"{s}*{mono}"
            else:
                body = f"({s})" if _needs_paren(s) and len(parts) > 0 else s
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)
