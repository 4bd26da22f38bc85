"""Irreducible factorization over the rationals.

Squarefree decomposition first, then for each squarefree part: factor modulo
a small prime (distinct-degree plus Cantor-Zassenhaus splitting), lift the
modular factors with quadratic Hensel steps, and recombine subsets by trial
division over the integers.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations
from math import isqrt, log2, ceil

from .core import QQ, DomainError, Poly, qq
from .algorithms import Factorization, squarefree_decomposition

__all__ = ["factor_rationals", "factor_squarefree_int"]


# ---- arithmetic on integer coefficient lists modulo p (lowest degree first)

def _trim(a):
    while a and not a[-1]:
        a.pop()
    return a


def _gf(a, p):
    return _trim([x % p for x in a])


def _gf_sub(a, b, p):
    n = max(len(a), len(b))
    return _trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)])


def _gf_mul(a, b, p):
    if not a or not b:
        return []
    r = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                r[i + j] += x * y
    return _trim([x % p for x in r])


def _gf_divmod(a, b, p):
    a = list(a)
    db = len(b) - 1
    inv = pow(b[-1], -1, p)
    if len(a) - 1 < db:
        return [], a
    q = [0] * (len(a) - db)
    for i in range(len(a) - 1 - db, -1, -1):
        c = a[i + db] * inv % p
        q[i] = c
        if c:
            for j in range(db + 1):
                a[i + j] = (a[i + j] - c * b[j]) % p
    return _trim(q), _trim(a[:db])


def _gf_monic(a, p):
    inv = pow(a[-1], -1, p)
    return [x * inv % p for x in a]


def _gf_gcd(a, b, p):
    while b:
        a, b = b, _gf_divmod(a, b, p)[1]
    return _gf_monic(a, p) if a else a


def _gf_xgcd(a, b, p):
    r0, r1 = a, b
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = _gf_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _gf_sub(s0, _gf_mul(q, s1, p), p)
        t0, t1 = t1, _gf_sub(t0, _gf_mul(q, t1, p), p)
    inv = pow(r0[-1], -1, p)
    return [x * inv % p for x in s0], [x * inv % p for x in t0]


def _gf_powmod(a, e, f, p):
    result = [1]
    a = _gf_divmod(a, f, p)[1]
    while e:
        if e & 1:
            result = _gf_divmod(_gf_mul(result, a, p), f, p)[1]
        e >>= 1
        if e:
            a = _gf_divmod(_gf_mul(a, a, p), f, p)[1]
    return result


def _gf_diff(a, p):
    return _trim([(i * a[i]) % p for i in range(1, len(a))])


def _gf_ddf(f, p):
    """Distinct-degree factorization of a monic squarefree polynomial."""
    out = []
    h = [0, 1]
    i = 1
    while 2 * i <= len(f) - 1:
        h = _gf_powmod(h, p, f, p)
        g = _gf_gcd(f, _gf_sub(h, [0, 1], p), p)
        if len(g) > 1:
            out.append((g, i))
            f = _gf_divmod(f, g, p)[0]
            h = _gf_divmod(h, f, p)[1]
        i += 1
    if len(f) > 1:
        out.append((f, len(f) - 1))
    return out


def _gf_edf(f, d, p, rng):
    """Split a monic product of degree-d irreducibles (odd p)."""
    n = len(f) - 1
    if n == d:
        return [f]
    e = (p ** d - 1) // 2
    while True:
        a = _trim([rng.randrange(p) for _ in range(n)])
        if len(a) < 2:
            continue
        b = _gf_sub(_gf_powmod(a, e, f, p), [1], p)
        g = _gf_gcd(f, b, p)
        if 0 < len(g) - 1 < n:
            return _gf_edf(g, d, p, rng) + _gf_edf(_gf_divmod(f, g, p)[0], d, p, rng)


def _gf_factor_sqf(f, p, rng):
    out = []
    for g, d in _gf_ddf(f, p):
        out.extend(_gf_edf(g, d, p, rng))
    return out


# ---- integer polynomial helpers

def _zz_mul(a, b):
    if not a or not b:
        return []
    r = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                r[i + j] += x * y
    return r


def _zz_add(a, b):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]


def _zz_sub(a, b):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]


def _zz_trunc(a, m):
    half = m // 2
    out = []
    for x in a:
        x %= m
        if x > half:
            x -= m
        out.append(x)
    return _trim(out)


def _zz_div_monic(a, b):
    """Divide by a monic integer polynomial."""
    a = list(a)
    db = len(b) - 1
    if len(a) - 1 < db:
        return [], _trim(a)
    q = [0] * (len(a) - db)
    for i in range(len(a) - 1 - db, -1, -1):
        c = a[i + db]
        q[i] = c
        if c:
            for j in range(db + 1):
                a[i + j] -= c * b[j]
    return _trim(q), _trim(a[:db])


def _zz_exact_div(f, d):
    """Quotient of f by d over ZZ, or None when d does not divide f."""
    f = list(f)
    dd = len(d) - 1
    if len(f) - 1 < dd:
        return None
    q = [0] * (len(f) - dd)
    ld = d[-1]
    for i in range(len(f) - 1 - dd, -1, -1):
        c = f[i + dd]
        if c:
            qi, r = divmod(c, ld)
            if r:
                return None
            q[i] = qi
            for j in range(dd + 1):
                f[i + j] -= qi * d[j]
    if any(f):
        return None
    return q


def _zz_primitive(a):
    from math import gcd
    g = 0
    for x in a:
        g = gcd(g, x)
    if a[-1] < 0:
        g = -g
    return [x // g for x in a]


def _hensel_step(m, f, g, h, s, t):
    M = m * m
    e = _zz_trunc(_zz_sub(f, _zz_mul(g, h)), M)
    q, r = _zz_div_monic(_zz_mul(s, e), h)
    q = _zz_trunc(q, M)
    r = _zz_trunc(r, M)
    u = _zz_add(_zz_mul(t, e), _zz_mul(q, g))
    G = _zz_trunc(_zz_add(g, u), M)
    H = _zz_trunc(_zz_add(h, r), M)
    u = _zz_add(_zz_mul(s, G), _zz_mul(t, H))
    b = _zz_trunc(_zz_sub(u, [1]), M)
    c, d = _zz_div_monic(_zz_mul(s, b), H)
    c = _zz_trunc(c, M)
    d = _zz_trunc(d, M)
    u = _zz_add(_zz_mul(t, b), _zz_mul(c, G))
    S = _zz_trunc(_zz_sub(s, d), M)
    T = _zz_trunc(_zz_sub(t, u), M)
    return G, H, S, T


def _hensel_lift(p, f, flist, l):
    """Lift monic factors flist of f (mod p) to monic factors modulo p**l."""
    r = len(flist)
    lc = f[-1]
    pl = p ** l
    if r == 1:
        return [_zz_trunc([x * pow(lc, -1, pl) for x in f], pl)]
    k = r // 2
    d = ceil(log2(l)) if l > 1 else 0
    g = _gf([lc], p)
    for fi in flist[:k]:
        g = _gf_mul(g, fi, p)
    h = list(flist[k])
    for fi in flist[k + 1:]:
        h = _gf_mul(h, fi, p)
    s, t = _gf_xgcd(g, h, p)
    g = _zz_trunc(g, p)
    h = _zz_trunc(h, p)
    s = _zz_trunc(s, p)
    t = _zz_trunc(t, p)
    m = p
    for _ in range(d):
        g, h, s, t = _hensel_step(m, f, g, h, s, t)
        m = m * m
    return _hensel_lift(p, g, flist[:k], l) + _hensel_lift(p, h, flist[k:], l)


def _small_primes(limit=20000):
    sieve = bytearray([1]) * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i::i] = bytearray(len(sieve[i * i::i]))
    return [i for i in range(3, limit + 1) if sieve[i]]


_PRIMES = _small_primes()


def factor_squarefree_int(f):
    """Irreducible factors over ZZ of a primitive squarefree integer polynomial."""
    n = len(f) - 1
    if n <= 1:
        return [f]
    rng = random.Random(n * 7919 + f[0] % 104729)
    lc = f[-1]
    best = None
    tried = 0
    for p in _PRIMES:
        if lc % p == 0:
            continue
        fp = _gf(f, p)
        if len(fp) - 1 != n:
            continue
        if len(_gf_gcd(fp, _gf_diff(fp, p), p)) > 1:
            continue
        facs = _gf_factor_sqf(_gf_monic(fp, p), p, rng)
        if best is None or len(facs) < len(best[1]):
            best = (p, facs)
        tried += 1
        if len(facs) == 1 or tried >= 4:
            break
    if best is None:
        raise DomainError("no suitable prime found for factorization")
    p, facs = best
    if len(facs) == 1:
        return [f]
    norm = max(abs(x) for x in f)
    bound = isqrt(n + 1) + 1
    B = bound * (2 ** n) * norm * abs(lc)
    l = 1
    while p ** l <= 2 * B + 1:
        l += 1
    lifted = _hensel_lift(p, f, facs, l)
    pl = p ** l
    factors = []
    idx = list(range(len(lifted)))
    s = 1
    cur = f
    while 2 * s <= len(idx):
        found = False
        for sub in combinations(idx, s):
            b = cur[-1]
            G = [b]
            for i in sub:
                G = _zz_trunc(_zz_mul(G, lifted[i]), pl)
            G = _zz_primitive(G)
            q = _zz_exact_div(cur, G)
            if q is not None:
                factors.append(G)
                cur = q
                idx = [i for i in idx if i not in sub]
                found = True
                break
        if not found:
            s += 1
    factors.append(_zz_primitive(cur))
    return factors


def factor_rationals(p):
    """Irreducible factorization over QQ with monic factors.

    >>> from .core import PolyRing
    >>> z = PolyRing(QQ, 'z').gen
    >>> fac = factor_rationals(-4*z**3 + 3*z + 1)
    >>> fac.unit, [(str(f), e) for f, e in fac.factors]
    (-4, [('z - 1', 1), ('z + 1/2', 2)])
    """
    if not p:
        raise DomainError("factorization of zero")
    if p.ring.dom is not QQ:
        raise TypeError("factor_rationals needs rational coefficients")
    unit = p.lc()
    out = []
    for g, e in squarefree_decomposition(p).factors:
        if g.degree() == 1:
            out.append((g, e))
            continue
        ints = g.to_ints()
        for h in factor_squarefree_int(ints):
            hp = Poly([qq(Fraction(c, h[-1])) for c in h], p.ring)
            out.append((hp, e))
    out.sort(key=lambda fe: (fe[0].degree(), fe[1], [Fraction(c) for c in fe[0].coeffs]))
    return Factorization(unit, tuple(out))
