"""Dense univariate polynomials over an arbitrary field object.

A polynomial a_0 + a_1 X + ... + a_n X^n is the list [a_0, ..., a_n] of field
elements with a nonzero last entry; the zero polynomial is []. Every function
takes the coefficient field ``F`` first, in the style of the classic dense
polynomial toolkits. ``F`` must provide zero, one, add, sub, neg, mul, inv;
factorization additionally needs the finite-field attributes p, q and
frobenius.
"""

import random

from .errors import ZeroPolynomial


def trim(F, f):
    f = list(f)
    while f and f[-1] == F.zero:
        f.pop()
    return f


def degree(f):
    return len(f) - 1


def const(F, c):
    return [] if c == F.zero else [c]


def x_power(F, n):
    return [F.zero] * n + [F.one]


def add(F, f, g):
    if len(f) < len(g):
        f, g = g, f
    h = list(f)
    for i, c in enumerate(g):
        h[i] = F.add(h[i], c)
    return trim(F, h)


def neg(F, f):
    return [F.neg(c) for c in f]


def sub(F, f, g):
    return add(F, f, neg(F, g))


def scale(F, f, c):
    if c == F.zero:
        return []
    return [F.mul(a, c) for a in f]


def mul(F, f, g):
    if not f or not g:
        return []
    h = [F.zero] * (len(f) + len(g) - 1)
    zero = F.zero
    for i, a in enumerate(f):
        if a == zero:
            continue
        for j, b in enumerate(g):
            if b != zero:
                h[i + j] = F.add(h[i + j], F.mul(a, b))
    return trim(F, h)


def divmod_(F, f, g):
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(f)
    dg = len(g) - 1
    if len(r) <= dg:
        return [], trim(F, r)
    inv_lc = F.inv(g[-1])
    quo = [F.zero] * (len(r) - dg)
    for i in range(len(r) - 1, dg - 1, -1):
        c = r[i]
        if c == F.zero:
            continue
        c = F.mul(c, inv_lc)
        quo[i - dg] = c
        for j in range(dg + 1):
            if g[j] != F.zero:
                r[i - dg + j] = F.sub(r[i - dg + j], F.mul(c, g[j]))
    return trim(F, quo), trim(F, r[:dg])


def rem(F, f, g):
    return divmod_(F, f, g)[1]


def quo(F, f, g):
    return divmod_(F, f, g)[0]


def monic(F, f):
    if not f:
        return []
    if f[-1] == F.one:
        return list(f)
    return scale(F, f, F.inv(f[-1]))


def gcd(F, f, g):
    f, g = trim(F, f), trim(F, g)
    while g:
        f, g = g, rem(F, f, g)
    return monic(F, f)


def gcdex(F, f, g):
    """Return (s, t, h) with s*f + t*g = h = gcd(f, g), h monic."""
    r0, r1 = trim(F, f), trim(F, g)
    s0, s1 = [F.one], []
    t0, t1 = [], [F.one]
    while r1:
        q, r = divmod_(F, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(F, s0, mul(F, q, s1))
        t0, t1 = t1, sub(F, t0, mul(F, q, t1))
    if not r0:
        return [], [], []
    c = F.inv(r0[-1])
    return scale(F, s0, c), scale(F, t0, c), scale(F, r0, c)


def mulmod(F, f, g, m):
    return rem(F, mul(F, f, g), m)


def powmod(F, f, n, m):
    """f**n mod m by square-and-multiply."""
    result = rem(F, [F.one], m)
    base = rem(F, f, m)
    while n:
        if n & 1:
            result = mulmod(F, result, base, m)
        n >>= 1
        if n:
            base = mulmod(F, base, base, m)
    return result


def evaluate(F, f, x):
    acc = F.zero
    for c in reversed(f):
        acc = F.add(F.mul(acc, x), c)
    return acc


def derivative(F, f):
    out = []
    for i in range(1, len(f)):
        out.append(F.mul(F.from_int(i), f[i]))
    return trim(F, out)


def compose_mod(F, f, g, m):
    """f(g) mod m, Horner style."""
    acc = []
    for c in reversed(f):
        acc = add(F, mulmod(F, acc, g, m), const(F, c))
    return acc


def map_coeffs(F_target, f, phi):
    return trim(F_target, [phi(c) for c in f])


def sort_key(F, f):
    """Deterministic order: by degree, then coefficients from the top down."""
    return (len(f), tuple(F.rank(c) for c in reversed(f)))


# -- factorization over finite fields ----------------------------------------

def _pth_root(F, f):
    # f' = 0, so f = sum c_i X^{p i}
    p = F.p
    return trim(F, [F.frobenius(f[i], -1) for i in range(0, len(f), p)])


def squarefree_decomposition(F, f):
    """Return [(g, m), ...] with f = lc * prod g^m and each g squarefree."""
    f = monic(F, f)
    if len(f) <= 1:
        return []
    p = F.p
    out = []
    df = derivative(F, f)
    if not df:
        return [(g, m * p) for g, m in squarefree_decomposition(F, _pth_root(F, f))]
    c = gcd(F, f, df)
    w = quo(F, f, c)
    i = 1
    while len(w) > 1:
        y = gcd(F, w, c)
        z = quo(F, w, y)
        if len(z) > 1:
            out.append((z, i))
        i += 1
        w = y
        c = quo(F, c, y)
    if len(c) > 1:
        for g, m in squarefree_decomposition(F, _pth_root(F, c)):
            out.append((g, m * p))
    return out


def distinct_degree(F, f):
    """Split a monic squarefree f into [(product of degree-d factors, d), ...]."""
    out = []
    x = [F.zero, F.one]
    h = x
    d = 0
    while 2 * (d + 1) <= len(f) - 1:
        d += 1
        h = powmod(F, h, F.q, f)
        g = gcd(F, f, sub(F, h, x))
        if len(g) > 1:
            out.append((g, d))
            f = quo(F, f, g)
            h = rem(F, h, f)
    if len(f) > 1:
        out.append((f, len(f) - 1))
    return out


def _random_poly(F, n, rng):
    return trim(F, [F.random_element(rng) for _ in range(n)])


def equal_degree(F, f, d, rng):
    """Split a monic squarefree f whose irreducible factors all have degree d."""
    n = len(f) - 1
    if n == d:
        return [f]
    q = F.q
    while True:
        r = _random_poly(F, n, rng)
        if len(r) < 2:
            continue
        if q % 2:
            e = (q ** d - 1) // 2
            h = sub(F, powmod(F, r, e, f), [F.one])
        else:
            # absolute trace from F_{q^d} down to F_2
            h = r
            acc = r
            for _ in range(F.k * d - 1):
                acc = mulmod(F, acc, acc, f)
                h = add(F, h, acc)
        g = gcd(F, f, h)
        if 1 < len(g) < len(f):
            break
    return (equal_degree(F, g, d, rng)
            + equal_degree(F, quo(F, f, g), d, rng))


def factor(F, f, seed=0):
    """Factor f over the finite field F.

    Returns (lc, [(g, m), ...]) with monic irreducible g, sorted by degree and
    coefficients; lc * prod g^m == f exactly.
    """
    f = trim(F, f)
    if not f:
        raise ZeroPolynomial("cannot factor the zero polynomial")
    lc = f[-1]
    rng = random.Random(seed)
    factors = {}
    for g, m in squarefree_decomposition(F, f):
        for h, d in distinct_degree(F, g):
            for irr in equal_degree(F, h, d, rng):
                key = tuple(irr)
                factors[key] = factors.get(key, 0) + m
    items = sorted(((list(k), m) for k, m in factors.items()),
                   key=lambda t: sort_key(F, t[0]))
    return lc, items


def expand_factorization(F, lc, factors):
    out = [lc]
    for g, m in factors:
        for _ in range(m):
            out = mul(F, out, g)
    return out


def is_irreducible(F, f):
    """Rabin's test over a finite field."""
    f = monic(F, trim(F, f))
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    x = [F.zero, F.one]
    # x^{q^i} mod f for i = 1..n
    frob = [x]
    h = x
    for _ in range(n):
        h = powmod(F, h, F.q, f)
        frob.append(h)
    if sub(F, frob[n], x):
        return False
    for r in _prime_factors(n):
        g = gcd(F, f, sub(F, frob[n // r], x))
        if len(g) > 1:
            return False
    return True


def roots(F, f, seed=0):
    """All distinct roots of f in F, sorted by rank."""
    f = monic(F, trim(F, f))
    if len(f) <= 1:
        return []
    x = [F.zero, F.one]
    g = gcd(F, f, sub(F, powmod(F, x, F.q, f), x))
    if len(g) <= 1:
        return []
    lin = equal_degree(F, g, 1, random.Random(seed))
    return sorted((F.neg(h[0]) for h in lin), key=F.rank)


def _prime_factors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out
