"""Exact arithmetic in finite fields F_{p^k}.

An element is stored as its *rank*: the integer sum c_i p^i of its coefficient
vector (c_0, ..., c_{k-1}) with respect to the power basis 1, g, ..., g^{k-1},
where g is the class of X modulo the defining polynomial. For p = 2 the rank
is exactly the packed bit vector. Prime-field elements are the ranks 0..p-1.

Fields of order at most TABLE_LIMIT get discrete-log and Zech-log tables on
first use; larger fields multiply polynomially (carry-less for p = 2).
"""

from dataclasses import dataclass, field
from functools import lru_cache

from sympy import factorint, isprime

from . import upoly
from .errors import DegreeMismatch, NotPrime, TooLarge

TABLE_LIMIT = 1 << 16
MAX_FIELD_BITS = 256


class ExtField:
    """The finite field F_p[X]/(modulus) with modulus monic irreducible of degree k."""

    def __init__(self, p, k, modulus):
        self.p = p
        self.k = k
        self.q = p ** k
        self.modulus = tuple(modulus)
        if len(self.modulus) != k + 1 or self.modulus[-1] != 1:
            raise ValueError("defining polynomial must be monic of degree k")
        self.zero = 0
        self.one = 1
        self._mod_int = sum(c << i for i, c in enumerate(self.modulus)) if p == 2 else None
        self._tables = None

    # -- identity -----------------------------------------------------------

    def __repr__(self):
        return f"ExtField(p={self.p}, k={self.k}, modulus={list(self.modulus)})"

    def __eq__(self, other):
        return (isinstance(other, ExtField) and self.p == other.p
                and self.modulus == other.modulus)

    def __hash__(self):
        return hash((self.p, self.modulus))

    @property
    def order(self):
        return self.q

    @property
    def characteristic(self):
        return self.p

    def is_finite(self):
        return True

    def descriptor(self):
        return {"p": self.p, "k": self.k, "modulus": list(self.modulus)}

    # -- conversions --------------------------------------------------------

    def to_vec(self, a):
        p = self.p
        out = []
        for _ in range(self.k):
            a, r = divmod(a, p)
            out.append(r)
        return out

    def from_vec(self, vec):
        if len(vec) > self.k or any(not 0 <= c < self.p for c in vec):
            raise ValueError(f"bad coefficient vector for F_{self.q}: {vec}")
        a = 0
        for c in reversed(vec):
            a = a * self.p + c
        return a

    def from_int(self, n):
        return n % self.p

    def rank(self, a):
        return a

    def elements(self):
        return range(self.q)

    def random_element(self, rng):
        return rng.randrange(self.q)

    @property
    def gen(self):
        """The class of X, i.e. a root of the defining polynomial."""
        if self.k == 1:
            return (-self.modulus[0]) % self.p
        return self.p

    def in_prime_field(self, a):
        return a < self.p

    # -- arithmetic ---------------------------------------------------------

    def add(self, a, b):
        if self.p == 2:
            return a ^ b
        if self.k == 1:
            return (a + b) % self.p
        t = self._get_tables()
        if t is not None:
            return t.add(a, b)
        return self._vec_add(a, b)

    def neg(self, a):
        if self.p == 2 or a == 0:
            return a
        if self.k == 1:
            return self.p - a
        return self.from_vec([(-c) % self.p for c in self.to_vec(a)])

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        if self.k == 1:
            return a * b % self.p
        t = self._get_tables()
        if t is not None:
            return t.exp[t.log[a] + t.log[b]]
        return self._raw_mul(a, b)

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        if self.k == 1:
            return pow(a, -1, self.p)
        t = self._get_tables()
        if t is not None:
            return t.exp[(self.q - 1 - t.log[a]) % (self.q - 1)]
        return self.pow(a, self.q - 2)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, n):
        if n < 0:
            a, n = self.inv(a), -n
        if a == 0:
            return 1 if n == 0 else 0
        if self.k == 1:
            return pow(a, n, self.p)
        t = self._get_tables()
        if t is not None:
            return t.exp[t.log[a] * n % (self.q - 1)]
        result = 1
        while n:
            if n & 1:
                result = self._raw_mul(result, a)
            n >>= 1
            if n:
                a = self._raw_mul(a, a)
        return result

    def frobenius(self, a, r=1):
        """a^(p^r), with r taken modulo k (negative r inverts Frobenius)."""
        r %= self.k
        if r == 0 or a < self.p:
            return a
        return self.pow(a, self.p ** r)

    def mult_order(self, a):
        if a == 0:
            raise ValueError("zero has no multiplicative order")
        n = self.q - 1
        for r, e in factorint(n).items():
            for _ in range(e):
                if self.pow(a, n // r) == 1:
                    n //= r
                else:
                    break
        return n

    def primitive_element(self):
        if self.q == 2:
            return 1
        for a in range(1, self.q):
            if self.mult_order(a) == self.q - 1:
                return a
        raise AssertionError("multiplicative group is cyclic")

    # -- internals ----------------------------------------------------------

    def _vec_add(self, a, b):
        p = self.p
        out, place = 0, 1
        while a or b:
            a, x = divmod(a, p)
            b, y = divmod(b, p)
            out += ((x + y) % p) * place
            place *= p
        return out

    def _raw_mul(self, a, b):
        k = self.k
        if self.p == 2:
            r = 0
            while b:
                if b & 1:
                    r ^= a
                a <<= 1
                b >>= 1
            m = self._mod_int
            while r.bit_length() > k:
                r ^= m << (r.bit_length() - 1 - k)
            return r
        p = self.p
        va, vb = self.to_vec(a), self.to_vec(b)
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(va):
            if x:
                for j, y in enumerate(vb):
                    prod[i + j] += x * y
        mod = self.modulus
        for i in range(2 * k - 2, k - 1, -1):
            c = prod[i] % p
            if c:
                for j in range(k):
                    prod[i - k + j] -= c * mod[j]
        return self.from_vec([c % p for c in prod[:k]])

    def _get_tables(self):
        if self._tables is None:
            # polynomial arithmetic while the tables are being built
            self._tables = False
            if self.q <= TABLE_LIMIT:
                self._tables = _LogTables(self)
        return self._tables or None


class _LogTables:
    """Discrete-log tables; exp has length 2(q-1) so log sums need no reduction."""

    def __init__(self, F):
        q = F.q
        g = F.primitive_element() if F.k > 1 else None
        exp = [0] * (2 * (q - 1) + 1)
        log = [0] * q
        x = 1
        for i in range(q - 1):
            exp[i] = x
            log[x] = i
            x = F._raw_mul(x, g)
        for i in range(q - 1, 2 * (q - 1) + 1):
            exp[i] = exp[i - (q - 1)]
        self.exp, self.log, self.q = exp, log, q
        self.zech = None
        if F.p != 2:
            # zech[i] = log(1 + g^i), or None when 1 + g^i = 0
            zech = [None] * (q - 1)
            for i in range(q - 1):
                s = F._vec_add(1, exp[i])
                zech[i] = None if s == 0 else log[s]
            self.zech = zech

    def add(self, a, b):
        if a == 0:
            return b
        if b == 0:
            return a
        la = self.log[a]
        z = self.zech[(self.log[b] - la) % (self.q - 1)]
        if z is None:
            return 0
        return self.exp[la + z]


@lru_cache(maxsize=None)
def make_field(p, k=1, max_bits=MAX_FIELD_BITS):
    """F_{p^k} with the lexicographically smallest monic irreducible modulus.

    Lexicographic means: compare coefficient vectors from degree k-1 down to
    the constant term, which is the same as comparing ranks.
    """
    if not isprime(p):
        raise NotPrime(f"{p} is not prime")
    if k < 1:
        raise ValueError("degree must be at least 1")
    if (p ** k).bit_length() - 1 > max_bits:
        raise TooLarge(f"F_{p}^{k} exceeds the {max_bits}-bit bound")
    if k == 1:
        return ExtField(p, 1, (0, 1))
    prime = make_field(p, 1)
    for r in range(p ** k):
        cand = _digits(r, p, k) + [1]
        if cand[0] == 0:
            continue
        if upoly.is_irreducible(prime, cand):
            return ExtField(p, k, cand)
    raise AssertionError("an irreducible polynomial of every degree exists")


def _digits(r, p, k):
    out = []
    for _ in range(k):
        r, d = divmod(r, p)
        out.append(d)
    return out


def field_from_descriptor(desc):
    p, k = int(desc["p"]), int(desc["k"])
    if "modulus" in desc and desc["modulus"] is not None:
        mod = [int(c) for c in desc["modulus"]]
        F = make_field(p, k)
        if list(F.modulus) == mod:
            return F
        prime = make_field(p, 1)
        if not upoly.is_irreducible(prime, mod):
            raise ValueError(f"modulus {mod} is not irreducible over F_{p}")
        return ExtField(p, k, mod)
    return make_field(p, k)


def field_from_order(q):
    """Parse a prime power q into make_field(p, k)."""
    fac = factorint(q)
    if len(fac) != 1:
        raise ValueError(f"{q} is not a prime power")
    (p, k), = fac.items()
    return make_field(p, k)


def frobenius(F, x, r):
    return F.frobenius(x, r)


@dataclass(frozen=True)
class Embedding:
    """A field embedding F_{p^a} -> F_{p^b}, a | b, fixed by the image of the generator."""

    source: ExtField
    target: ExtField
    image: int
    _table: list = field(default=None, compare=False, repr=False)

    def __call__(self, x):
        if self._table is not None:
            return self._table[x]
        F, T = self.source, self.target
        if F.k == 1:
            return x
        acc = 0
        for c in reversed(F.to_vec(x)):
            acc = T.add(T.mul(acc, self.image), c)
        return acc

    def compose(self, other):
        """self after other: other.source -> self.target."""
        if other.target != self.source:
            raise DegreeMismatch("embeddings do not chain")
        return Embedding(other.source, self.target, self(other.image)
                         if other.source.k > 1 else 0)

    def preimage(self, y):
        """Inverse on the image; None if y is not in the image."""
        inv = self._inverse()
        return inv.get(y)

    def _inverse(self):
        inv = getattr(self, "_inv_cache", None)
        if inv is None:
            inv = {self(x): x for x in self.source.elements()}
            object.__setattr__(self, "_inv_cache", inv)
        return inv


@lru_cache(maxsize=None)
def embed(F_small, F_big):
    """Canonical embedding F_small -> F_big, coherent along towers.

    Into each maximal subfield position of F_big (prime index) the generator
    goes to the smallest-rank root of its modulus that agrees with the
    maximal subfields already placed on their common subfields; smaller
    fields are routed through the maximal subfield of smallest prime index
    containing them. Any two chains of embeddings then agree.
    """
    if F_small.p != F_big.p:
        raise DegreeMismatch("fields of different characteristic")
    if F_big.k % F_small.k:
        raise DegreeMismatch(f"{F_small.k} does not divide {F_big.k}")
    if F_small.k == F_big.k:
        if F_small != F_big:
            raise DegreeMismatch("distinct fields of the same degree")
        emb = Embedding(F_small, F_big, F_big.gen)
    elif F_small.k == 1:
        emb = Embedding(F_small, F_big, F_small.gen)
    else:
        index = F_big.k // F_small.k
        if isprime(index) and F_small == make_field(F_small.p, F_small.k):
            emb = Embedding(F_small, F_big, _maximal_image(F_big, index))
        elif isprime(index):
            rts = upoly.roots(F_big, list(F_small.modulus))
            emb = Embedding(F_small, F_big, rts[0])
        else:
            ell = min(l for l in upoly._prime_factors(index))
            B = make_field(F_big.p, F_big.k // ell)
            emb = embed(B, F_big).compose(embed(F_small, B))
    if F_small.q <= TABLE_LIMIT and F_small.k > 1:
        table = [emb(x) for x in F_small.elements()]
        emb = Embedding(F_small, F_big, emb.image, table)
    return emb


@lru_cache(maxsize=None)
def _maximal_image(C, ell):
    """Image of the generator of the standard subfield of index ell in C."""
    p, c = C.p, C.k
    primes = sorted(upoly._prime_factors(c))
    B = make_field(p, c // ell)
    constraints = []
    for other in primes:
        if other >= ell:
            break
        d = c // (ell * other)
        Bo = make_field(p, c // other)
        D = make_field(p, d)
        if d == 1:
            continue
        x_in_B = embed(D, B)(D.gen)
        target = embed(Bo, C)(embed(D, Bo)(D.gen))
        constraints.append((B.to_vec(x_in_B), target))
    for r in upoly.roots(C, list(B.modulus)):
        if all(_horner(C, vec, r) == t for vec, t in constraints):
            return r
    raise AssertionError("no coherent embedding exists")


def _horner(T, vec, r):
    acc = 0
    for cf in reversed(vec):
        acc = T.add(T.mul(acc, r), cf)
    return acc


def subfield(F, d):
    """The subfield of order p^d of F, with its canonical embedding."""
    if F.k % d:
        raise DegreeMismatch(f"F_{F.p}^{F.k} has no subfield of degree {d}")
    S = make_field(F.p, d)
    return S, embed(S, F)


def factor_univariate(F, f, seed=0):
    """Factor f over F; returns (leading coefficient, [(monic irreducible, multiplicity)])."""
    return upoly.factor(F, f, seed=seed)


def format_element(F, a):
    """Canonical text: an integer for prime-field elements, else a polynomial in g."""
    if a < F.p:
        return str(a)
    parts = []
    for i, c in reversed(list(enumerate(F.to_vec(a)))):
        if c == 0:
            continue
        mono = "" if i == 0 else ("g" if i == 1 else f"g^{i}")
        if not mono:
            parts.append(str(c))
        elif c == 1:
            parts.append(mono)
        else:
            parts.append(f"{c}*{mono}")
    return "(" + "+".join(parts) + ")"
