"""Exact arithmetic in Q(zeta_n), its unit-group Galois action, lifting of
actions along n | m, and the two-squares decision for x * conj(x) = r in Q(i).
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import gcd, isqrt

from sympy import factorint, sqrt_mod

from . import upoly
from .errors import ConductorMismatch, NotAHomomorphism
from .groups import group_from_elements
from .smallgroups import _generators


class Rationals:
    """Q as a field object for the dense univariate helpers."""

    zero = Fraction(0)
    one = Fraction(1)
    p = 0

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a)

    def div(self, a, b):
        return Fraction(a) / b

    def from_int(self, n):
        return Fraction(n)

    def is_finite(self):
        return False

    def format(self, a):
        return format_rational(a)

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Q")


QQ = Rationals()


def format_rational(a):
    a = Fraction(a)
    return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"


def parse_rational(s):
    return Fraction(str(s).strip())


@lru_cache(maxsize=None)
def _cyclo(n):
    f = [Fraction(-1)] + [Fraction(0)] * (n - 1) + [Fraction(1)]
    for d in range(1, n):
        if n % d == 0:
            f = upoly.quo(QQ, f, list(_cyclo(d)))
    return tuple(f)


def cyclotomic_polynomial(n):
    """Phi_n as a little-endian list of Fractions, from X^n - 1 = prod_{d | n} Phi_d."""
    if n < 1:
        raise ValueError("n must be positive")
    return list(_cyclo(n))


def totient(n):
    return sum(1 for a in range(1, n + 1) if gcd(a, n) == 1)


def units(n):
    return [a % n for a in range(1, n + 1) if gcd(a, n) == 1] if n > 1 else [0]


class CycloField:
    """Q(zeta_n) = Q[X]/(Phi_n); elements are tuples of phi(n) Fractions."""

    def __init__(self, n):
        if n < 1:
            raise ValueError("conductor must be positive")
        self.n = n
        self.modulus = cyclotomic_polynomial(n)
        self.degree = len(self.modulus) - 1
        self.zero = (Fraction(0),) * self.degree
        self.one = (Fraction(1),) + (Fraction(0),) * (self.degree - 1)
        self.p = 0

    def __repr__(self):
        return f"CycloField({self.n})"

    def __eq__(self, other):
        return isinstance(other, CycloField) and other.n == self.n

    def __hash__(self):
        return hash(("cyclo", self.n))

    def is_finite(self):
        return False

    order = None

    def descriptor(self):
        return {"cyclotomic": self.n}

    def _wrap(self, f):
        f = upoly.rem(QQ, f, self.modulus) if len(f) > self.degree else upoly.trim(QQ, f)
        return tuple(f) + (Fraction(0),) * (self.degree - len(f))

    def element(self, coeffs):
        return self._wrap([Fraction(c) for c in coeffs])

    def from_int(self, n):
        return self.from_rational(n)

    def from_rational(self, r):
        return self._wrap([Fraction(r)])

    @property
    def gen(self):
        """zeta_n."""
        return self._wrap([Fraction(0), Fraction(1)])

    @property
    def imaginary_unit(self):
        if self.n != 4:
            return None
        return self.gen

    def zeta_power(self, i):
        return self._wrap([Fraction(0)] * (i % self.n) + [Fraction(1)])

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple(x - y for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x for x in a)

    def mul(self, a, b):
        return self._wrap(upoly.mul(QQ, upoly.trim(QQ, a), upoly.trim(QQ, b)))

    def inv(self, a):
        f = upoly.trim(QQ, a)
        if not f:
            raise ZeroDivisionError("inverse of zero")
        s, _, h = upoly.gcdex(QQ, f, self.modulus)
        assert h == [Fraction(1)]
        return self._wrap(s)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, n):
        if n < 0:
            a, n = self.inv(a), -n
        result = self.one
        while n:
            if n & 1:
                result = self.mul(result, a)
            n >>= 1
            if n:
                a = self.mul(a, a)
        return result

    def in_rationals(self, a):
        return all(x == 0 for x in a[1:])

    def apply_aut(self, a, e):
        """zeta -> zeta^e."""
        if gcd(e, self.n) != 1:
            raise ValueError(f"{e} is not a unit mod {self.n}")
        acc = [Fraction(0)] * self.n
        for i, c in enumerate(a):
            if c:
                j = (i * e) % self.n
                acc[j] += c
        return self._wrap(acc)

    def format(self, a):
        if self.in_rationals(a):
            return format_rational(a[0])
        sym = "i" if self.n == 4 else "z"
        parts = []
        for i in reversed(range(self.degree)):
            c = a[i]
            if not c:
                continue
            mono = "" if i == 0 else (sym if i == 1 else f"{sym}^{i}")
            cs = format_rational(c)
            if not mono:
                parts.append(cs)
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{cs}*{mono}")
        return "(" + "+".join(parts) + ")"


@dataclass(frozen=True)
class CycloAut:
    """zeta_n -> zeta_n^a."""

    n: int
    a: int

    def __post_init__(self):
        if gcd(self.a, self.n) != 1:
            raise ValueError(f"{self.a} is not a unit mod {self.n}")

    def __call__(self, K, x):
        return K.apply_aut(x, self.a)

    def compose(self, other):
        return CycloAut(self.n, (self.a * other.a) % self.n)


# -- unit groups ------------------------------------------------------------------

@dataclass
class GaloisGroup:
    n: int
    group: object
    units: list
    invariants: list
    generators: list = field(default_factory=list)

    def describe(self):
        if not self.invariants:
            return "1"
        return " x ".join(f"Z/{d}" for d in self.invariants)

    def exponent_of(self, k):
        return self.units[k]

    def index_of(self, a):
        return self.units.index(a % self.n if self.n > 1 else 0)


def abelian_invariants(G):
    """Invariant factors d_1 >= d_2 >= ... (each divisible by the next) of an abelian group."""
    fac = factorint(G.order)
    parts = {}
    for p in fac:
        counts = []
        j = 0
        while True:
            c = sum(1 for x in G.elements() if G.power(x, p ** j) == 0)
            counts.append(c)
            if c == p ** fac[p] and j > 0:
                break
            j += 1
        logs = [_ilog(c, p) for c in counts]
        ge = [logs[j] - logs[j - 1] for j in range(1, len(logs))]
        exps = []
        for j in range(len(ge)):
            nxt = ge[j + 1] if j + 1 < len(ge) else 0
            exps += [j + 1] * (ge[j] - nxt)
        parts[p] = sorted(exps, reverse=True)
    r = max((len(v) for v in parts.values()), default=0)
    out = []
    for i in range(r):
        d = 1
        for p, v in parts.items():
            if i < len(v):
                d *= p ** v[i]
        out.append(d)
    return out


def _ilog(c, p):
    k = 0
    while c > 1:
        c //= p
        k += 1
    return k


def _cyclic_basis(G, invariants):
    """Elements with the given orders whose cyclic subgroups form an internal direct product."""
    def search(chosen, span):
        i = len(chosen)
        if i == len(invariants):
            return chosen
        for x in G.elements():
            if G.element_order(x) != invariants[i]:
                continue
            new = G.closure(list(chosen) + [x])
            if len(new) == len(span) * invariants[i]:
                found = search(chosen + [x], new)
                if found is not None:
                    return found
        return None
    return search([], frozenset([0])) or []


def galois_group(n):
    """(Z/n)^* as a FiniteGroup, labelled by residues, with its cyclic decomposition."""
    us = units(n)
    if n <= 2:
        G = group_from_elements(us, lambda a, b: (a * b) % max(n, 1), us[0], name="1")
        return GaloisGroup(n, G, list(G.labels), [], [])
    G = group_from_elements(us, lambda a, b: (a * b) % n, 1, name=f"(Z/{n})^*")
    inv = abelian_invariants(G)
    gens = _cyclic_basis(G, inv)
    return GaloisGroup(n, G, list(G.labels), inv, [G.labels[g] for g in gens])


# -- extending actions along n | m -------------------------------------------------

@dataclass
class LiftReport:
    n: int
    m: int
    rho: list          # exponents mod n, per group element
    generators: list   # indices of the generators used
    lifts: list        # each lift: exponents mod m, per group element

    @property
    def obstructed(self):
        return not self.lifts

    def to_json(self):
        return {
            "n": self.n, "m": self.m,
            "rho": self.rho,
            "generators": self.generators,
            "generator_images": [[lift[g] for g in self.generators] for lift in self.lifts],
            "lifts": self.lifts,
            "obstruction": self.obstructed,
        }


def _check_rho(G, rho, n):
    if len(rho) != G.order:
        raise NotAHomomorphism(f"need one image per group element, got {len(rho)}")
    mod = max(n, 1)
    for a in rho:
        if gcd(a, mod) != 1 and n > 1:
            raise NotAHomomorphism(f"{a} is not a unit mod {n}")
    for x in G.elements():
        for y in G.elements():
            if rho[G.mul(x, y)] % mod != (rho[x] * rho[y]) % mod:
                raise NotAHomomorphism(f"rho fails on the pair ({x}, {y})")


def cyclic_rho(order, a, n):
    """The hom Z/order -> (Z/n)^* sending the generator 1 to a."""
    return [pow(a, k, n) if n > 1 else 0 for k in range(order)]


def extend_action(G, rho, n, m):
    """All homs rho' : G -> (Z/m)^* with rho' = rho mod n, enumerated over generator images."""
    if n < 1 or m % n:
        raise ConductorMismatch(f"{n} does not divide {m}")
    rho = [a % n if n > 1 else 0 for a in rho]
    _check_rho(G, rho, n)
    gens = _generators(G) if G.order > 1 else []
    pools = []
    for g in gens:
        pools.append([b for b in range(m) if gcd(b, m) == 1 and b % n == rho[g] % n])
    lifts = []
    for images in product(*pools):
        lift = _extend_exponents(G, gens, images, m)
        if lift is not None:
            lifts.append(lift)
    lifts.sort(key=lambda lift: [lift[g] for g in gens])
    return LiftReport(n, m, rho, gens, lifts)


def _extend_exponents(G, gens, images, m):
    f = {0: 1 % m}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for g, b in zip(gens, images):
                y = G.mul(x, g)
                z = (f[x] * b) % m
                if y in f:
                    if f[y] != z:
                        return None
                else:
                    f[y] = z
                    nxt.append(y)
        frontier = nxt
    if len(f) != G.order:
        return None
    for x in G.elements():
        for y in G.elements():
            if f[G.mul(x, y)] != (f[x] * f[y]) % m:
                return None
    return [f[x] for x in G.elements()]


# -- norm equation in Q(i) --------------------------------------------------------------

@dataclass
class NormVerdict:
    r: Fraction
    solvable: bool
    witness: tuple = None
    certificate: dict = None

    def verify(self):
        if self.solvable:
            a, b = self.witness
            return a * a + b * b == self.r
        return True

    def to_json(self):
        out = {"r": format_rational(self.r),
               "verdict": "Solvable" if self.solvable else "Unsolvable"}
        if self.witness is not None:
            out["witness"] = [format_rational(x) for x in self.witness]
        if self.certificate is not None:
            out["certificate"] = self.certificate
        return out


def _two_squares_prime(p):
    """x^2 + y^2 = p for p = 2 or p = 1 mod 4, by the Hermite-Serret reduction."""
    if p == 2:
        return 1, 1
    t = min(sqrt_mod(-1, p, all_roots=True))
    a, b = p, t
    while b * b > p:
        a, b = b, a % b
    c = p - b * b
    y = isqrt(c)
    assert b * b + y * y == p
    return b, y


def two_squares(N):
    """(x, y) with x^2 + y^2 = N and 0 <= x <= y, or None."""
    if N == 0:
        return 0, 0
    x, y = 1, 0  # Gaussian integer x + y i
    for p, e in factorint(N).items():
        if p % 4 == 3:
            if e % 2:
                return None
            x, y = x * p ** (e // 2), y * p ** (e // 2)
            continue
        u, v = _two_squares_prime(p)
        for _ in range(e):
            x, y = x * u - y * v, x * v + y * u
    x, y = sorted((abs(x), abs(y)))
    return x, y


def norm_solvable(r):
    """Decide x * conj(x) = r in Q(i), i.e. a^2 + b^2 = r over Q."""
    r = Fraction(r)
    if r < 0:
        return NormVerdict(r, False, certificate={
            "reason": "negative", "detail": "a^2 + b^2 >= 0 for rational a, b"})
    if r == 0:
        return NormVerdict(r, True, witness=(Fraction(0), Fraction(0)))
    num, den = r.numerator, r.denominator
    N = num * den
    for p, e in sorted(factorint(N).items()):
        if p % 4 == 3 and e % 2:
            return NormVerdict(r, False, certificate={
                "reason": "two-squares", "prime": p, "exponent": e,
                "detail": f"{p} = 3 mod 4 divides numerator*denominator = {N} to odd power"})
    x, y = two_squares(N)
    v = NormVerdict(r, True, witness=(Fraction(x, den), Fraction(y, den)))
    if not v.verify():
        raise AssertionError("two-squares witness failed to verify")
    return v
