"""Supernatural numbers and finite approximations of the Z/n-closure of F_q.

Level L of a tower is the pair C_L = F_{q^t} inside K_L = F_{q^(n t)} with
t = t_L coprime to n. The level action sends x to x^(q^s) where s = 1 mod n
and s = 0 mod t: it fixes C_L, has order n on K_L, generates the same group
as x -> x^(q^t), and restricts from one level to the previous one.
"""

import json
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import total_ordering
from itertools import product

from sympy import factorint, isprime, nextprime

from . import upoly
from .errors import BudgetExceeded, CapExceeded
from .ff import MAX_FIELD_BITS, embed, field_from_order, make_field
from .gtf import GTransformalField

INF = float("inf")
MAX_CERTIFY_DEGREE = 8
EXHAUSTIVE_SPACE = 1 << 20


def _fmt_exp(a):
    return "inf" if a == INF else str(a)


@total_ordering
class SupernaturalNumber:
    """prod p^e_p with e_p in N or inf; ``rest`` is the exponent of every unlisted prime."""

    def __init__(self, exps=None, rest=0):
        if rest not in (0, INF):
            raise ValueError("default exponent must be 0 or inf")
        self.rest = rest
        self.exps = {}
        for p, a in (exps or {}).items():
            if not isprime(p):
                raise ValueError(f"{p} is not prime")
            if a < 0:
                raise ValueError("negative exponent")
            self.exps[int(p)] = a
        if rest == 0:
            self.exps = {p: a for p, a in self.exps.items() if a != 0}
        else:
            self.exps = {p: a for p, a in self.exps.items() if a != INF}

    @classmethod
    def from_int(cls, n):
        return cls(factorint(n))

    def exponent(self, p):
        return self.exps.get(p, self.rest)

    def _primes(self, other):
        return sorted(set(self.exps) | set(other.exps))

    def _combine(self, other, op):
        rest = op(self.rest, other.rest)
        return SupernaturalNumber({p: op(self.exponent(p), other.exponent(p))
                                   for p in self._primes(other)}, rest)

    def __mul__(self, other):
        if isinstance(other, int):
            other = SupernaturalNumber.from_int(other)
        return self._combine(other, lambda a, b: a + b)

    __rmul__ = __mul__

    def lcm(self, other):
        return self._combine(other, max)

    def gcd(self, other):
        return self._combine(other, min)

    def divides(self, other):
        if self.rest > other.rest:
            return False
        return all(self.exponent(p) <= other.exponent(p) for p in self._primes(other))

    def is_finite(self):
        return self.rest == 0 and all(a != INF for a in self.exps.values())

    def __int__(self):
        if not self.is_finite():
            raise ValueError("infinite supernatural number")
        out = 1
        for p, a in self.exps.items():
            out *= p ** a
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = SupernaturalNumber.from_int(other)
        if not isinstance(other, SupernaturalNumber):
            return NotImplemented
        return self.rest == other.rest and self.exps == other.exps

    def __lt__(self, other):
        return self != other and self.divides(other)

    def __hash__(self):
        return hash((self.rest, tuple(sorted(self.exps.items()))))

    def __str__(self):
        parts = [f"{p}^{_fmt_exp(a)}" for p, a in sorted(self.exps.items())]
        if self.rest == INF:
            parts.append("rest^inf")
        return " · ".join(parts) if parts else "1"

    def __repr__(self):
        return f"SupernaturalNumber({self})"

    def to_json(self):
        return {"exponents": {str(p): _fmt_exp(a) for p, a in sorted(self.exps.items())},
                "rest": _fmt_exp(self.rest), "text": str(self)}

    @classmethod
    def from_json(cls, d):
        conv = lambda s: INF if s == "inf" else int(s)  # noqa: E731
        return cls({int(p): conv(a) for p, a in d["exponents"].items()}, conv(d["rest"]))


def closure_degree(q, n):
    """Degree over F_q of the Z/n-closure: v_p(n) at p | n, inf elsewhere."""
    if n < 1:
        raise ValueError("n must be positive")
    return SupernaturalNumber(factorint(n), rest=INF)


def constants_degree(q, n):
    """Degree over F_q of the constants of the closure: 0 at p | n, inf elsewhere."""
    if n < 1:
        raise ValueError("n must be positive")
    return SupernaturalNumber({p: 0 for p in factorint(n)}, rest=INF)


def galois_kernel_data(n, k):
    """Truncations at p^k of the closure's absolute Galois group prod_{p | n} p^a Z_p.

    Each entry is (p, a, k, order of p^a Z/p^k).
    """
    out = []
    deg = closure_degree(None, n)
    for p in sorted(deg.exps):
        a = deg.exps[p]
        out.append((p, a, k, p ** (k - a)))
    return out


def default_schedule_value(n, L):
    if L == 0:
        return 1
    primes = []
    p = 1
    while len(primes) < L:
        p = nextprime(p)
        if n % p:
            primes.append(p)
    base = 1
    for p in primes:
        base *= p
    return base ** L


def crt_exponent(n, t):
    """s with s = 1 mod n and s = 0 mod t (gcd(n, t) = 1)."""
    if t == 1:
        return 1 % n if n > 1 else 0
    return (t * pow(t, -1, n)) % (n * t) if n > 1 else 0


@dataclass
class Level:
    index: int
    t: int
    C: object
    K: object
    gtf: GTransformalField
    step: int        # s: the action is x -> x^(q^s)

    def to_json(self, q):
        return {"level": self.index, "t": self.t, "C_order": f"{q}^{self.t}",
                "K_degree_over_Fq": self.gtf.group.order * self.t,
                "C": self.C.descriptor(), "K": self.K.descriptor(),
                "action": f"x -> x^(q^{self.step})",
                "generated_by": f"x -> x^(q^{self.t})",
                "frobenius_exponent": self.gtf.exponents[1] if self.gtf.group.order > 1 else 0}


class ClosureTower:
    def __init__(self, q, n, schedule=None, max_bits=MAX_FIELD_BITS):
        if n < 1:
            raise ValueError("n must be positive")
        self.base = field_from_order(q)
        self.q, self.n = q, n
        self.p, self.f = self.base.p, self.base.k
        self.max_bits = max_bits
        self.custom = list(schedule) if schedule is not None else None
        if self.custom is not None:
            self._validate(self.custom)
        self._levels = {}

    def _validate(self, ts):
        for i, t in enumerate(ts):
            if t < 1 or _gcd(t, self.n) != 1:
                raise ValueError(f"t = {t} shares a factor with n = {self.n}")
            if i and t % ts[i - 1]:
                raise ValueError(f"schedule must be a divisibility chain: {ts[i - 1]} does not divide {t}")

    def t(self, L):
        if self.custom is not None:
            if L >= len(self.custom):
                raise BudgetExceeded(f"schedule has only {len(self.custom)} levels")
            return self.custom[L]
        return default_schedule_value(self.n, L)

    def degree_bits(self, L):
        return self.f * self.n * self.t(L) * self.p.bit_length()

    def available_levels(self):
        """Levels whose top field fits in max_bits."""
        out = []
        L = 0
        while True:
            try:
                k = self.f * self.n * self.t(L)
            except BudgetExceeded:
                break
            if (self.p ** k).bit_length() - 1 > self.max_bits:
                break
            out.append(L)
            L += 1
        return out

    def level(self, L):
        if L in self._levels:
            return self._levels[L]
        t = self.t(L)
        kC = self.f * t
        kK = self.f * self.n * t
        if (self.p ** kK).bit_length() - 1 > self.max_bits:
            raise BudgetExceeded(f"level {L} needs F_{self.p}^{kK}, beyond {self.max_bits} bits")
        C = make_field(self.p, kC)
        K = make_field(self.p, kK)
        s = crt_exponent(self.n, t)
        Ks = GTransformalField.cyclic_frobenius(K, self.n, self.f * s)
        lev = Level(L, t, C, K, Ks, s)
        self._levels[L] = lev
        return lev

    def level_field(self, L):
        lev = self.level(L)
        return lev.C, lev.K, lev.gtf

    def embedding(self, L):
        """K_L -> K_{L+1}."""
        return embed(self.level(L).K, self.level(L + 1).K)

    def check_level(self, L):
        """[K:C] = n, action of exact order n fixing C."""
        lev = self.level(L)
        K, Ks = lev.K, lev.gtf
        cons = Ks.constants
        deg_ok = cons.degree == self.n and cons.field == lev.C
        g = K.gen
        order = 1
        x = Ks.sigma(1 % self.n, g) if self.n > 1 else g
        while x != g:
            x = Ks.sigma(1, x)
            order += 1
        return deg_ok and order == self.n

    def check_commuting(self, L):
        """sigma_{L+1} o iota = iota o sigma_L on the generator of K_L."""
        iota = self.embedding(L)
        a, b = self.level(L).gtf, self.level(L + 1).gtf
        g = self.level(L).K.gen
        return all(b.sigma(k, iota(g)) == iota(a.sigma(k, g)) for k in range(self.n))

    def probe(self, L):
        """A degree-p irreducible over C_L that stays irreducible over K_L, p the least prime not dividing n t_L."""
        lev = self.level(L)
        m = self.n * lev.t
        d = 2
        while m % d == 0 or not isprime(d):
            d += 1
        C = lev.C
        f = first_irreducible(C, d)
        iota = embed(C, lev.K)
        g = [iota(c) for c in f]
        _, facs = upoly.factor(lev.K, g)
        irreducible = len(facs) == 1 and facs[0][1] == 1
        return {"level": L, "degree": d, "polynomial": [C.rank(c) for c in f],
                "irreducible_over_K": irreducible}

    def to_json(self):
        return {"q": self.q, "n": self.n,
                "schedule": [self.t(L) for L in sorted(self._levels)],
                "custom_schedule": self.custom,
                "levels": [self._levels[L].to_json(self.q) for L in sorted(self._levels)]}

    @classmethod
    def from_json(cls, d):
        T = cls(d["q"], d["n"], schedule=d.get("custom_schedule"))
        for lev in d.get("levels", []):
            T.level(lev["level"])
        return T


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def first_irreducible(C, d):
    """Monic irreducible of degree d over C with the smallest rank vector (top coefficient down)."""
    q = C.order
    for r in range(q ** d):
        coeffs = []
        x = r
        for _ in range(d):
            x, c = divmod(x, q)
            coeffs.append(c)
        f = coeffs + [C.one]
        if f[0] != C.zero and upoly.is_irreducible(C, f):
            return f
    raise AssertionError("irreducible polynomials exist in every degree")


# -- certification ---------------------------------------------------------------

@dataclass
class CertificationReport:
    q: int
    n: int
    base_level: int
    degree: int
    budget: int
    exhaustive: bool
    rows: list = field(default_factory=list)   # {polynomial, degree, first_split_level, t}
    survivors: list = field(default_factory=list)
    sample_seed: int = None

    @property
    def status(self):
        return "Fail" if self.survivors else "Pass"

    def first_split(self, poly):
        for row in self.rows:
            if row["polynomial"] == list(poly):
                return row["first_split_level"]
        return None

    def to_json(self):
        return {"q": self.q, "n": self.n, "base_level": self.base_level,
                "degree_bound": self.degree, "level_budget": self.budget,
                "exhaustive": self.exhaustive, "sample_seed": self.sample_seed,
                "status": self.status, "certified": self.rows, "survivors": self.survivors}


def _monic_polys(C, d):
    q = C.order
    for tail in product(range(q), repeat=d):
        yield list(reversed(tail)) + [C.one]


def certify_gclosed(T, D, B, L0=0, seed=0, samples=64, workers=1):
    """For every monic f over C_L0 of degree 2..D irreducible over K_L0, the least level
    L' <= B at which f is reducible over K_L'."""
    if D > MAX_CERTIFY_DEGREE:
        raise CapExceeded(f"degree bound {D} above cap {MAX_CERTIFY_DEGREE}")
    avail = T.available_levels()
    if B not in avail or L0 not in avail or L0 > B:
        raise CapExceeded(f"level budget {B} outside the constructible levels {avail}")
    lev0 = T.level(L0)
    C, K = lev0.C, lev0.K
    space = C.order ** (D + 1)
    exhaustive = space <= EXHAUSTIVE_SPACE
    rep = CertificationReport(T.q, T.n, L0, D, B, exhaustive,
                              sample_seed=None if exhaustive else seed)
    if D < 2:
        return rep
    rng = random.Random(seed)
    cands = []
    for d in range(2, D + 1):
        if exhaustive:
            cands.extend(_monic_polys(C, d))
        else:
            for _ in range(samples):
                cands.append([C.random_element(rng) for _ in range(d)] + [C.one])
    if workers > 1 and len(cands) >= 2 * workers:
        size = -(-len(cands) // workers)
        jobs = [(T.q, T.n, T.custom, L0, B, cands[i:i + size])
                for i in range(0, len(cands), size)]
        with ProcessPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(_certify_chunk, jobs))
    else:
        parts = [_certify_chunk((T, L0, B, cands))]
    for entries in parts:
        for entry in entries:
            (rep.rows if "first_split_level" in entry else rep.survivors).append(entry)
    return rep


def _certify_chunk(args):
    if len(args) == 6:
        q, n, custom, L0, B, cands = args
        T = ClosureTower(q, n, schedule=custom)
    else:
        T, L0, B, cands = args
    C = T.level(L0).C
    out = []
    for f in cands:
        if not _irreducible_over(C, T.level(L0).K, f):
            continue
        entry = {"polynomial": [C.rank(c) for c in f], "degree": len(f) - 1}
        for L in range(L0 + 1, B + 1):
            if not _irreducible_over(C, T.level(L).K, f):
                entry["first_split_level"] = L
                entry["t"] = T.t(L)
                break
        out.append(entry)
    return out


def _irreducible_over(C, K, f):
    iota = embed(C, K)
    return upoly.is_irreducible(K, [iota(c) for c in f])


def save_tower(T, path, certification=None):
    data = T.to_json()
    if certification is not None:
        data["certification"] = certification.to_json()
    with open(path, "w") as fh:
        json.dump(data, fh, indent=2, sort_keys=True)


def load_tower(path):
    with open(path) as fh:
        return ClosureTower.from_json(json.load(fh))
