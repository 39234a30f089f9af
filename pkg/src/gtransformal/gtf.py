"""Fields with an action of a finite group: constants, strictness, the
structure-constant encoding over the constants, and the one-step extension
that adds a generic point of a zero-dimensional invariant prime ideal.
"""

import random
from dataclasses import dataclass
from functools import cached_property, reduce
from math import gcd
from typing import Optional

from . import linalg, upoly
from .errors import (HypothesesFail, InvalidTensors, NotABasis, NotAHomomorphism,
                     NotStrict, NotZeroDimensional, Unsupported)
from .ff import ExtField, embed, make_field, subfield
from .groebner import (QuotientAlgebra, _linear_forms, contains_properly, dimension_zero,
                       is_g_invariant, is_prime_zero_dim)
from .groups import left_translation_action
from .poly import PolyRing, TwistedAction, evaluate, sigma_tuple

EXHAUSTIVE_LIMIT = 4096


@dataclass
class Constants:
    """The fixed field C = K^G with its inclusion into K and the degree [K:C]."""

    field: object
    embedding: object
    degree: int

    def __call__(self, x):
        return self.embedding(x)


class GTransformalField:
    """A field K with a homomorphism G -> Aut(K), k -> sigma_k.

    ``kind`` is 'frobenius' (exponents r_k: sigma_k(x) = x^(p^r_k)),
    'cyclotomic' (exponents a_k: zeta -> zeta^a_k) or 'algebra' (a field
    rebuilt from structure constants).
    """

    def __init__(self, field, group, kind, exponents=None, sigma=None, check=True):
        self.field = field
        self.group = group
        self.kind = kind
        self.exponents = tuple(exponents) if exponents is not None else None
        self._sigma = sigma
        if check:
            self._check_hom()

    def __repr__(self):
        return f"GTransformalField({self.field!r}, {self.group!r}, {self.kind}={self.exponents})"

    @classmethod
    def frobenius(cls, F, group, exponents):
        exps = tuple(r % F.k for r in exponents)
        return cls(F, group, "frobenius", exps)

    @classmethod
    def cyclic_frobenius(cls, F, n, step=1):
        """Z/n acting through x -> x^(p^step)."""
        from .groups import cyclic_group
        return cls.frobenius(F, cyclic_group(n), [k * step for k in range(n)])

    @classmethod
    def cyclotomic(cls, K, group, exponents):
        return cls(K, group, "cyclotomic", tuple(a % K.n for a in exponents))

    def _check_hom(self):
        G = self.group
        if self.kind == "frobenius":
            if len(self.exponents) != G.order:
                raise NotAHomomorphism("one Frobenius exponent per group element is needed")
            if self.exponents[0] != 0:
                raise NotAHomomorphism("identity must act trivially")
            k = self.field.k
            for a in G.elements():
                for b in G.elements():
                    if self.exponents[G.mul(a, b)] != (self.exponents[a] + self.exponents[b]) % k:
                        raise NotAHomomorphism(f"sigma fails on the pair ({a}, {b})")
        elif self.kind == "cyclotomic":
            n = self.field.n
            if len(self.exponents) != G.order:
                raise NotAHomomorphism("one exponent per group element is needed")
            if any(gcd(a, n) != 1 for a in self.exponents) and n > 1:
                raise NotAHomomorphism("exponents must be units")
            for a in G.elements():
                for b in G.elements():
                    if self.exponents[G.mul(a, b)] % n != (self.exponents[a] * self.exponents[b]) % n:
                        raise NotAHomomorphism(f"sigma fails on the pair ({a}, {b})")

    def sigma(self, k, x):
        if self.kind == "frobenius":
            return self.field.frobenius(x, self.exponents[k])
        if self.kind == "cyclotomic":
            return self.field.apply_aut(x, self.exponents[k])
        return self._sigma(k, x)

    def twisted_action(self):
        return TwistedAction(left_translation_action(self.group), self.field, self.sigma)

    def ring(self, n=1, order="grevlex"):
        return PolyRing(self.field, self.group.order, n, order)

    @cached_property
    def constants(self):
        return constants(self)

    def is_strict(self):
        return is_strict(self)

    def to_json(self):
        return {"field": self.field.descriptor(), "group": self.group.to_json(),
                "group_name": self.group.name, "kind": self.kind,
                "exponents": list(self.exponents) if self.exponents is not None else None}


def constants(Ks):
    """The fixed field of all sigma_k."""
    F = Ks.field
    if Ks.kind == "frobenius":
        d = reduce(gcd, Ks.exponents, F.k)
        C, emb = subfield(F, d)
        return Constants(C, emb, F.k // d)
    if Ks.kind == "cyclotomic":
        from .cyclotomic import QQ, units
        H = {a % F.n for a in Ks.exponents}
        full = set(units(F.n))
        if H == full or F.n <= 2:
            return Constants(QQ, F.from_rational, F.degree)
        return Constants(None, None, len(H))
    if Ks.kind == "algebra":
        A = Ks.field
        return Constants(A.base, A.embed_base, A.e)
    raise Unsupported(f"no constants computation for kind {Ks.kind}")


def is_strict(Ks):
    return constants(Ks).degree == Ks.group.order


# -- structure constants ------------------------------------------------------------

@dataclass
class StructureConstants:
    """c[i][j] = coordinates of v_i v_j, d[k][j] = coordinates of sigma_k(v_j)."""

    base: object
    e: int
    c: list
    d: list
    basis: list
    group: object

    def to_json(self):
        B = self.base
        return {"base": B.descriptor(), "e": self.e,
                "c": [[[B.rank(x) for x in row] for row in plane] for plane in self.c],
                "d": [[[B.rank(x) for x in row] for row in plane] for plane in self.d],
                "basis": list(self.basis)}


class _Coordinates:
    """Coordinates over C of elements of a finite K, through F_p linear algebra."""

    def __init__(self, K, C, iota, basis):
        self.K, self.C, self.iota, self.basis = K, C, iota, basis
        P = make_field(K.p)
        self.P = P
        gamma = C.gen if C.k > 1 else C.one
        self.cpow = [C.pow(gamma, t) for t in range(C.k)]
        cols = [K.to_vec(K.mul(iota(w), v)) for v in basis for w in self.cpow]
        if len(cols) != K.k or linalg.rank(P, cols) != K.k:
            raise NotABasis("the given elements are not a basis over the constants")
        self.M = linalg.transpose(cols)

    def __call__(self, x):
        y = linalg.solve(self.P, self.M, self.K.to_vec(x))
        C = self.C
        out = []
        for i in range(len(self.basis)):
            acc = C.zero
            for t in range(C.k):
                acc = C.add(acc, C.mul(C.from_int(y[i * C.k + t]), self.cpow[t]))
            out.append(acc)
        return out


def structure_constants(Ks, basis):
    F = Ks.field
    if not isinstance(F, ExtField):
        raise Unsupported("structure constants are implemented for finite carriers")
    if not is_strict(Ks):
        raise NotStrict(f"[K:C] = {constants(Ks).degree} but |G| = {Ks.group.order}")
    cons = constants(Ks)
    e = Ks.group.order
    if len(basis) != e:
        raise NotABasis(f"need {e} basis elements, got {len(basis)}")
    coords = _Coordinates(F, cons.field, cons.embedding, list(basis))
    c = [[coords(F.mul(vi, vj)) for vj in basis] for vi in basis]
    d = [[coords(Ks.sigma(k, vj)) for vj in basis] for k in range(e)]
    return StructureConstants(cons.field, e, c, d, list(basis), Ks.group)


def coordinates(Ks, basis):
    """The map f: K -> C^e of the encoding, as a callable."""
    cons = constants(Ks)
    return _Coordinates(Ks.field, cons.field, cons.embedding, list(basis))


class AlgebraField:
    """C^e with the multiplication given by the tensor c."""

    def __init__(self, S):
        self.S = S
        self.base = S.base
        self.e = S.e
        C = S.base
        self.zero = tuple([C.zero] * S.e)
        self.one = tuple([C.one] + [C.zero] * (S.e - 1))
        self.p = getattr(C, "p", 0)

    def __eq__(self, other):
        return isinstance(other, AlgebraField) and other.S is self.S

    def __hash__(self):
        return id(self.S)

    def is_finite(self):
        return self.base.is_finite()

    @property
    def order(self):
        return self.base.order ** self.e

    def descriptor(self):
        return {"algebra": self.S.to_json()}

    def embed_base(self, a):
        C = self.base
        return tuple([a] + [C.zero] * (self.e - 1))

    def from_int(self, n):
        return self.embed_base(self.base.from_int(n))

    def add(self, x, y):
        return tuple(self.base.add(a, b) for a, b in zip(x, y))

    def sub(self, x, y):
        return tuple(self.base.sub(a, b) for a, b in zip(x, y))

    def neg(self, x):
        return tuple(self.base.neg(a) for a in x)

    def mul(self, x, y):
        C, c = self.base, self.S.c
        out = [C.zero] * self.e
        for i, a in enumerate(x):
            if a == C.zero:
                continue
            for j, b in enumerate(y):
                if b == C.zero:
                    continue
                ab = C.mul(a, b)
                for l, t in enumerate(c[i][j]):
                    if t != C.zero:
                        out[l] = C.add(out[l], C.mul(ab, t))
        return tuple(out)

    def _mult_matrix(self, x):
        cols = []
        for t in range(self.e):
            u = [self.base.zero] * self.e
            u[t] = self.base.one
            cols.append(list(self.mul(x, tuple(u))))
        return linalg.transpose(cols)

    def inv(self, x):
        sol = linalg.solve(self.base, self._mult_matrix(x), list(self.one))
        if sol is None or self.mul(x, tuple(sol)) != self.one:
            raise InvalidTensors(f"{x} has no inverse")
        return tuple(sol)

    def div(self, x, y):
        return self.mul(x, self.inv(y))

    def pow(self, x, n):
        if n < 0:
            x, n = self.inv(x), -n
        result = self.one
        while n:
            if n & 1:
                result = self.mul(result, x)
            n >>= 1
            if n:
                x = self.mul(x, x)
        return result

    def frobenius(self, x, r=1):
        return self.pow(x, self.base.p ** r)

    def act(self, k, x):
        C, d = self.base, self.S.d
        out = [C.zero] * self.e
        for j, a in enumerate(x):
            if a == C.zero:
                continue
            for l, t in enumerate(d[k][j]):
                if t != C.zero:
                    out[l] = C.add(out[l], C.mul(a, t))
        return tuple(out)

    def elements(self):
        from itertools import product
        return (tuple(v) for v in product(list(self.base.elements()), repeat=self.e))

    def random_element(self, rng):
        return tuple(self.base.random_element(rng) for _ in range(self.e))


def _sample(A, limit, seed):
    if A.is_finite() and A.order <= limit:
        return list(A.elements())
    rng = random.Random(seed)
    return [A.random_element(rng) for _ in range(64)]


def reconstruct(S, check_limit=EXHAUSTIVE_LIMIT, seed=0):
    """Rebuild (C^e, +, *, sigma~) from structure constants, checking the field and action axioms."""
    A = AlgebraField(S)
    e = S.e
    C = S.base
    basis_vecs = []
    for t in range(e):
        u = [C.zero] * e
        u[t] = C.one
        basis_vecs.append(tuple(u))
    # associativity and commutativity on basis vectors determine them everywhere
    for x in basis_vecs:
        if A.mul(A.one, x) != x:
            raise InvalidTensors("(1,0,...,0) is not a unit")
        for y in basis_vecs:
            if A.mul(x, y) != A.mul(y, x):
                raise InvalidTensors("multiplication is not commutative")
            for z in basis_vecs:
                if A.mul(A.mul(x, y), z) != A.mul(x, A.mul(y, z)):
                    raise InvalidTensors("multiplication is not associative")
    for x in _sample(A, check_limit, seed):
        if x != A.zero:
            A.inv(x)
    G = S.group
    for k in range(e):
        for x in basis_vecs:
            for y in basis_vecs:
                if A.act(k, A.mul(x, y)) != A.mul(A.act(k, x), A.act(k, y)):
                    raise InvalidTensors(f"sigma~_{k + 1} is not multiplicative")
        if A.act(k, A.one) != A.one:
            raise InvalidTensors(f"sigma~_{k + 1} does not fix 1")
    for a in G.elements():
        for b in G.elements():
            for x in basis_vecs:
                if A.act(G.mul(a, b), x) != A.act(a, A.act(b, x)):
                    raise InvalidTensors("sigma~ is not a group action")
    return GTransformalField(A, G, "algebra", sigma=A.act, check=False)


@dataclass
class IsomorphismCheck:
    checked: int
    exhaustive: bool
    ok: bool


def verify_isomorphism(Ks, S, Ls, check_limit=EXHAUSTIVE_LIMIT, seed=0):
    """Check that f = coordinates respects +, *, and every sigma_k, and is bijective."""
    f = coordinates(Ks, S.basis)
    A = Ls.field
    F = Ks.field
    elems = _sample(F, check_limit, seed)
    exhaustive = F.order <= check_limit
    img = {x: tuple(f(x)) for x in elems}
    ok = True
    if exhaustive and len(set(img.values())) != F.order:
        ok = False
    rng = random.Random(seed)
    pairs = ([(x, y) for x in elems for y in elems] if len(elems) <= 64
             else [(rng.choice(elems), rng.choice(elems)) for _ in range(2048)])
    for x, y in pairs:
        if tuple(f(F.mul(x, y))) != A.mul(img[x], img[y]):
            ok = False
            break
        if tuple(f(F.add(x, y))) != A.add(img[x], img[y]):
            ok = False
            break
    for k in range(Ks.group.order):
        for x in elems:
            if tuple(f(Ks.sigma(k, x))) != Ls.sigma(k, img[x]):
                ok = False
                break
    return IsomorphismCheck(len(elems), exhaustive, ok)


def commuting_square(Ks, Ks2, iota, basis):
    """f2 o iota == (coordinatewise iota_C) o f, for a basis of K kept as a basis of K2.

    Returns (ok, iota_C). Raises NotABasis if the basis does not stay independent.
    """
    C1, C2 = constants(Ks), constants(Ks2)
    f1 = coordinates(Ks, basis)
    image_basis = [iota(v) for v in basis]
    f2 = coordinates(Ks2, image_basis)
    iota_C = embed(C1.field, C2.field)
    # the constants embedding must agree with iota on C1
    for x in _sample(C1.field, 256, 0):
        if iota(C1(x)) != C2(iota_C(x)):
            return False, iota_C
    for x in _sample(Ks.field, 256, 0):
        if f2(iota(x)) != [iota_C(a) for a in f1(x)]:
            return False, iota_C
    return True, iota_C


# -- the extension step ----------------------------------------------------------------

@dataclass
class ExtensionResult:
    field: GTransformalField
    point: list              # a in L^n (block-1 coordinates)
    embedding: object        # K -> L
    full_point: list         # sigma_tuple(a), block-major
    frobenius_exponents: list

    def to_json(self):
        L = self.field.field
        return {"field": L.descriptor(), "order": L.order,
                "frobenius_exponents": self.frobenius_exponents,
                "point": list(self.point), "sigma_tuple": list(self.full_point)}


def check_extension_hypotheses(Ks, I, J):
    A = Ks.twisted_action()
    failed = []
    notes = []
    if not is_g_invariant(I, A):
        failed.append("invariance")
    if not dimension_zero(I):
        raise NotZeroDimensional("extension step needs a zero-dimensional ideal")
    v = is_prime_zero_dim(I)
    if not v.is_prime:
        failed.append("primality")
        notes.append(v.reason)
    if not contains_properly(I, J):
        failed.append("containment")
    return failed, v


def extend_step(Ks, I, J, seed=0):
    """Adjoin the generic point of K[X]/I; returns L, a, and the embedding K -> L."""
    K = Ks.field
    if not isinstance(K, ExtField) or Ks.kind != "frobenius":
        raise Unsupported("extension step needs a finite carrier with a Frobenius action")
    failed, _ = check_extension_hypotheses(Ks, I, J)
    if failed:
        raise HypothesesFail(f"hypotheses failed: {', '.join(failed)}", failed)
    qa = QuotientAlgebra(I)
    D = qa.dim
    L = make_field(K.p, K.k * D)
    iota = embed(K, L)

    # primitive element theta with minimal polynomial mu of degree D
    rng = random.Random(seed)
    for theta in _linear_forms(qa, rng, 256):
        mu = qa.minimal_polynomial(theta)
        if len(mu) - 1 == D:
            break
    else:
        raise AssertionError("no primitive element found for a prime zero-dimensional ideal")
    M = qa.mult_matrix(theta)
    powers = [qa.one()]
    for _ in range(D - 1):
        powers.append(linalg.mat_vec(K, M, powers[-1]))
    P = linalg.transpose(powers)
    hs = []
    for x in qa.ring.gens():
        h = linalg.solve(K, P, qa.to_vec(x))
        hs.append(h)
    mu_L = [iota(c) for c in mu]
    t = upoly.roots(L, mu_L)[0]
    point = [upoly.evaluate(L, [iota(c) for c in h], t) for h in hs]

    # sigma'_g = Frobenius^s with s = r_g mod k and sigma'_g(P_{i,j}) = P_{g*i, j}
    G = Ks.group
    n = I.ring.n
    e = G.order
    s_exps = []
    for g in G.elements():
        r = Ks.exponents[g]
        found = None
        for s in range(r, L.k, K.k):
            if all(L.frobenius(point[i * n + j], s) == point[G.mul(g, i) * n + j]
                   for i in range(e) for j in range(n)):
                found = s
                break
        if found is None:
            raise AssertionError(f"no Frobenius power extends sigma_{g + 1} to the generic point")
        s_exps.append(found)
    Ls = GTransformalField.frobenius(L, G, s_exps)
    for x in K.elements() if K.order <= 256 else [K.gen]:
        for g in G.elements():
            if Ls.sigma(g, iota(x)) != iota(Ks.sigma(g, x)):
                raise AssertionError("extended action does not restrict to sigma")
    a = point[:n]
    full = sigma_tuple(Ls.twisted_action(), a)
    if full != point:
        raise AssertionError("sigma_tuple(a) differs from the generic point")
    ringL = PolyRing(L, e, n, I.ring.order)
    for f in I.gens:
        if evaluate(f.map_coeffs(iota, ringL), full) != L.zero:
            raise AssertionError("generic point is not on V(I)")
    if all(evaluate(g.map_coeffs(iota, ringL), full) == L.zero for g in J.gens):
        raise AssertionError("generic point lies on V(J)")
    return ExtensionResult(Ls, a, iota, full, s_exps)
