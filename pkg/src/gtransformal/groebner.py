"""Buchberger's algorithm and the ideal predicates behind the axiom checker.

Pairs are selected by the normal strategy with sugar: smallest sugar degree
first, ties broken by the term order of the pair's lcm and then by the pair
indices, so every run produces the same reduced basis.
"""

import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional

from . import linalg, upoly
from .errors import BudgetExceeded, InfiniteField, LayoutMismatch, NotZeroDimensional
from .poly import MultiPoly, apply_twisted

DEFAULT_PAIR_BUDGET = 20000


class Ideal:
    """An ideal of K[X_1..X_e] given by generators; the reduced basis is computed lazily."""

    def __init__(self, ring, gens=()):
        self.ring = ring
        clean = []
        for g in gens:
            ring.check_same(g.ring)
            if not g.is_zero():
                clean.append(g.with_ring(ring))
        self.gens = tuple(clean)
        self._gb = None

    def __repr__(self):
        return f"Ideal({', '.join(map(str, self.gens))})"

    def groebner(self, budget=DEFAULT_PAIR_BUDGET):
        if self._gb is None:
            self._gb = buchberger(self, budget=budget)
        return self._gb

    def __add__(self, other):
        if isinstance(other, Ideal):
            return Ideal(self.ring, self.gens + other.gens)
        return Ideal(self.ring, self.gens + tuple(other))

    def __eq__(self, other):
        return isinstance(other, Ideal) and self.groebner().polys == other.groebner().polys

    def __hash__(self):
        return hash(self.groebner().polys)

    def is_unit(self):
        return self.groebner().is_unit()


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced, monic, sorted by leading monomial (ascending)."""

    ring: object
    polys: tuple

    @property
    def order(self):
        return self.ring.order

    def leading_monomials(self):
        return [g.lm() for g in self.polys]

    def is_unit(self):
        return len(self.polys) == 1 and self.polys[0].is_constant()

    def reduce(self, f):
        return normal_form(f, self.polys)

    def __len__(self):
        return len(self.polys)

    def __iter__(self):
        return iter(self.polys)


# -- core reduction -------------------------------------------------------------

def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _sub_exp(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _add_exp(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _axpy(F, h, c, mono, g):
    """h - c * mono * g, in place on the dict h."""
    for exp, gc in g.items():
        e = _add_exp(exp, mono)
        v = F.sub(h.get(e, F.zero), F.mul(c, gc))
        if v == F.zero:
            h.pop(e, None)
        else:
            h[e] = v


def _nf_dict(F, key, h, basis):
    """Full normal form of dict h modulo a list of (lm, lc, dict) triples."""
    h = dict(h)
    rem = {}
    while h:
        exp = max(h, key=key)
        c = h[exp]
        for lm, lc, g in basis:
            if _divides(lm, exp):
                _axpy(F, h, F.div(c, lc), _sub_exp(exp, lm), g)
                break
        else:
            rem[exp] = c
            del h[exp]
    return rem


def normal_form(f, polys):
    ring = f.ring
    F, key = ring.field, ring.key
    basis = [(g.lm(), g.lc(), g.terms) for g in polys]
    return MultiPoly(ring, _nf_dict(F, key, f.terms, basis))


# -- Buchberger -------------------------------------------------------------------

def _spoly(F, lm1, lc1, g1, lm2, lc2, g2):
    L = _lcm(lm1, lm2)
    h = {}
    m1 = _sub_exp(L, lm1)
    for exp, c in g1.items():
        h[_add_exp(exp, m1)] = F.div(c, lc1)
    _axpy(F, h, F.inv(lc2), _sub_exp(L, lm2), g2)
    return h


def buchberger(I, order=None, budget=DEFAULT_PAIR_BUDGET):
    """Reduced Groebner basis of I for ``order`` (default: the ring's order)."""
    ring = I.ring if order is None else I.ring.with_order(order)
    F, key = ring.field, ring.key
    basis = []      # list of (lm, lc, dict, sugar)
    pending = {}    # (i, j) -> (sugar, lcm)
    processed = 0

    def add(h, sugar):
        lm = max(h, key=key)
        lc = h[lm]
        inv = F.inv(lc)
        h = {e: F.mul(c, inv) for e, c in h.items()}
        idx = len(basis)
        basis.append((lm, F.one, h, sugar))
        for i, (lmi, _, _, si) in enumerate(basis[:-1]):
            L = _lcm(lmi, lm)
            s = max(si + sum(L) - sum(lmi), sugar + sum(L) - sum(lm))
            pending[(i, idx)] = (s, L)

    for g in sorted(I.gens, key=lambda g: (key(g.lm()), sorted(g.terms.items()))):
        h = _nf_dict(F, key, g.terms, [b[:3] for b in basis])
        if h:
            add(h, max(sum(e) for e in g.terms))

    while pending:
        pair = min(pending, key=lambda p: (pending[p][0], key(pending[p][1]), p))
        s, L = pending.pop(pair)
        i, j = pair
        lmi, lci, gi, _ = basis[i]
        lmj, lcj, gj, _ = basis[j]
        # product criterion
        if all(a == 0 or b == 0 for a, b in zip(lmi, lmj)):
            continue
        # chain criterion
        if any(k != i and k != j and _divides(basis[k][0], L)
               and (min(i, k), max(i, k)) not in pending
               and (min(j, k), max(j, k)) not in pending
               for k in range(len(basis))):
            continue
        processed += 1
        if processed > budget:
            raise BudgetExceeded(f"more than {budget} S-pairs reduced")
        h = _spoly(F, lmi, lci, gi, lmj, lcj, gj)
        h = _nf_dict(F, key, h, [b[:3] for b in basis])
        if h:
            add(h, s)

    return GroebnerBasis(ring, _reduce_basis(ring, [b[2] for b in basis]))


def _reduce_basis(ring, polys):
    F, key = ring.field, ring.key
    polys = [p for p in polys if p]
    # drop elements whose leading monomial is divisible by another's
    lms = [max(p, key=key) for p in polys]
    keep = []
    for i, p in enumerate(polys):
        if any(j != i and _divides(lms[j], lms[i]) and (lms[j] != lms[i] or j < i)
               for j in range(len(polys))):
            continue
        keep.append(p)
    out = []
    for i, p in enumerate(keep):
        others = [(max(q, key=key), q[max(q, key=key)], q) for j, q in enumerate(keep) if j != i]
        lm = max(p, key=key)
        lc = p[lm]
        rest = {e: c for e, c in p.items() if e != lm}
        r = _nf_dict(F, key, rest, others)
        r[lm] = lc
        inv = F.inv(lc)
        out.append(MultiPoly(ring, {e: F.mul(c, inv) for e, c in r.items()}))
    out.sort(key=lambda g: key(g.lm()))
    return tuple(out)


# -- ideal predicates -------------------------------------------------------------

def member(f, I):
    if f.is_zero():
        return True
    return I.groebner().reduce(f).is_zero()


def contains_properly(I, J):
    """I strictly inside J."""
    I.ring.check_same(J.ring)
    return (all(member(f, J) for f in I.gens)
            and any(not member(g, I) for g in J.gens))


def is_g_invariant(I, A):
    if I.ring.e != A.e:
        raise LayoutMismatch(f"ideal has {I.ring.e} blocks, action has {A.e}")
    for k in range(A.e):
        for f in I.gens:
            if not member(apply_twisted(A, k, f), I):
                return False
    for k in range(A.e):
        image = Ideal(I.ring, [apply_twisted(A, k, f) for f in I.gens])
        if image.groebner().polys != I.groebner().polys:
            raise AssertionError(f"sigma_{k + 1}(I) is contained in I but differs from it")
    return True


def dimension_zero(I):
    gb = I.groebner()
    nv = I.ring.nvars
    pure = set()
    for lm in gb.leading_monomials():
        support = [v for v, a in enumerate(lm) if a]
        if len(support) == 1:
            pure.add(support[0])
        elif not support:
            return True  # unit ideal
    return len(pure) == nv


def quotient_basis(I):
    """Standard monomials, ascending in the term order."""
    if not dimension_zero(I):
        raise NotZeroDimensional("quotient is infinite dimensional")
    gb = I.groebner()
    lms = gb.leading_monomials()
    nv = I.ring.nvars
    start = (0,) * nv
    if any(_divides(lm, start) for lm in lms):
        return []
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for m in frontier:
            for v in range(nv):
                t = m[:v] + (m[v] + 1,) + m[v + 1:]
                if t not in seen and not any(_divides(lm, t) for lm in lms):
                    seen.add(t)
                    nxt.append(t)
        frontier = nxt
    return sorted(seen, key=I.ring.key)


class QuotientAlgebra:
    """K[X]/I for zero-dimensional I, with elements as coordinate vectors."""

    def __init__(self, I):
        self.ideal = I
        self.ring = I.ring
        self.field = I.ring.field
        self.gb = I.groebner()
        self.monomials = quotient_basis(I)
        self.index = {m: i for i, m in enumerate(self.monomials)}
        self.dim = len(self.monomials)

    def to_vec(self, f):
        r = self.gb.reduce(f)
        F = self.field
        v = [F.zero] * self.dim
        for exp, c in r.terms.items():
            v[self.index[exp]] = c
        return v

    def to_poly(self, v):
        return MultiPoly(self.ring, {m: c for m, c in zip(self.monomials, v)
                                     if c != self.field.zero})

    def one(self):
        return self.to_vec(self.ring.one())

    @cached_property
    def _monomial_matrices(self):
        # column t of matrix for m: coordinates of m * monomials[t]
        mats = []
        for m in self.monomials:
            cols = [self.to_vec(MultiPoly(self.ring, {_add_exp(m, t): self.field.one}))
                    for t in self.monomials]
            mats.append(linalg.transpose(cols))
        return mats

    def mult_matrix(self, u):
        F = self.field
        D = self.dim
        M = [[F.zero] * D for _ in range(D)]
        for c, Mm in zip(u, self._monomial_matrices):
            if c == F.zero:
                continue
            for r in range(D):
                row, src = M[r], Mm[r]
                for s in range(D):
                    if src[s] != F.zero:
                        row[s] = F.add(row[s], F.mul(c, src[s]))
        return M

    def mul(self, u, v):
        return linalg.mat_vec(self.field, self.mult_matrix(u), v)

    def pow(self, u, n):
        result = self.one()
        base = u
        while n:
            if n & 1:
                result = self.mul(result, base)
            n >>= 1
            if n:
                base = self.mul(base, base)
        return result

    def is_zero(self, v):
        return all(c == self.field.zero for c in v)

    def minimal_polynomial(self, u):
        """Monic minimal polynomial of u over K, via the Krylov sequence."""
        F = self.field
        M = self.mult_matrix(u)
        powers = [self.one()]
        while True:
            nxt = linalg.mat_vec(F, M, powers[-1])
            A = linalg.transpose(powers)
            sol = linalg.solve(F, A, nxt)
            if sol is not None:
                # u^d = sum sol_i u^i
                return upoly.trim(F, [F.neg(c) for c in sol] + [F.one])
            powers.append(nxt)

    def frobenius_matrix(self):
        """Matrix of the K-linear map x -> x^|K| on the monomial basis."""
        q = self.field.order
        cols = []
        for t in range(self.dim):
            e = [self.field.zero] * self.dim
            e[t] = self.field.one
            cols.append(self.pow(e, q))
        return linalg.transpose(cols)


# -- primality --------------------------------------------------------------------

@dataclass
class PrimalityVerdict:
    status: str                     # "Prime" | "NotPrime" | "Unknown"
    witness: Optional[tuple] = None  # (f, g) with f g in I, f, g not in I
    reason: str = ""
    factors: list = field(default_factory=list)

    @property
    def is_prime(self):
        return self.status == "Prime"

    def verify(self, I):
        if self.status != "NotPrime" or self.witness is None:
            return True
        f, g = self.witness
        return member(f * g, I) and not member(f, I) and not member(g, I)

    def to_json(self):
        out = {"status": self.status}
        if self.reason:
            out["reason"] = self.reason
        if self.witness is not None:
            out["witness"] = [str(self.witness[0]), str(self.witness[1])]
        if self.factors:
            out["factors"] = self.factors
        return out


def _linear_forms(qa, rng, budget):
    F = qa.field
    var_vecs = [qa.to_vec(x) for x in qa.ring.gens()]
    for v in var_vecs:
        yield v
    nv = len(var_vecs)
    elems = list(F.elements())[1:] if F.order <= 64 else [F.one]
    for a in range(nv):
        for b in range(a + 1, nv):
            for c in elems:
                yield [F.add(x, F.mul(c, y)) for x, y in zip(var_vecs[a], var_vecs[b])]
    for _ in range(budget):
        yield [F.random_element(rng) for _ in range(qa.dim)]


def _split_witness(qa, theta, mu):
    """mu reducible: return (g(theta), h(theta)) with g h = mu, both proper."""
    F = qa.field
    _, facs = upoly.factor(F, mu)
    g = facs[0][0]
    h = upoly.quo(F, mu, g)
    return (qa.to_poly(_eval_at(qa, g, theta)), qa.to_poly(_eval_at(qa, h, theta)),
            [[F.rank(c) for c in f] + [m] for f, m in facs])


def _eval_at(qa, g, u):
    F = qa.field
    M = qa.mult_matrix(u)
    one = qa.one()
    acc = [F.zero] * qa.dim
    for c in reversed(g):
        acc = linalg.mat_vec(F, M, acc)
        acc = [F.add(a, F.mul(c, o)) for a, o in zip(acc, one)]
    return acc


def is_prime_zero_dim(I, seed=0, retries=32):
    """Decide whether the zero-dimensional ideal I is prime (K finite).

    Primitive-element route first: a linear form whose minimal polynomial has
    degree dim K[X]/I decides primality by one univariate factorization. If no
    such form turns up, the Frobenius x -> x^q is used: the algebra is a field
    iff Frobenius is injective and its fixed space is one-dimensional.
    """
    F = I.ring.field
    if not F.is_finite():
        raise InfiniteField("primality test needs a finite coefficient field")
    if not dimension_zero(I):
        raise NotZeroDimensional("ideal is not zero-dimensional")
    qa = QuotientAlgebra(I)
    D = qa.dim
    if D == 0:
        return PrimalityVerdict("NotPrime", reason="unit ideal")
    rng = random.Random(seed)
    for theta in _linear_forms(qa, rng, retries):
        mu = qa.minimal_polynomial(theta)
        _, facs = upoly.factor(F, mu)
        if len(facs) > 1 or facs[0][1] > 1:
            f, g, fl = _split_witness(qa, theta, mu)
            return PrimalityVerdict("NotPrime", witness=(f, g),
                                    reason="minimal polynomial of a linear form factors",
                                    factors=fl)
        if len(mu) - 1 == D:
            return PrimalityVerdict("Prime", reason=f"primitive element with irreducible "
                                    f"minimal polynomial of degree {D}")
    return _frobenius_decision(qa)


def _frobenius_decision(qa):
    F = qa.field
    D = qa.dim
    Fr = qa.frobenius_matrix()
    ker = linalg.nullspace(F, Fr, D)
    if ker:
        x = ker[0]
        prev, cur = x, qa.mul(x, x)
        while not qa.is_zero(cur):
            prev, cur = cur, qa.mul(cur, x)
        return PrimalityVerdict("NotPrime", witness=(qa.to_poly(x), qa.to_poly(prev)),
                                reason="nilpotent element")
    shifted = [[F.sub(a, F.one if r == c else F.zero) for c, a in enumerate(row)]
               for r, row in enumerate(Fr)]
    fixed = linalg.nullspace(F, shifted, D)
    if len(fixed) <= 1:
        return PrimalityVerdict("Prime", reason="Frobenius injective with "
                                "one-dimensional fixed space")
    one = qa.one()
    b = next(v for v in fixed if linalg.rank(F, [v, one]) == 2)
    mu = qa.minimal_polynomial(b)
    f, g, fl = _split_witness(qa, b, mu)
    return PrimalityVerdict("NotPrime", witness=(f, g), reason="nontrivial idempotent split",
                            factors=fl)


def is_prime_principal(I):
    if len(I.gens) != 1:
        raise ValueError("is_prime_principal needs exactly one generator")
    f = I.gens[0]
    ring = f.ring
    F = ring.field
    if f.is_constant():
        return PrimalityVerdict("NotPrime", reason="unit ideal")
    used = f.variables_used()
    if len(used) > 1:
        return PrimalityVerdict("Unknown", reason="multivariate factorization unsupported")
    if not F.is_finite():
        return PrimalityVerdict("Unknown", reason="factorization over infinite fields unsupported")
    v = used[0]
    deg = max(exp[v] for exp in f.terms)
    coeffs = [F.zero] * (deg + 1)
    for exp, c in f.terms.items():
        coeffs[exp[v]] = c
    _, facs = upoly.factor(F, coeffs)
    fl = [[F.rank(c) for c in g] + [m] for g, m in facs]
    if len(facs) == 1 and facs[0][1] == 1:
        return PrimalityVerdict("Prime", reason="irreducible univariate generator", factors=fl)
    g = facs[0][0]
    h = upoly.quo(F, coeffs, g)

    def lift(u):
        terms = {}
        for i, c in enumerate(u):
            if c != F.zero:
                exp = [0] * ring.nvars
                exp[v] = i
                terms[tuple(exp)] = c
        return MultiPoly(ring, terms)
    return PrimalityVerdict("NotPrime", witness=(lift(g), lift(h)),
                            reason="univariate generator factors", factors=fl)
