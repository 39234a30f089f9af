"""Finite groups as Cayley tables, the index action, and Frattini covers.

Internally elements are 0..e-1 with 0 the identity, so element ``i`` is the
1-based g_{i+1}. JSON tables at the boundary use 1-based indices.
"""

from dataclasses import dataclass
from functools import cached_property, reduce
from itertools import permutations, product

from sympy import factorint

from .errors import (NotAGroup, NotAHomomorphism, NotSurjective, OrderTooLarge,
                     TruncationTooSmall, Unsupported)

SUBGROUP_ORDER_BOUND = 64


class FiniteGroup:
    def __init__(self, table, name=None, labels=None):
        self.table = tuple(tuple(row) for row in table)
        self.order = len(self.table)
        self.name = name
        self.labels = labels

    def __repr__(self):
        return f"FiniteGroup({self.name or 'order ' + str(self.order)})"

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and self.table == other.table

    def __hash__(self):
        return hash(self.table)

    @property
    def identity(self):
        return 0

    def elements(self):
        return range(self.order)

    def mul(self, a, b):
        return self.table[a][b]

    @cached_property
    def _inverses(self):
        inv = [0] * self.order
        for a in range(self.order):
            inv[a] = self.table[a].index(0)
        return tuple(inv)

    def inv(self, a):
        return self._inverses[a]

    def power(self, a, n):
        if n < 0:
            a, n = self.inv(a), -n
        r = 0
        for _ in range(n):
            r = self.table[r][a]
        return r

    def element_order(self, a):
        n, x = 1, a
        while x != 0:
            x = self.table[x][a]
            n += 1
        return n

    def is_abelian(self):
        t = self.table
        return all(t[a][b] == t[b][a]
                   for a in range(self.order) for b in range(a + 1, self.order))

    def is_cyclic(self):
        return _cyclic_generator(self) is not None

    def closure(self, gens):
        """The subgroup generated by ``gens``, as a frozenset."""
        elems = {0}
        frontier = [0]
        gens = [g for g in set(gens) if g != 0]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.table[x][g]
                    if y not in elems:
                        elems.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(elems)

    def to_json(self):
        """1-based Cayley table."""
        return [[x + 1 for x in row] for row in self.table]


def _check_table(table):
    e = len(table)
    if e == 0:
        raise NotAGroup("empty table")
    for r, row in enumerate(table):
        if len(row) != e:
            raise NotAGroup(f"row {r + 1} has length {len(row)}, expected {e}")
    rng = set(range(e))
    for r, row in enumerate(table):
        if set(row) != rng:
            raise NotAGroup(f"row {r + 1} is not a permutation", witness=(r + 1,))
    for c in range(e):
        if {table[r][c] for r in range(e)} != rng:
            raise NotAGroup(f"column {c + 1} is not a permutation", witness=(c + 1,))
    for x in range(e):
        if table[0][x] != x or table[x][0] != x:
            raise NotAGroup(f"index 1 is not an identity (fails at {x + 1})",
                            witness=(1, x + 1))
    for a in range(e):
        ra = table[a]
        for b in range(e):
            ab = ra[b]
            rab, rb = table[ab], table[b]
            for c in range(e):
                if rab[c] != ra[rb[c]]:
                    raise NotAGroup(
                        f"associativity fails at ({a + 1}, {b + 1}, {c + 1})",
                        witness=(a + 1, b + 1, c + 1))


def from_cayley_table(table, name=None):
    """Validate a 1-based Cayley table with index 1 the identity."""
    e = len(table)
    try:
        rows = [[int(x) - 1 for x in row] for row in table]
    except (TypeError, ValueError) as exc:
        raise NotAGroup(f"non-integer entry: {exc}") from None
    for r, row in enumerate(rows):
        for c, x in enumerate(row):
            if not 0 <= x < e:
                raise NotAGroup(f"entry ({r + 1}, {c + 1}) = {x + 1} outside 1..{e}",
                                witness=(r + 1, c + 1))
    _check_table(rows)
    return FiniteGroup(rows, name=name)


@dataclass(frozen=True)
class IndexAction:
    """Left translation of G on its own index set: act(k, l) = j iff g_k g_l = g_j."""

    group: FiniteGroup

    @property
    def order(self):
        return self.group.order

    def act(self, k, l):
        return self.group.table[k][l]

    def permutation(self, k):
        return self.group.table[k]


def left_translation_action(G):
    return IndexAction(G)


# -- constructions -----------------------------------------------------------

def cyclic_group(n):
    return FiniteGroup([[(a + b) % n for b in range(n)] for a in range(n)],
                       name=f"Z/{n}")


def direct_product(*groups, name=None):
    """Elements are tuples ordered lexicographically (last factor fastest)."""
    if not groups:
        return FiniteGroup([[0]], name=name or "1")
    orders = [G.order for G in groups]
    tuples = list(product(*(range(n) for n in orders)))
    index = {t: i for i, t in enumerate(tuples)}
    table = [[index[tuple(G.table[x][y] for G, x, y in zip(groups, s, t))]
              for t in tuples] for s in tuples]
    if name is None:
        name = "x".join(G.name or f"G{G.order}" for G in groups)
    return FiniteGroup(table, name=name, labels=tuples)


def group_from_elements(elements, op, identity, name=None):
    """Cayley table from an explicit element list and binary operation."""
    elements = [identity] + [x for x in elements if x != identity]
    index = {x: i for i, x in enumerate(elements)}
    table = [[index[op(a, b)] for b in elements] for a in elements]
    _check_table(table)
    return FiniteGroup(table, name=name, labels=elements)


def _compose(p, q):
    # (p q)(i) = p(q(i))
    return tuple(p[i] for i in q)


def permutation_group(generators, name=None):
    """Group generated by permutations (tuples of images of 0..n-1)."""
    n = len(generators[0])
    ident = tuple(range(n))
    elems = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in generators:
                y = _compose(x, g)
                if y not in elems:
                    elems.add(y)
                    nxt.append(y)
        frontier = nxt
    return group_from_elements(sorted(elems), _compose, ident, name=name)


def symmetric_group(n):
    return group_from_elements(sorted(permutations(range(n))), _compose,
                               tuple(range(n)), name=f"S{n}")


def dihedral_group(n):
    """Symmetries of the n-gon, order 2n."""
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((-i) % n for i in range(n))
    if n == 1:
        return cyclic_group(2)
    if n == 2:
        return direct_product(cyclic_group(2), cyclic_group(2), name="D2")
    return permutation_group([rot, ref], name=f"D{n}")


def preset(name):
    """Resolve 'Z/n', 'S3', 'D4', 'Z/axZ/b' (any number of cyclic factors), 'Q8', '1'."""
    s = name.replace(" ", "").replace("×", "x")
    if s in ("1", "trivial"):
        return cyclic_group(1)
    if s.startswith("S") and s[1:].isdigit():
        return symmetric_group(int(s[1:]))
    if s.startswith("D") and s[1:].isdigit():
        return dihedral_group(int(s[1:]))
    if s == "Q8":
        from .smallgroups import quaternion_group
        return quaternion_group(8)
    parts = s.split("x")
    if all(p.startswith("Z/") and p[2:].isdigit() for p in parts):
        factors = [cyclic_group(int(p[2:])) for p in parts]
        if len(factors) == 1:
            return factors[0]
        return direct_product(*factors, name="x".join(parts))
    raise ValueError(f"unknown group preset {name!r}")


# -- subgroups and Frattini ----------------------------------------------------

def _cyclic_generator(G):
    return next((a for a in G.elements() if G.element_order(a) == G.order), None)


def _canonical(subs):
    return sorted(subs, key=lambda H: (len(H), sorted(H)))


def subgroups(G, bound=SUBGROUP_ORDER_BOUND):
    """All subgroups, as frozensets, sorted by (order, elements)."""
    if G.order > bound:
        raise OrderTooLarge(f"group of order {G.order} exceeds bound {bound}")
    return _subgroups(G)


def _subgroups(G):
    cache = G.__dict__.get("_subgroup_cache")
    if cache is not None:
        return cache
    cyclic = set()
    seen = set()
    for a in G.elements():
        if a in seen:
            continue
        C = G.closure([a])
        cyclic.add(C)
        # every generator of C yields C again
        seen.update(x for x in C if G.element_order(x) == len(C))
    found = set(cyclic)
    layer = set(cyclic)
    cyc = list(cyclic)
    while layer:
        nxt = set()
        for H in layer:
            for C in cyc:
                if C <= H:
                    continue
                J = G.closure(H | C)
                if J not in found:
                    found.add(J)
                    nxt.add(J)
        layer = nxt
    result = _canonical(found)
    G.__dict__["_subgroup_cache"] = result
    return result


def maximal_subgroups(G, bound=SUBGROUP_ORDER_BOUND):
    subs = [H for H in subgroups(G, bound) if len(H) < G.order]
    return [H for H in subs if not any(H < K for K in subs)]


def frattini_subgroup(G, bound=SUBGROUP_ORDER_BOUND):
    """Intersection of the maximal subgroups (G itself when there are none).

    Cyclic groups of any order use the closed form <g^rad(e)>; everything
    else enumerates subgroups and is subject to ``bound``.
    """
    gen = _cyclic_generator(G) if G.order > bound else None
    if gen is not None:
        rad = 1
        for p in factorint(G.order):
            rad *= p
        return G.closure([G.power(gen, rad)])
    maxes = maximal_subgroups(G, bound)
    if not maxes:
        return frozenset(G.elements())
    return reduce(frozenset.intersection, maxes)


def is_normal(G, H):
    return all(G.mul(G.mul(g, h), G.inv(g)) in H for g in G.elements() for h in H)


def normal_subgroups(G, bound=SUBGROUP_ORDER_BOUND):
    return [H for H in subgroups(G, bound) if is_normal(G, H)]


def quotient(G, N):
    """G/N with cosets ordered by their smallest element; returns (quotient, projection)."""
    cosets = []
    where = {}
    for g in G.elements():
        if g in where:
            continue
        coset = sorted(G.mul(g, n) for n in N)
        for x in coset:
            where[x] = len(cosets)
        cosets.append(coset[0])
    table = [[where[G.mul(a, b)] for b in cosets] for a in cosets]
    Q = FiniteGroup(table, name=f"{G.name or 'G'}/N{len(N)}")
    proj = GroupHom(G, Q, tuple(where[g] for g in G.elements()))
    return Q, proj


@dataclass(frozen=True)
class GroupHom:
    source: FiniteGroup
    target: FiniteGroup
    images: tuple

    def __post_init__(self):
        S, T = self.source, self.target
        if len(self.images) != S.order:
            raise NotAHomomorphism("one image per source element is required")
        for a in S.elements():
            for b in S.elements():
                if self.images[S.mul(a, b)] != T.mul(self.images[a], self.images[b]):
                    raise NotAHomomorphism(f"fails on elements ({a + 1}, {b + 1})")

    def __call__(self, a):
        return self.images[a]

    @property
    def is_surjective(self):
        return len(set(self.images)) == self.target.order

    def kernel(self):
        return frozenset(a for a in self.source.elements() if self.images[a] == 0)

    def image(self, H):
        return frozenset(self.images[h] for h in H)

    def compose(self, other):
        """self after other."""
        return GroupHom(other.source, self.target,
                        tuple(self.images[x] for x in other.images))


def is_frattini_cover(pi, bound=SUBGROUP_ORDER_BOUND, cross_check=False):
    """True iff ker(pi) lies in the Frattini subgroup of the source.

    With ``cross_check`` the subgroup-quantifier form is evaluated as well and
    a disagreement raises AssertionError.
    """
    if not pi.is_surjective:
        raise NotSurjective("a Frattini cover must be onto")
    verdict = pi.kernel() <= frattini_subgroup(pi.source, bound)
    if cross_check:
        direct = is_frattini_cover_direct(pi, bound)
        if direct != verdict:
            raise AssertionError(f"Frattini characterisations disagree for {pi}")
    return verdict


def is_frattini_cover_direct(pi, bound=SUBGROUP_ORDER_BOUND):
    """No proper subgroup of the source maps onto the target."""
    if not pi.is_surjective:
        raise NotSurjective("a Frattini cover must be onto")
    T = pi.target.order
    return not any(len(H) < pi.source.order and len(pi.image(H)) == T
                   for H in subgroups(pi.source, bound))


# -- cyclic universal Frattini covers -----------------------------------------

@dataclass(frozen=True)
class CyclicCover:
    """Truncation at p^k of the universal Frattini cover prod Z_p -> Z/n."""

    n: int
    k: int
    primes: tuple
    hom: GroupHom

    def kernel_factors(self):
        """[(p, a, k)] meaning p^a Z/p^k, cyclic of order p^(k-a)."""
        fac = factorint(self.n)
        return [(p, fac[p], self.k) for p in self.primes]

    def kernel_order(self):
        return len(self.hom.kernel())

    def describe(self):
        return " x ".join(f"{p}^{a}Z/{p}^{k}" for p, a, k in self.kernel_factors()) or "1"


def cyclic_universal_frattini_cover(n, k, bound=None):
    if n < 1:
        raise ValueError("n must be positive")
    fac = factorint(n)
    primes = tuple(sorted(fac))
    if fac and k < max(fac.values()):
        raise TruncationTooSmall(f"level {k} below the largest exponent in {n}")
    factors = [cyclic_group(p ** k) for p in primes]
    source = direct_product(*factors, name="x".join(f"Z/{p ** k}" for p in primes) or "1")
    target = cyclic_group(n)
    labels = source.labels or [()]
    images = []
    for t in labels:
        images.append(_crt([(x % p ** fac[p], p ** fac[p]) for x, p in zip(t, primes)]) % n)
    hom = GroupHom(source, target, tuple(images))
    return CyclicCover(n, k, primes, hom)


def universal_frattini_cover(G, k):
    """Only cyclic G is supported."""
    if not G.is_cyclic():
        raise Unsupported("universal Frattini covers are implemented for cyclic groups only")
    cover = cyclic_universal_frattini_cover(G.order, k)
    gen = next(a for a in G.elements() if G.element_order(a) == G.order)
    iso = [0] * G.order
    x = 0
    for i in range(G.order):
        iso[i] = x
        x = G.mul(x, gen)
    return cover, GroupHom(cover.hom.target, G, tuple(iso))


def _crt(pairs):
    x, m = 0, 1
    for r, mod in pairs:
        # solve x' = x mod m, x' = r mod mod
        t = ((r - x) * pow(m, -1, mod)) % mod if mod > 1 else 0
        x, m = x + m * t, m * mod
    return x
