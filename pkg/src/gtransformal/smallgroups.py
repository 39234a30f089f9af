"""Catalog of all groups of order at most 24, up to isomorphism.

Candidates come from cyclic semidirect products, dicyclic groups, semidirect
products by Z/k and Z/2 x Z/2, direct products and a few explicit permutation
and matrix groups; duplicates are removed by an isomorphism search. The
resulting per-order counts are checked against the known enumeration.
"""

from collections import Counter
from functools import lru_cache
from itertools import product

from .groups import (cyclic_group, direct_product, dihedral_group,
                     group_from_elements, is_normal, permutation_group,
                     subgroups, symmetric_group)

# number of groups of order n, n = 1..24
GROUP_COUNTS = (1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1, 14, 1, 5, 1, 5, 2, 2, 1, 15)


def metacyclic(m, k, r):
    """Z/m x| Z/k with the generator of Z/k acting by a -> r a."""
    if pow(r, k, m) != 1 % m:
        raise ValueError(f"{r}^{k} != 1 mod {m}")
    elems = [(a, b) for b in range(k) for a in range(m)]

    def op(x, y):
        return ((x[0] + pow(r, x[1], m) * y[0]) % m, (x[1] + y[1]) % k)
    return group_from_elements(elems, op, (0, 0), name=f"Z/{m}:{r}Z/{k}")


def dicyclic_group(n):
    """<a, x | a^{2n} = 1, x^2 = a^n, x a x^-1 = a^-1>, order 4n."""
    m = 2 * n
    elems = [(i, j) for j in range(2) for i in range(m)]

    def op(u, v):
        (i1, j1), (i2, j2) = u, v
        if j1 == 0:
            return ((i1 + i2) % m, j2)
        if j2 == 0:
            return ((i1 - i2) % m, 1)
        return ((i1 - i2 + n) % m, 0)
    name = "Q8" if n == 2 else f"Dic{n}"
    return group_from_elements(elems, op, (0, 0), name=name)


def quaternion_group(order=8):
    return dicyclic_group(order // 4)


def alternating_group_4():
    return permutation_group([(1, 2, 0, 3), (1, 0, 3, 2)], name="A4")


def special_linear_2_3():
    def mul(a, b):
        return tuple(tuple(sum(a[i][t] * b[t][j] for t in range(2)) % 3
                           for j in range(2)) for i in range(2))
    ident = ((1, 0), (0, 1))
    gens = [((1, 1), (0, 1)), ((0, 2), (1, 0))]
    elems = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = mul(x, g)
                if y not in elems:
                    elems.add(y)
                    nxt.append(y)
        frontier = nxt
    return group_from_elements(sorted(elems), mul, ident, name="SL(2,3)")


def semidirect_product(N, H, phi, name=None):
    """N x| H where phi[h] is the automorphism of N (a tuple of images) for h."""
    elems = [(n, h) for h in H.elements() for n in N.elements()]

    def op(x, y):
        return (N.mul(x[0], phi[x[1]][y[0]]), H.mul(x[1], y[1]))
    return group_from_elements(elems, op, (0, 0), name=name)


def _generators(G):
    """A short generating list, greedily picking elements of large order."""
    gens, span = [], frozenset([0])
    for a in sorted(G.elements(), key=lambda x: -G.element_order(x)):
        if a not in span:
            gens.append(a)
            span = G.closure(gens)
            if len(span) == G.order:
                break
    return gens


def _extend(G1, G2, gens, images):
    """Extend gens -> images to a map G1 -> G2 through words; None if inconsistent."""
    f = {0: 0}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for g, h in zip(gens, images):
                y = G1.mul(x, g)
                z = G2.mul(f[x], h)
                if y in f:
                    if f[y] != z:
                        return None
                else:
                    f[y] = z
                    nxt.append(y)
        frontier = nxt
    if len(f) != G1.order:
        return None
    return f


def find_isomorphism(G1, G2):
    if G1.order != G2.order:
        return None
    gens = _generators(G1)
    orders = [G1.element_order(g) for g in gens]
    pools = [[y for y in G2.elements() if G2.element_order(y) == o] for o in orders]
    for images in product(*pools):
        f = _extend(G1, G2, gens, images)
        if f is None or len(set(f.values())) != G2.order:
            continue
        if all(f[G1.mul(a, b)] == G2.mul(f[a], f[b])
               for a in G1.elements() for b in G1.elements()):
            return f
    return None


def automorphisms(N):
    gens = _generators(N)
    orders = [N.element_order(g) for g in gens]
    pools = [[y for y in N.elements() if N.element_order(y) == o] for o in orders]
    out = []
    for images in product(*pools):
        f = _extend(N, N, gens, images)
        if f is None or len(set(f.values())) != N.order:
            continue
        if all(f[N.mul(a, b)] == N.mul(f[a], f[b])
               for a in N.elements() for b in N.elements()):
            out.append(tuple(f[x] for x in N.elements()))
    return out


def invariants(G):
    subs = subgroups(G, bound=G.order)
    center = [z for z in G.elements() if all(G.mul(z, g) == G.mul(g, z) for g in G.elements())]
    return (G.order, G.is_abelian(), len(center),
            tuple(sorted(Counter(G.element_order(a) for a in G.elements()).items())),
            tuple(sorted(Counter((len(H), is_normal(G, H)) for H in subs).items())))


def _compose_aut(a, b):
    return tuple(a[x] for x in b)


def _cyclic_actions(N, k):
    """Automorphisms alpha with alpha^k = id, one hom Z/k -> Aut(N) each."""
    ident = tuple(N.elements())
    for alpha in automorphisms(N):
        powers = [ident]
        for _ in range(k - 1):
            powers.append(_compose_aut(alpha, powers[-1]))
        if _compose_aut(alpha, powers[-1]) == ident:
            yield powers


def _candidates(max_order):
    yield cyclic_group(1)
    for m in range(2, max_order + 1):
        for k in range(1, max_order // m + 1):
            for r in range(1, m):
                if pow(r, k, m) == 1:
                    yield metacyclic(m, k, r)
    for n in range(2, max_order // 4 + 1):
        yield dicyclic_group(n)
    yield alternating_group_4()
    yield symmetric_group(4)
    yield special_linear_2_3()
    for n in range(3, max_order // 2 + 1):
        yield dihedral_group(n)


@lru_cache(maxsize=None)
def all_small_groups(max_order=24):
    """Tuple of groups of order <= max_order, one per isomorphism class, sorted by order."""
    classes = {}

    def add(G):
        if G.order > max_order:
            return
        key = invariants(G)
        bucket = classes.setdefault(key, [])
        if any(find_isomorphism(G, H) is not None for H in bucket):
            return
        bucket.append(G)

    for G in _candidates(max_order):
        add(G)
    # close under direct products and semidirect products by small groups
    def base():
        return [G for bucket in classes.values() for G in bucket]
    for _ in range(2):
        current = base()
        for A in current:
            for B in current:
                if 1 < A.order <= B.order and A.order * B.order <= max_order:
                    add(direct_product(A, B))
        current = base()
        acting = [cyclic_group(k) for k in (2, 3, 4)] + [direct_product(cyclic_group(2), cyclic_group(2))]
        for N in current:
            if N.order < 2:
                continue
            for H in acting:
                if N.order * H.order > max_order:
                    continue
                for phi in _actions(N, H):
                    add(semidirect_product(N, H, phi))
    groups = sorted(base(), key=lambda G: (G.order, invariants(G)))
    counts = Counter(G.order for G in groups)
    for n in range(1, max_order + 1):
        if n <= len(GROUP_COUNTS) and counts[n] != GROUP_COUNTS[n - 1]:
            raise AssertionError(f"catalog has {counts[n]} groups of order {n}, "
                                 f"expected {GROUP_COUNTS[n - 1]}")
    return tuple(groups)


def _actions(N, H):
    if H.is_cyclic():
        yield from _cyclic_actions(N, H.order)
        return
    # H = Z/2 x Z/2 as built by direct_product: elements (0,0),(0,1),(1,0),(1,1)
    ident = tuple(N.elements())
    invols = [a for a in automorphisms(N) if _compose_aut(a, a) == ident]
    for a in invols:
        for b in invols:
            if _compose_aut(a, b) == _compose_aut(b, a):
                yield [ident, b, a, _compose_aut(a, b)]
