import pytest
from hypothesis import given, strategies as st

from gtransformal.errors import (NotAGroup, NotSurjective, OrderTooLarge,
                                 TruncationTooSmall, Unsupported)
from gtransformal.groups import (GroupHom, cyclic_group, cyclic_universal_frattini_cover,
                                 direct_product, frattini_subgroup, from_cayley_table,
                                 is_frattini_cover, is_frattini_cover_direct,
                                 left_translation_action, preset, quotient, subgroups,
                                 symmetric_group, universal_frattini_cover)

from oracles import frattini_by_maximals, s3_table, subgroups_by_subsets


def test_z2_table():
    G = from_cayley_table([[1, 2], [2, 1]])
    assert G.order == 2
    assert G.is_cyclic()


def test_s3_table_accepted():
    G = from_cayley_table(s3_table())
    assert G.order == 6 and not G.is_abelian()


def test_bad_row_rejected():
    with pytest.raises(NotAGroup):
        from_cayley_table([[1, 2], [2, 2]])


def test_nonassociative_reported_with_witness():
    # a Latin square with identity 1 that is not associative
    table = [[1, 2, 3, 4, 5], [2, 1, 4, 5, 3], [3, 5, 1, 2, 4], [4, 3, 5, 1, 2], [5, 4, 2, 3, 1]]
    with pytest.raises(NotAGroup) as exc:
        from_cayley_table(table)
    assert exc.value.witness is not None and len(exc.value.witness) == 3


def test_entry_out_of_range():
    with pytest.raises(NotAGroup):
        from_cayley_table([[1, 3], [2, 1]])


def test_left_translation():
    A = left_translation_action(cyclic_group(2))
    assert A.act(1, 1) + 1 == 1            # 2*2 = 1 in 1-based terms
    A4 = left_translation_action(cyclic_group(4))
    assert A4.act(1, 2) + 1 == 4            # 2*3 = 4
    for G in (cyclic_group(5), symmetric_group(3), preset("D4")):
        A = left_translation_action(G)
        assert all(A.act(0, l) == l for l in G.elements())


@pytest.mark.parametrize("name", ["Z/4", "S3", "D4", "Z/2xZ/2", "Q8", "Z/2xZ/4"])
def test_action_matches_table(name):
    G = preset(name)
    A = left_translation_action(G)
    for k in G.elements():
        for l in G.elements():
            for m in G.elements():
                assert A.act(k, A.act(l, m)) == A.act(G.mul(k, l), m)


@pytest.mark.parametrize("name,count", [("Z/4", 3), ("1", 1), ("S3", 6)])
def test_subgroup_counts(name, count):
    G = preset(name)
    assert len(subgroups(G)) == count
    assert set(subgroups(G)) == set(subgroups_by_subsets(G))


@pytest.mark.parametrize("name", ["D4", "Q8", "Z/2xZ/2xZ/2", "Z/12", "S3"])
def test_subgroups_match_subset_oracle(name):
    G = preset(name)
    assert set(subgroups(G)) == set(subgroups_by_subsets(G))


def test_subgroups_sorted_canonically():
    subs = subgroups(preset("D4"))
    keys = [(len(H), sorted(H)) for H in subs]
    assert keys == sorted(keys)


def test_subgroup_bound():
    with pytest.raises(OrderTooLarge):
        subgroups(cyclic_group(65))


def test_frattini_examples():
    assert frattini_subgroup(cyclic_group(4)) == frozenset({0, 2})
    assert frattini_subgroup(preset("Z/2xZ/2")) == frozenset({0})
    for p in (2, 3, 5):
        assert frattini_subgroup(cyclic_group(p)) == frozenset({0})
    assert frattini_subgroup(cyclic_group(1)) == frozenset({0})


@pytest.mark.parametrize("name", ["Z/8", "D4", "Q8", "Z/2xZ/4", "S3", "Z/12"])
def test_frattini_matches_oracle(name):
    G = preset(name)
    assert frattini_subgroup(G) == frattini_by_maximals(G)


@pytest.mark.parametrize("N", [1, 2, 8, 12, 36, 60, 64])
def test_cyclic_closed_form_matches_enumeration(N):
    G = cyclic_group(N)
    assert frattini_subgroup(G, bound=0) == frattini_subgroup(G)


def test_frattini_cover_examples():
    red = GroupHom(cyclic_group(4), cyclic_group(2), (0, 1, 0, 1))
    assert is_frattini_cover(red, cross_check=True)
    V = preset("Z/2xZ/2")
    proj = GroupHom(V, cyclic_group(2), tuple(t[0] for t in V.labels))
    assert not is_frattini_cover(proj, cross_check=True)
    ident = GroupHom(cyclic_group(3), cyclic_group(3), (0, 1, 2))
    assert is_frattini_cover(ident)


def test_not_surjective():
    triv = GroupHom(cyclic_group(4), cyclic_group(2), (0, 0, 0, 0))
    with pytest.raises(NotSurjective):
        is_frattini_cover(triv)


def test_ufc_examples():
    c = cyclic_universal_frattini_cover(2, 3)
    assert c.hom.source.order == 8 and c.kernel_factors() == [(2, 1, 3)]
    assert c.hom.kernel() == frozenset({0, 2, 4, 6})
    assert is_frattini_cover(c.hom)
    c = cyclic_universal_frattini_cover(6, 1)
    assert c.kernel_order() == 1 and is_frattini_cover(c.hom)
    c = cyclic_universal_frattini_cover(12, 2)
    assert c.hom.source.order == 36 and c.kernel_order() == 3
    assert c.describe() == "2^2Z/2^2 x 3^1Z/3^2"
    assert is_frattini_cover(c.hom, cross_check=True)


def test_ufc_truncation_too_small():
    with pytest.raises(TruncationTooSmall):
        cyclic_universal_frattini_cover(8, 2)


def test_ufc_non_cyclic_unsupported():
    with pytest.raises(Unsupported):
        universal_frattini_cover(preset("Z/2xZ/2"), 2)
    cover, iso = universal_frattini_cover(cyclic_group(4), 3)
    assert is_frattini_cover(iso.compose(cover.hom))


@pytest.mark.parametrize("p,n", [(2, 2), (3, 3), (2, 4), (5, 5)])
def test_truncations_compose(p, n):
    # Z/p^(k+1) -> Z/p^k -> Z/n stays Frattini
    for k in range(1, 4):
        if p ** k % n:
            continue
        hi = cyclic_group(p ** (k + 1))
        lo = cyclic_group(p ** k)
        step = GroupHom(hi, lo, tuple(a % p ** k for a in hi.elements()))
        down = GroupHom(lo, cyclic_group(n), tuple(a % n for a in lo.elements()))
        assert is_frattini_cover(step) and is_frattini_cover(down)
        assert is_frattini_cover(down.compose(step), cross_check=hi.order <= 64)


@given(st.integers(1, 6), st.integers(1, 6))
def test_quotients_of_cyclic_products(a, b):
    G = direct_product(cyclic_group(a), cyclic_group(b))
    for N in subgroups(G):
        Q, proj = quotient(G, N)
        assert Q.order * len(N) == G.order
        assert proj.kernel() == N
        assert is_frattini_cover(proj) == is_frattini_cover_direct(proj)
