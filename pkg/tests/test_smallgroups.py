from collections import Counter

import pytest

from gtransformal.groups import (frattini_subgroup, is_frattini_cover,
                                 is_frattini_cover_direct, normal_subgroups, quotient,
                                 subgroups)
from gtransformal.smallgroups import GROUP_COUNTS, all_small_groups, find_isomorphism

from oracles import frattini_by_generators, subgroups_by_generators

GROUPS = all_small_groups(24)


def label(G):
    return f"{G.order}_{G.name}".replace(" ", "")


def test_catalog_counts():
    counts = Counter(G.order for G in GROUPS)
    assert [counts[n] for n in range(1, 25)] == list(GROUP_COUNTS)


def test_catalog_pairwise_non_isomorphic():
    for i, G in enumerate(GROUPS):
        for H in GROUPS[i + 1:]:
            if H.order == G.order:
                assert find_isomorphism(G, H) is None


@pytest.mark.parametrize("G", GROUPS, ids=label)
def test_subgroups_and_frattini_match_oracle(G):
    assert set(subgroups(G)) == subgroups_by_generators(G)
    assert frattini_subgroup(G) == frattini_by_generators(G)


@pytest.mark.parametrize("G", GROUPS, ids=label)
def test_cover_predicate_matches_direct_check(G):
    subs = subgroups_by_generators(G)
    for N in normal_subgroups(G):
        _, pi = quotient(G, N)
        # no proper H with HN = G
        direct = not any(len(H) < G.order and
                         len({G.mul(h, n) for h in H for n in N}) == G.order for H in subs)
        assert is_frattini_cover(pi) == direct == is_frattini_cover_direct(pi)
