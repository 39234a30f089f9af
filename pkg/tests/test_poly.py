import random

import pytest
from hypothesis import given, strategies as st

from gtransformal.errors import ArityMismatch, LayoutMismatch, ParseError
from gtransformal.ff import make_field
from gtransformal.groups import cyclic_group, left_translation_action
from gtransformal.gtf import GTransformalField
from gtransformal.poly import (PolyRing, TwistedAction, apply_twisted, evaluate,
                               parse_poly, sigma_tuple, to_text)
from gtransformal.smallgroups import all_small_groups


def random_poly(ring, rng, terms=4, maxdeg=2):
    F = ring.field
    return ring.from_terms(
        (tuple(rng.randrange(maxdeg + 1) for _ in range(ring.nvars)), F.random_element(rng))
        for _ in range(terms))


def trivial_action(G, F):
    return TwistedAction(left_translation_action(G), F, lambda k, x: x)


def test_apply_examples_z2():
    F9 = make_field(3, 2)
    Ks = GTransformalField.cyclic_frobenius(F9, 2)
    A = Ks.twisted_action()
    R = Ks.ring(1)
    c = F9.gen
    f = R.var(0) + R.const(c)
    assert apply_twisted(A, 1, f) == R.var(1) + R.const(F9.frobenius(c, 1))
    assert apply_twisted(A, 0, f) == f
    assert apply_twisted(A, 1, R.const(c)) == R.const(F9.pow(c, 3))


def test_slots_never_move():
    F = make_field(5, 1)
    Ks = GTransformalField.frobenius(F, cyclic_group(3), [0, 0, 0])
    A = Ks.twisted_action()
    R = Ks.ring(2)
    f = R.var(0, 1) * R.var(2, 0)
    assert apply_twisted(A, 1, f) == R.var(1, 1) * R.var(0, 0)


def test_sigma_tuple_examples():
    F9 = make_field(3, 2)
    A = GTransformalField.cyclic_frobenius(F9, 2).twisted_action()
    assert sigma_tuple(A, [F9.gen]) == [F9.gen, F9.pow(F9.gen, 3)]
    assert sigma_tuple(A, [2]) == [2, 2]
    Atriv = trivial_action(cyclic_group(1), F9)
    assert sigma_tuple(Atriv, [4, 5]) == [4, 5]


def test_evaluate_examples():
    F4 = make_field(2, 2)
    R = PolyRing(F4, 2, 1)
    w = F4.gen
    assert evaluate(R.zero(), [w, w]) == 0
    f = R.var(0) * R.var(1) - R.one()
    assert evaluate(f, [w, F4.inv(w)]) == 0
    g = R.var(0) ** 2 + R.var(1)
    assert evaluate(g, [w, w]) == F4.one
    with pytest.raises(ArityMismatch):
        evaluate(g, [w])


def test_layout_mismatch():
    F = make_field(3, 1)
    A = trivial_action(cyclic_group(3), F)
    with pytest.raises(LayoutMismatch):
        apply_twisted(A, 1, PolyRing(F, 2, 1).var(0))


@pytest.mark.parametrize("q,n,step", [(9, 2, 1), (16, 4, 1), (64, 3, 2), (27, 3, 1), (8, 1, 0)])
def test_ring_hom_and_compatibility(q, n, step):
    from gtransformal.ff import field_from_order
    F = field_from_order(q)
    Ks = GTransformalField.cyclic_frobenius(F, n, step)
    A = Ks.twisted_action()
    R = Ks.ring(2)
    rng = random.Random(q)
    for _ in range(30):
        f, g = random_poly(R, rng), random_poly(R, rng)
        a = [F.random_element(rng), F.random_element(rng)]
        pt = sigma_tuple(A, a)
        for k in range(n):
            assert apply_twisted(A, k, f + g) == apply_twisted(A, k, f) + apply_twisted(A, k, g)
            assert apply_twisted(A, k, f * g) == apply_twisted(A, k, f) * apply_twisted(A, k, g)
            assert evaluate(apply_twisted(A, k, f), pt) == Ks.sigma(k, evaluate(f, pt))


SMALL = [G for G in all_small_groups(8)]


@pytest.mark.parametrize("G", SMALL, ids=lambda G: G.name)
def test_group_action_law(G):
    F = make_field(3, 1)
    A = trivial_action(G, F)
    R = PolyRing(F, G.order, 1)
    rng = random.Random(G.order)
    for _ in range(3):
        f = random_poly(R, rng, terms=3, maxdeg=1)
        for k in G.elements():
            for l in G.elements():
                assert apply_twisted(A, k, apply_twisted(A, l, f)) == apply_twisted(A, G.mul(k, l), f)


@pytest.mark.parametrize("n", [2, 3, 4, 6])
def test_group_action_law_frobenius(n):
    F = make_field(2, n)
    Ks = GTransformalField.cyclic_frobenius(F, n)
    A = Ks.twisted_action()
    R = Ks.ring(1)
    rng = random.Random(n)
    G = Ks.group
    for _ in range(5):
        f = random_poly(R, rng, terms=3, maxdeg=1)
        for k in G.elements():
            for l in G.elements():
                assert apply_twisted(A, k, apply_twisted(A, l, f)) == apply_twisted(A, G.mul(k, l), f)


@pytest.mark.parametrize("q", [5, 9, 16])
def test_printer_parser_round_trip(q):
    from gtransformal.ff import field_from_order
    F = field_from_order(q)
    R = PolyRing(F, 2, 2)
    rng = random.Random(q)
    for _ in range(50):
        f = random_poly(R, rng, terms=5, maxdeg=3)
        assert parse_poly(R, to_text(f)) == f


@given(st.lists(st.tuples(st.lists(st.integers(0, 3), min_size=4, max_size=4), st.integers(0, 8)),
                max_size=6))
def test_round_trip_property(terms):
    R = PolyRing(make_field(3, 2), 2, 2, "lex")
    f = R.from_terms(terms)
    assert parse_poly(R, to_text(f)) == f


def test_parser_grammar():
    F9 = make_field(3, 2)
    R = PolyRing(F9, 2, 1)
    f = parse_poly(R, "x[1][1]*x[2][1] - g^2 + (x[1][1] + 1)^2 / 2")
    x, y = R.var(0), R.var(1)
    two_inv = F9.inv(2)
    expect = x * y - R.const(F9.pow(F9.gen, 2)) + ((x + R.one()) ** 2).scale(two_inv)
    assert f == expect
    assert to_text(parse_poly(R, "0")) == "0"


@pytest.mark.parametrize("text,line,col", [
    ("x[1][1] + $", 1, 11),
    ("x[3][1]", 1, 1),
    ("x[1][1] +\n  * 2", 2, 3),
    ("(x[1][1]", 1, 9),
    ("x[1][1]^g", 1, 9),
    ("", 1, 1),
])
def test_parse_errors_have_location(text, line, col):
    R = PolyRing(make_field(3, 2), 2, 1)
    with pytest.raises(ParseError) as exc:
        parse_poly(R, text)
    assert (exc.value.line, exc.value.column) == (line, col)


def test_canonical_form_drops_zeros():
    F = make_field(3, 1)
    R = PolyRing(F, 1, 1)
    f = R.from_terms([((1,), 1), ((1,), 2), ((0,), 1)])
    assert f == R.one()
    assert to_text(R.var(0) - R.var(0)) == "0"
