import random
from itertools import product

import pytest

from gtransformal.axioms import (AxiomInstance, check_hypotheses, count_witnesses,
                                 diagonal_instance, find_witness, irreducible_over_K_probe,
                                 is_witness, norm_instance, prime_by_linear_variable,
                                 univariate_ring)
from gtransformal.cyclotomic import CycloField
from gtransformal.errors import (CoefficientsNotConstant, InfiniteCarrier, LayoutMismatch,
                                 WrongGroupOrder)
from gtransformal.ff import field_from_order, make_field
from gtransformal.groebner import Ideal
from gtransformal.groups import cyclic_group
from gtransformal.gtf import GTransformalField
from gtransformal.poly import PolyRing

from oracles import norm_solutions


def frob(q, n=2, step=None):
    F = field_from_order(q)
    return GTransformalField.cyclic_frobenius(F, n, F.k // n if step is None else step)


def direct_count(Ks, inst):
    """Count a in K^n by evaluating the generators term by term, without the search code."""
    F = Ks.field
    e = Ks.group.order
    exps = Ks.exponents

    def ev(f, pt):
        acc = F.zero
        for exp, c in f.terms.items():
            t = c
            for v, a in enumerate(exp):
                for _ in range(a):
                    t = F.mul(t, pt[v])
            acc = F.add(acc, t)
        return acc

    n = 0
    for a in product(range(F.order), repeat=inst.n):
        pt = [F.frobenius(x, exps[k]) for k in range(e) for x in a]
        if all(ev(f, pt) == 0 for f in inst.I.gens) and any(ev(g, pt) != 0 for g in inst.J.gens):
            n += 1
    return n


def test_norm_instance_f9_with_excluded_point():
    Ks = frob(9)
    F = Ks.field
    sols = [x for x, nx in norm_solutions(F, 3) if nx == 2]
    assert len(sols) == 4
    w = sols[0]
    R = Ks.ring(1)
    inst = norm_instance(Ks, 2, J_extra=[R.var(0) - R.const(w)])
    rep = find_witness(Ks, inst)
    assert rep.outcome == "Witness"
    assert rep.witness[0] in sols and rep.witness[0] != w
    assert count_witnesses(Ks, inst) == 3


@pytest.mark.parametrize("q", [3, 5, 7, 9])
def test_norm_counts(q):
    Ks = frob(q * q)
    F = Ks.field
    for c in range(1, q) if q != 9 else [x for x in F.elements() if x and F.frobenius(x, 2) == x]:
        inst = norm_instance(Ks, c)
        assert count_witnesses(Ks, inst) == q + 1
        assert sum(1 for _, nx in norm_solutions(F, q) if nx == c) == q + 1


def test_norm_c1_f9():
    Ks = frob(9)
    assert count_witnesses(Ks, norm_instance(Ks, 1)) == 4


def test_norm_hypotheses_certify():
    Ks = frob(9)
    hyp = check_hypotheses(Ks, norm_instance(Ks, 2))
    assert hyp.invariance and hyp.containment and hyp.primality.is_prime
    assert "J is the unit ideal: V(J) is empty" in hyp.notes


def test_norm_rejections():
    Ks = frob(9)
    with pytest.raises(CoefficientsNotConstant):
        norm_instance(Ks, 0)
    with pytest.raises(CoefficientsNotConstant):
        norm_instance(Ks, Ks.field.gen)
    with pytest.raises(WrongGroupOrder):
        norm_instance(frob(64, 3), 1)


def test_norm_over_gaussian_rationals():
    K = CycloField(4)
    Ks = GTransformalField.cyclotomic(K, cyclic_group(2), [1, 3])
    inst = norm_instance(Ks, K.from_rational(-1))
    assert inst.I.gens[0] == inst.I.ring.parse("x[1][1]*x[2][1] + 1")
    hyp = check_hypotheses(Ks, inst)
    assert hyp.invariance and hyp.containment
    with pytest.raises(InfiniteCarrier):
        find_witness(Ks, inst)


def test_forced_point():
    Ks = frob(9)
    F = Ks.field
    u = F.add(F.gen, 1)
    R = Ks.ring(1)
    I = Ideal(R, [R.var(0) - R.const(u), R.var(1) - R.const(Ks.sigma(1, u))])
    inst = AxiomInstance(1, I, I + [R.one()])
    rep = find_witness(Ks, inst)
    assert rep.outcome == "Witness" and rep.witness == [u]
    assert rep.count == u + 1


def test_f4_diagonal_exhausted():
    Ks = frob(4)
    F = Ks.field
    U = univariate_ring(F)
    x = U.var(0)
    inst = diagonal_instance(Ks, [x ** 5 + x ** 2 + U.one()], n=1)
    rep = find_witness(Ks, inst)
    assert rep.outcome == "Exhausted"
    assert rep.count == rep.total == F.order ** inst.n
    assert check_hypotheses(Ks, inst).certifiable


def test_diagonal_shapes():
    Ks = frob(9)
    F = Ks.field
    U = univariate_ring(F)
    x = U.var(0)
    inst = diagonal_instance(Ks, [x * x - U.const(2)], n=1)
    R = inst.I.ring
    assert set(inst.I.gens) == {R.var(0) ** 2 - R.const(2), R.var(1) - R.var(0)}
    # e = 1 leaves the ideal alone
    K1 = GTransformalField.frobenius(F, cyclic_group(1), [0])
    inst1 = diagonal_instance(K1, [x * x - U.const(2)], n=1)
    assert inst1.I.gens == (inst1.I.ring.var(0) ** 2 - inst1.I.ring.const(2),)
    # e = 3
    K3 = frob(27, 3)
    U3 = univariate_ring(K3.field)
    inst3 = diagonal_instance(K3, [U3.var(0) ** 2 - U3.const(2)], n=1)
    assert len(inst3.I.gens) == 3
    assert check_hypotheses(K3, inst3).invariance


def test_diagonal_rejects_nonconstant():
    Ks = frob(9)
    U = univariate_ring(Ks.field)
    with pytest.raises(CoefficientsNotConstant):
        diagonal_instance(Ks, [U.var(0) - U.const(Ks.field.gen)], n=1)


def test_diagonal_always_invariant():
    rng = random.Random(0)
    for q, e in [(4, 2), (8, 3), (16, 4), (27, 3), (25, 2)]:
        Ks = frob(q, e)
        C = Ks.constants
        U = PolyRing(Ks.field, 1, 2)
        for _ in range(3):
            f = U.from_terms(((rng.randrange(3), rng.randrange(3)),
                              C(rng.randrange(C.field.order))) for _ in range(3))
            if f.is_zero():
                continue
            inst = diagonal_instance(Ks, [f], n=2)
            assert check_hypotheses(Ks, inst).invariance


def test_hypothesis_failures():
    Ks = frob(9)
    R = Ks.ring(1)
    I = Ideal(R, [R.var(0)])
    hyp = check_hypotheses(Ks, AxiomInstance(1, I, I + [R.one()]))
    assert hyp.failed() == ["invariance"]
    I = Ideal(R, [R.var(0) * R.var(1) - R.const(2)])
    hyp = check_hypotheses(Ks, AxiomInstance(1, I, I))
    assert hyp.failed() == ["containment"]
    rep = find_witness(Ks, AxiomInstance(1, I, I))
    assert rep.outcome == "HypothesesFail"
    I2 = Ideal(R, [R.var(0) ** 2, R.var(1) ** 2])
    assert "primality" in check_hypotheses(Ks, AxiomInstance(1, I2, I2 + [R.one()])).failed()


def test_unknown_primality_blocks_certification():
    Ks = frob(9)
    R = Ks.ring(1)
    u, v = R.gens()
    I = Ideal(R, [u * u * v * v - R.one()])
    hyp = check_hypotheses(Ks, AxiomInstance(1, I, I + [R.one()]))
    assert hyp.primality.status == "Unknown" and not hyp.certifiable
    assert any("not certifiable" in note for note in hyp.notes)
    rep = find_witness(Ks, AxiomInstance(1, I, I + [R.one()]), force=True)
    assert rep.forced and rep.outcome == "Witness"
    assert count_witnesses(Ks, AxiomInstance(1, I, I + [R.one()])) == 8


def test_non_invariant_j_noted():
    Ks = frob(9)
    R = Ks.ring(1)
    inst = norm_instance(Ks, 2, J_extra=[R.var(0) - R.one()])
    assert "J is not G-invariant" in check_hypotheses(Ks, inst).notes


def test_layout_mismatch():
    Ks = frob(9)
    R = PolyRing(Ks.field, 3, 1)
    I = Ideal(R, [R.var(0)])
    with pytest.raises(LayoutMismatch):
        check_hypotheses(Ks, AxiomInstance(1, I, I + [R.one()]))


def test_linear_variable_primality():
    F = make_field(3, 2)
    R = PolyRing(F, 2, 1)
    u, v = R.gens()
    assert prime_by_linear_variable(u * v - R.const(2)).is_prime
    assert prime_by_linear_variable(u * v + u).status == "Unknown"
    assert prime_by_linear_variable(u * u * v * v - R.one()).status == "Unknown"


@pytest.mark.parametrize("q,n,c", [(9, 1, 2), (16, 1, 1), (25, 1, 3), (9, 2, 2), (4, 3, 1)])
def test_counts_match_direct_enumeration(q, n, c):
    Ks = frob(q)
    R = Ks.ring(n)
    gens = [R.var(0, j) * R.var(1, j) - R.const(c) for j in range(n - 1)]
    gens.append(R.var(0, n - 1) * R.var(1, n - 1) - R.const(c))
    I = Ideal(R, gens)
    inst = AxiomInstance(n, I, I + [R.var(0, 0) - R.var(1, 0)])
    assert count_witnesses(Ks, inst) == direct_count(Ks, inst)


def test_witness_reverifies_and_is_rank_minimal():
    Ks = frob(25)
    inst = norm_instance(Ks, 3)
    rep = find_witness(Ks, inst)
    assert is_witness(Ks, inst, rep.witness)
    r = rep.witness[0]
    assert not any(is_witness(Ks, inst, [s]) for s in range(r))
    assert rep.count == r + 1


def test_search_deterministic_across_workers_and_seeds():
    Ks = frob(49)
    inst = norm_instance(Ks, 3)
    base = find_witness(Ks, inst).to_json(Ks.field)
    for workers, seed in [(1, 7), (3, None), (4, 11)]:
        rep = find_witness(Ks, inst, seed=seed, workers=workers)
        assert rep.to_json(Ks.field) == base
    assert count_witnesses(Ks, inst, workers=3) == count_witnesses(Ks, inst)


def test_budget_hit():
    Ks = frob(49)
    inst = norm_instance(Ks, 3)
    first = find_witness(Ks, inst).count
    rep = find_witness(Ks, inst, budget=first - 1)
    assert rep.outcome == "BudgetHit" and rep.count == first - 1


def test_probe_examples():
    F2, F64, F4 = make_field(2, 1), make_field(2, 6), make_field(2, 2)
    assert irreducible_over_K_probe(F2, F64, [1, 0, 1, 0, 0, 1]).status == "Violation"
    assert irreducible_over_K_probe(F2, F64, [1, 1]).status == "Pass"
    assert irreducible_over_K_probe(F2, F4, [1, 1, 1]).status == "Pass"


def test_report_json():
    Ks = frob(9)
    rep = find_witness(Ks, norm_instance(Ks, 2))
    js = rep.to_json(Ks.field)
    assert js["outcome"] == "Witness" and js["space"] == 9
    assert js["hypotheses"]["primality"]["status"] == "Prime"
    inst = norm_instance(Ks, 2)
    assert inst.to_json(Ks)["I"] == ["x[1][1]*x[2][1] + 1"]
