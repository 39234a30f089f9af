"""Axiom-instance checking: hypotheses on (I, J), witness search over a finite
carrier, and the instance builders used throughout the experiments.
"""

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from . import upoly
from .errors import (CoefficientsNotConstant, InfiniteCarrier, LayoutMismatch,
                     WrongGroupOrder)
from .ff import ExtField, embed
from .groebner import (Ideal, PrimalityVerdict, contains_properly, dimension_zero,
                       is_g_invariant, is_prime_principal, is_prime_zero_dim, member)
from .poly import MultiPoly, PolyRing, evaluate, sigma_tuple, to_text


@dataclass
class AxiomInstance:
    n: int
    I: Ideal
    J: Ideal
    provenance: str = ""

    def to_json(self, Ks=None):
        out = {"e": self.I.ring.e, "n": self.n,
               "I": [to_text(f) for f in self.I.gens],
               "J": [to_text(f) for f in self.J.gens],
               "order": self.I.ring.order,
               "provenance": self.provenance}
        if Ks is not None:
            out["field"] = Ks.field.descriptor()
        return out


@dataclass
class Hypotheses:
    invariance: bool
    primality: PrimalityVerdict
    containment: bool
    notes: list = field(default_factory=list)

    @property
    def certifiable(self):
        return self.invariance and self.primality.is_prime and self.containment

    def failed(self):
        out = []
        if not self.invariance:
            out.append("invariance")
        if not self.primality.is_prime:
            out.append("primality")
        if not self.containment:
            out.append("containment")
        return out

    def to_json(self):
        return {"invariance": self.invariance, "primality": self.primality.to_json(),
                "containment": self.containment, "notes": list(self.notes)}


@dataclass
class AxiomReport:
    hypotheses: Hypotheses
    outcome: str                    # Witness | Exhausted | BudgetHit | HypothesesFail
    witness: Optional[list] = None  # a in K^n
    count: int = 0
    total: int = 0
    forced: bool = False

    def __post_init__(self):
        if self.outcome == "Witness" and self.witness is None:
            raise ValueError("a Witness outcome needs the witness")

    def to_json(self, F=None):
        out = {"hypotheses": self.hypotheses.to_json(), "outcome": self.outcome,
               "count": self.count, "space": self.total, "forced": self.forced}
        if self.witness is not None:
            out["witness"] = [F.rank(x) for x in self.witness] if F is not None else self.witness
        return out


def _check_layout(Ks, inst):
    ring = inst.I.ring
    if ring.e != Ks.group.order:
        raise LayoutMismatch(f"instance has {ring.e} blocks but |G| = {Ks.group.order}")
    if ring.n != inst.n:
        raise LayoutMismatch(f"instance declares n={inst.n} but ring has n={ring.n}")
    if ring.field != Ks.field:
        raise LayoutMismatch("instance is over a different field")
    ring.check_same(inst.J.ring)


def _coprime_to_monomial(mono_poly, g):
    """gcd(m, g) = 1 for a monomial m: every variable of m is missing from some term of g."""
    (exp,) = mono_poly.terms
    return all(any(t[v] == 0 for t in g.terms) for v, a in enumerate(exp) if a)


def prime_by_linear_variable(f):
    """Prime if f = a*x + b with x not in a, b and gcd(a, b) = 1 (checked when a or b is a monomial)."""
    ring = f.ring
    F = ring.field
    for v in f.variables_used():
        if max(exp[v] for exp in f.terms) != 1:
            continue
        a, b = {}, {}
        for exp, c in f.terms.items():
            if exp[v]:
                a[exp[:v] + (0,) + exp[v + 1:]] = c
            else:
                b[exp] = c
        A, B = MultiPoly(ring, a), MultiPoly(ring, b)
        if B.is_zero():
            if A.is_constant():
                return PrimalityVerdict("Prime", reason="generator is a scaled variable")
            continue
        for m, other in ((A, B), (B, A)):
            if len(m.terms) == 1 and _coprime_to_monomial(m, other):
                return PrimalityVerdict(
                    "Prime", reason=f"generator has degree one in variable {v + 1} "
                    "with coprime coefficients")
    return PrimalityVerdict("Unknown", reason="multivariate factorization unsupported")


def primality(I):
    F = I.ring.field
    if F.is_finite() and dimension_zero(I):
        return is_prime_zero_dim(I)
    if len(I.gens) == 1:
        v = is_prime_principal(I)
        if v.status == "Unknown":
            w = prime_by_linear_variable(I.gens[0])
            if w.status != "Unknown":
                return w
        return v
    if not dimension_zero(I):
        return PrimalityVerdict("Unknown", reason="positive-dimensional ideal")
    return PrimalityVerdict("Unknown", reason="infinite coefficient field")


def check_hypotheses(Ks, inst):
    _check_layout(Ks, inst)
    A = Ks.twisted_action()
    inv = is_g_invariant(inst.I, A)
    prim = primality(inst.I)
    cont = contains_properly(inst.I, inst.J)
    notes = []
    if inst.J.is_unit():
        notes.append("J is the unit ideal: V(J) is empty")
    elif not is_g_invariant(inst.J, A):
        notes.append("J is not G-invariant")
    if prim.status == "Unknown":
        notes.append("primality undecided: instance not certifiable")
    return Hypotheses(inv, prim, cont, notes)


# -- witness search ---------------------------------------------------------------

def _decode(rank, q, n, F):
    """rank -> a in K^n, a_1 most significant."""
    out = [0] * n
    for j in reversed(range(n)):
        rank, r = divmod(rank, q)
        out[j] = r
    return [_element_of_rank(F, r) for r in out]


def _element_of_rank(F, r):
    return r  # ExtField elements are their ranks


def is_witness(Ks, inst, a):
    A = Ks.twisted_action()
    point = sigma_tuple(A, a)
    F = Ks.field
    if any(evaluate(f, point) != F.zero for f in inst.I.gens):
        return False
    return any(evaluate(g, point) != F.zero for g in inst.J.gens)


def _scan(args):
    Ks, inst, lo, hi, stop_at_first = args
    F = Ks.field
    q, n = F.order, inst.n
    found = []
    for r in range(lo, hi):
        a = _decode(r, q, n, F)
        if is_witness(Ks, inst, a):
            found.append(r)
            if stop_at_first:
                break
    return found


def _ranges(lo, hi, workers):
    size = hi - lo
    step = -(-size // workers) if size else 0
    return [(lo + i * step, min(hi, lo + (i + 1) * step)) for i in range(workers)
            if lo + i * step < hi]


def _run(Ks, inst, lo, hi, workers, stop_at_first):
    if workers <= 1 or hi - lo < 2 * workers:
        return _scan((Ks, inst, lo, hi, stop_at_first))
    jobs = [(Ks, inst, a, b, stop_at_first) for a, b in _ranges(lo, hi, workers)]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        parts = list(ex.map(_scan, jobs))
    out = []
    for part in parts:
        out.extend(part)
    return sorted(out)


def find_witness(Ks, inst, budget=None, seed=None, workers=1, force=False, random_probes=64):
    """Rank-ordered search of K^n for a with sigma_tuple(a) in V(I) \\ V(J).

    With a seed, random probes run first; a hit only narrows the exhaustive
    scan, so the reported witness is always the rank-minimal one.
    """
    F = Ks.field
    if not F.is_finite():
        raise InfiniteCarrier("witness search needs a finite carrier")
    hyp = check_hypotheses(Ks, inst)
    total = F.order ** inst.n
    if not hyp.certifiable and not force:
        return AxiomReport(hyp, "HypothesesFail", total=total)
    hi = total if budget is None else min(total, budget)
    if seed is not None and random_probes:
        rng = random.Random(seed)
        for _ in range(random_probes):
            r = rng.randrange(total)
            if r < hi and is_witness(Ks, inst, _decode(r, F.order, inst.n, F)):
                hi = r + 1
                break
    found = _run(Ks, inst, 0, hi, workers, stop_at_first=True)
    if found:
        r = found[0]
        a = _decode(r, F.order, inst.n, F)
        if not is_witness(Ks, inst, a):
            raise AssertionError("reported witness failed to re-verify")
        return AxiomReport(hyp, "Witness", witness=a, count=r + 1, total=total, forced=force)
    if hi < total:
        return AxiomReport(hyp, "BudgetHit", count=hi, total=total, forced=force)
    return AxiomReport(hyp, "Exhausted", count=total, total=total, forced=force)


def count_witnesses(Ks, inst, workers=1):
    """Number of a in K^n with sigma_tuple(a) in V(I) \\ V(J), by full enumeration."""
    F = Ks.field
    if not F.is_finite():
        raise InfiniteCarrier("witness count needs a finite carrier")
    return len(_run(Ks, inst, 0, F.order ** inst.n, workers, stop_at_first=False))


# -- builders ---------------------------------------------------------------------

def _is_constant_coeff(Ks, c):
    return all(Ks.sigma(k, c) == c for k in range(Ks.group.order))


def diagonal_instance(Ks, gens, n=None, order="grevlex", provenance="diagonal"):
    """Diagonal instance from generators over the constants in n variables (ring with e=1)."""
    gens = list(gens)
    if not gens:
        raise ValueError("need at least one generator")
    src = gens[0].ring
    n = src.n if n is None else n
    if src.e != 1 or src.n != n:
        raise LayoutMismatch("diagonal generators must live in one block of n variables")
    for g in gens:
        for c in g.terms.values():
            if not _is_constant_coeff(Ks, c):
                raise CoefficientsNotConstant(f"coefficient {c} is not fixed by every sigma_k")
    e = Ks.group.order
    ring = PolyRing(Ks.field, e, n, order)
    pad = (0,) * ((e - 1) * n)
    out = [MultiPoly(ring, {exp + pad: c for exp, c in g.terms.items()}) for g in gens]
    for i in range(1, e):
        for j in range(n):
            out.append(ring.var(i, j) - ring.var(0, j))
    I = Ideal(ring, out)
    J = I + [ring.one()]
    if not is_g_invariant(I, Ks.twisted_action()):
        raise AssertionError("diagonal ideal is not invariant")
    return AxiomInstance(n, I, J, provenance)


def univariate_ring(F, order="grevlex"):
    return PolyRing(F, 1, 1, order)


def norm_instance(Ks, c, J_extra=None, order="grevlex"):
    """I = (X_{1,1} X_{2,1} - c); J = I + J_extra, or the unit ideal."""
    if Ks.group.order != 2:
        raise WrongGroupOrder(f"norm instance needs |G| = 2, got {Ks.group.order}")
    F = Ks.field
    if c == F.zero or not _is_constant_coeff(Ks, c):
        raise CoefficientsNotConstant("c must be a nonzero constant")
    ring = PolyRing(F, 2, 1, order)
    I = Ideal(ring, [ring.var(0) * ring.var(1) - ring.const(c)])
    J = I + (list(J_extra) if J_extra else [ring.one()])
    return AxiomInstance(1, I, J, "norm")


@dataclass
class ProbeVerdict:
    status: str   # Violation | Pass
    degree: int
    factors: list

    def to_json(self):
        return {"status": self.status, "degree": self.degree, "factors": self.factors}


def irreducible_over_K_probe(C, K, f, seed=0):
    """Violation when f (coefficients in C) stays irreducible of degree > 1 over K."""
    iota = embed(C, K)
    g = [iota(c) for c in f]
    _, facs = upoly.factor(K, g, seed=seed)
    fl = [([K.rank(c) for c in h], m) for h, m in facs]
    deg = len(upoly.trim(K, g)) - 1
    if deg > 1 and len(facs) == 1 and facs[0][1] == 1:
        return ProbeVerdict("Violation", deg, fl)
    return ProbeVerdict("Pass", deg, fl)
